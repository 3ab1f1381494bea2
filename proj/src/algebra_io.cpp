#include "rinehart/algebra_io.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include "rinehart/poly_parse.hpp"

namespace rinehart {

using json = nlohmann::ordered_json;

namespace {

std::vector<std::string> sym_names(const LieRinehart& lr) {
  std::vector<std::string> names = lr.vars;
  names.insert(names.end(), lr.basis.begin(), lr.basis.end());
  return names;
}

std::vector<std::string> read_names(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_array())
    throw SpecError(std::string("field '") + field + "': expected an array of names");
  std::vector<std::string> out;
  for (const auto& v : j[field]) {
    if (!v.is_string() || !is_identifier(v.get<std::string>()))
      throw SpecError(std::string("field '") + field + "': names must be identifiers");
    out.push_back(v.get<std::string>());
  }
  return out;
}

Polynomial read_poly(const json& v, const std::vector<std::string>& names,
                     const std::string& where) {
  try {
    if (v.is_number_integer()) return Polynomial::constant(names.size(), Rational(v.get<long>()));
    if (!v.is_string()) throw SpecError(where + ": expected a polynomial string");
    return parse_polynomial(v.get<std::string>(), names);
  } catch (const ParseError& e) {
    throw SpecError(where + ": " + e.what());
  }
}

std::size_t resolve(const std::string& tok, const std::vector<std::string>& basis,
                    const std::string& where) {
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (basis[k] == tok) return k;
  try {
    std::size_t used = 0;
    unsigned long v = std::stoul(tok, &used);
    if (used == tok.size() && v < basis.size()) return v;
  } catch (const std::exception&) {
  }
  throw SpecError(where + ": unknown basis element '" + tok + "'");
}

LElement read_lelement(const json& arr, const LieRinehart& lr, const std::string& where) {
  if (!arr.is_array() || arr.size() != lr.d())
    throw SpecError(where + ": expected " + std::to_string(lr.d()) + " polynomials");
  LElement out = lr.zero();
  for (std::size_t k = 0; k < lr.d(); ++k)
    out[k] = read_poly(arr[k], lr.vars, where + "[" + std::to_string(k) + "]");
  return out;
}

json write_lelement(const LieRinehart& lr, const LElement& X) {
  json a = json::array();
  for (std::size_t k = 0; k < lr.d(); ++k) a.push_back(X[k].to_string(lr.vars));
  return a;
}

}  // namespace

Algebra algebra_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw SpecError("presentation must be a JSON object");
  Algebra a;
  LieRinehart& lr = a.lr;
  lr.name = j.value("name", std::string("custom"));
  lr.vars = read_names(j, "vars");
  lr.basis = read_names(j, "basis");
  {
    std::set<std::string> seen;
    for (const auto& s : sym_names(lr))
      if (!seen.insert(s).second) throw SpecError("duplicate name '" + s + "'");
  }
  if (lr.n() + lr.d() > kMaxVars)
    throw SpecError("too many variables plus basis elements (limit " + std::to_string(kMaxVars) +
                    ")");
  if (j.contains("rank") && (!j["rank"].is_number_unsigned() ||
                             j["rank"].get<std::size_t>() != lr.d()))
    throw SpecError("field 'rank' does not match the number of basis names");
  const std::size_t n = lr.n(), d = lr.d();

  if (!j.contains("anchor") || !j["anchor"].is_array() || j["anchor"].size() != d)
    throw SpecError("field 'anchor': expected one array per basis element");
  for (std::size_t k = 0; k < d; ++k) {
    const json& row = j["anchor"][k];
    std::string where = "anchor[" + std::to_string(k) + "]";
    if (!row.is_array() || row.size() != n)
      throw SpecError(where + ": expected " + std::to_string(n) + " polynomials");
    std::vector<Polynomial> img;
    for (std::size_t i = 0; i < n; ++i)
      img.push_back(read_poly(row[i], lr.vars, where + "[" + std::to_string(i) + "]"));
    lr.anchor.push_back(n == 0 ? PolyDerivation(0) : PolyDerivation(img));
  }

  lr.structure.assign(d, std::vector<LElement>(d, lr.zero()));
  std::vector<std::vector<bool>> given(d, std::vector<bool>(d, false));
  if (j.contains("bracket")) {
    if (!j["bracket"].is_object()) throw SpecError("field 'bracket': expected an object");
    for (const auto& [key, val] : j["bracket"].items()) {
      std::string where = "bracket[\"" + key + "\"]";
      auto comma = key.find(',');
      if (comma == std::string::npos) throw SpecError(where + ": key must be \"i,j\"");
      auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(' '));
        s.erase(s.find_last_not_of(' ') + 1);
        return s;
      };
      std::size_t i = resolve(trim(key.substr(0, comma)), lr.basis, where);
      std::size_t k = resolve(trim(key.substr(comma + 1)), lr.basis, where);
      LElement c = read_lelement(val, lr, where);
      if (i == k) {
        if (!c.is_zero())
          throw SpecError(where + ": antisymmetry violated, [" + lr.basis[i] + "," + lr.basis[i] +
                          "] must be zero");
        continue;
      }
      if (given[k][i] && lr.structure[k][i] != -c)
        throw SpecError(where + ": antisymmetry violated against the transposed entry");
      if (given[i][k] && lr.structure[i][k] != c)
        throw SpecError(where + ": duplicate entry");
      lr.structure[i][k] = c;
      lr.structure[k][i] = -c;
      given[i][k] = given[k][i] = true;
    }
  }

  if (j.contains("weights")) {
    if (!j["weights"].is_object()) throw SpecError("field 'weights': expected an object");
    WeightVector w;
    for (const auto& name : sym_names(lr)) {
      if (!j["weights"].contains(name) || !j["weights"][name].is_number_integer())
        throw SpecError("field 'weights': missing integer weight for '" + name + "'");
      w.push_back(j["weights"][name].get<int>());
    }
    if (j["weights"].size() != w.size())
      throw SpecError("field 'weights': unknown names present");
    lr.weights = w;
  }

  a.connection = Connection::trivial(lr);
  if (j.contains("connection") && !j["connection"].is_null()) {
    const json& c = j["connection"];
    if (!c.is_array() || c.size() != n)
      throw SpecError("field 'connection': expected one entry per variable");
    for (std::size_t i = 0; i < n; ++i) {
      if (!c[i].is_array() || c[i].size() != d)
        throw SpecError("field 'connection': expected one entry per basis element");
      for (std::size_t k = 0; k < d; ++k)
        a.connection.gamma[i][k] = read_lelement(
            c[i][k], lr, "connection[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  if (j.contains("euler") && !j["euler"].is_null())
    a.euler = read_poly(j["euler"], sym_names(lr), "euler");

  try {
    lr.validate_structure();
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
  return a;
}

Algebra algebra_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return algebra_from_json(ss.str());
}

std::string algebra_to_json(const Algebra& a) {
  const LieRinehart& lr = a.lr;
  json j;
  j["name"] = lr.name;
  j["vars"] = lr.vars;
  j["rank"] = lr.d();
  j["basis"] = lr.basis;
  json anchor = json::array();
  for (const auto& D : lr.anchor) {
    json row = json::array();
    for (std::size_t i = 0; i < lr.n(); ++i) row.push_back(D.image(i).to_string(lr.vars));
    anchor.push_back(row);
  }
  j["anchor"] = anchor;
  json br = json::object();
  for (std::size_t i = 0; i < lr.d(); ++i)
    for (std::size_t k = i + 1; k < lr.d(); ++k)
      if (!lr.structure[i][k].is_zero())
        br[lr.basis[i] + "," + lr.basis[k]] = write_lelement(lr, lr.structure[i][k]);
  j["bracket"] = br;
  if (lr.weights) {
    json w = json::object();
    auto names = sym_names(lr);
    for (std::size_t k = 0; k < names.size(); ++k) w[names[k]] = (*lr.weights)[k];
    j["weights"] = w;
  }
  if (!a.connection.is_trivial()) {
    json c = json::array();
    for (const auto& row : a.connection.gamma) {
      json r = json::array();
      for (const auto& g : row) r.push_back(write_lelement(lr, g));
      c.push_back(r);
    }
    j["connection"] = c;
  }
  if (a.euler) j["euler"] = a.euler->to_string(sym_names(lr));
  return j.dump(2);
}

Algebra weyl(std::size_t n) {
  if (n == 0 || 2 * n > kMaxVars) throw std::invalid_argument("weyl: need 1 <= n <= 8");
  std::vector<std::string> vars, basis;
  for (std::size_t i = 0; i < n; ++i) {
    vars.push_back(n == 1 ? "x" : "x" + std::to_string(i + 1));
    basis.push_back(n == 1 ? "e" : "e" + std::to_string(i + 1));
  }
  std::vector<PolyDerivation> fields;
  for (std::size_t i = 0; i < n; ++i) fields.push_back(PolyDerivation::partial(n, i));
  Algebra a;
  a.lr = from_vector_fields(vars, basis, fields);
  a.lr.name = "weyl:" + std::to_string(n);
  a.lr.weights = WeightVector(2 * n, 1);
  a.connection = Connection::trivial(a.lr);
  Polynomial eu(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    eu += Polynomial::variable(2 * n, i) * Polynomial::variable(2 * n, n + i);
  a.euler = eu;
  return a;
}

Algebra lie_sl2() {
  // basis e, f, h with [e,f] = h, [h,e] = 2e, [h,f] = -2f
  std::vector<std::vector<std::vector<Rational>>> c(
      3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3)));
  auto set = [&](int i, int j, int k, int v) {
    c[i][j][k] = v;
    c[j][i][k] = -v;
  };
  set(0, 1, 2, 1);
  set(2, 0, 0, 2);
  set(2, 1, 1, -2);
  Algebra a;
  a.lr = from_action({}, {"e", "f", "h"}, c, std::vector<std::vector<std::vector<Rational>>>(3));
  a.lr.name = "lie:sl2";
  a.lr.weights = WeightVector(3, 1);
  a.connection = Connection::trivial(a.lr);
  return a;
}

Algebra lie_abelian(std::size_t n) {
  if (n == 0 || n > kMaxVars) throw std::invalid_argument("lie:abelian: need 1 <= n <= 16");
  std::vector<std::string> basis;
  for (std::size_t i = 0; i < n; ++i) basis.push_back("a" + std::to_string(i + 1));
  std::vector<std::vector<std::vector<Rational>>> c(
      n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
  Algebra a;
  a.lr = from_action({}, basis, c, std::vector<std::vector<std::vector<Rational>>>(n));
  a.lr.name = "lie:abelian:" + std::to_string(n);
  a.lr.weights = WeightVector(n, 1);
  a.connection = Connection::trivial(a.lr);
  return a;
}

Algebra semidirect_sl2() {
  Algebra base = lie_sl2();
  std::vector<std::vector<std::vector<Rational>>> c(
      3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3)));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        c[i][j][k] = base.lr.structure[i][j][k].constant_term();
  // rows: image of x, image of y, as coefficients of (x, y)
  std::vector<std::vector<std::vector<Rational>>> act = {
      {{0, 0}, {1, 0}},   // e = x d/dy
      {{0, 1}, {0, 0}},   // f = y d/dx
      {{1, 0}, {0, -1}},  // h = x d/dx - y d/dy
  };
  Algebra a;
  a.lr = from_action({"x", "y"}, {"e", "f", "h"}, c, act);
  a.lr.name = "semidirect:sl2";
  a.lr.weights = WeightVector(5, 1);
  a.connection = Connection::trivial(a.lr);
  return a;
}

Algebra arrangement(const std::vector<std::string>& forms) {
  const std::vector<std::string> vars{"x", "y"};
  std::vector<Polynomial> ls;
  bool has_x = false;
  Polynomial x = Polynomial::variable(2, 0);
  for (const auto& f : forms) {
    Polynomial p = parse_polynomial(f, vars);
    int w = 0;
    if (p.degree() != 1 || !p.is_homogeneous(std::vector<int>{1, 1}, &w))
      throw std::invalid_argument("arrangement: '" + f + "' is not a linear form");
    ls.push_back(p);
  }
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t k = i + 1; k < ls.size(); ++k) {
      // proportional iff the 2x2 determinant vanishes
      Rational det = ls[i].coefficient(Monomial::unit(0)) * ls[k].coefficient(Monomial::unit(1)) -
                     ls[i].coefficient(Monomial::unit(1)) * ls[k].coefficient(Monomial::unit(0));
      if (det == 0) throw std::invalid_argument("arrangement: proportional forms");
    }
  Polynomial F = Polynomial::constant(2, 1);
  for (const auto& p : ls) {
    Polynomial q;
    if (!has_x && p.divide_exact(x, &q) && q.is_constant()) {
      has_x = true;
      continue;
    }
    F = F * p;
  }
  if (!has_x) throw std::invalid_argument("arrangement: the form x must be among the lines");
  if (ls.size() < 2) throw std::invalid_argument("arrangement: need at least two lines");
  PolyDerivation E({x, Polynomial::variable(2, 1)});
  PolyDerivation D({Polynomial(2), F});
  Algebra a;
  a.lr = from_vector_fields(vars, {"E", "D"}, {E, D});
  // [E, D] = r D with r read off the solved structure function
  Rational r = a.lr.structure[0][1][1].constant_term();
  std::string nm = "arrangement:";
  for (std::size_t i = 0; i < forms.size(); ++i) nm += (i ? ";" : "") + forms[i];
  a.lr.name = nm;
  a.lr.weights = WeightVector{1, 1, 0, static_cast<int>(r.get_num().get_si())};
  a.connection = Connection::trivial(a.lr);
  a.euler = Polynomial::variable(4, 2);
  return a;
}

Algebra builtin(const std::string& name) {
  auto pos = name.find(':');
  std::string head = name.substr(0, pos);
  std::string rest = pos == std::string::npos ? "" : name.substr(pos + 1);
  auto number = [&](const std::string& s) -> std::size_t {
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("builtin '" + name + "': expected a number");
  };
  if (head == "weyl") return weyl(rest.empty() ? 1 : number(rest));
  if (head == "lie" && rest == "sl2") return lie_sl2();
  if (head == "lie" && rest.rfind("abelian", 0) == 0)
    return lie_abelian(rest.size() > 8 ? number(rest.substr(8)) : 2);
  if (head == "semidirect" && (rest == "sl2" || rest == "sl2,std")) return semidirect_sl2();
  if (head == "arrangement") {
    if (rest == "3") return arrangement({"x", "y", "y-x"});
    if (rest == "4") return arrangement({"x", "y", "y-x", "y+x"});
    std::vector<std::string> forms;
    std::stringstream ss(rest);
    std::string f;
    while (std::getline(ss, f, ';'))
      if (!f.empty()) forms.push_back(f);
    return arrangement(forms);
  }
  throw std::invalid_argument("unknown builtin '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"weyl:1", "weyl:2", "lie:sl2", "lie:abelian:2", "semidirect:sl2", "arrangement:3",
          "arrangement:4"};
}

}  // namespace rinehart
