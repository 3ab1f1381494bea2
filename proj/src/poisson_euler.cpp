#include <map>

#include "rinehart/poisson.hpp"

namespace rinehart {

namespace {

int below(LegSet s, std::size_t u) { return leg_count(s & ((LegSet{1} << u) - 1)); }

template <class LM>
std::string legs_to_string(const LM& w, const std::vector<std::string>& names,
                           const std::string& prefix) {
  if (w.is_zero()) return "0";
  std::string out;
  for (auto it = w.terms().rbegin(); it != w.terms().rend(); ++it) {
    const auto& [s, c] = *it;
    std::string word;
    for (auto u : legs_of(s)) word += (word.empty() ? "" : "^") + prefix + names[u];
    std::string coeff = c.to_string(names), piece;
    if (word.empty()) {
      piece = coeff;
    } else if (coeff == "1") {
      piece = word;
    } else if (coeff == "-1") {
      piece = "-" + word;
    } else if (c.size() == 1) {
      piece = coeff + "*" + word;
    } else {
      piece = "(" + coeff + ")*" + word;
    }
    if (out.empty())
      out = piece;
    else if (piece[0] == '-')
      out += " - " + piece.substr(1);
    else
      out += " + " + piece;
  }
  return out;
}

}  // namespace

std::string to_string(const PoissonAlgebra& pa, const Multivector& D) {
  return legs_to_string(D, pa.coordinate_names(), "d/d");
}

std::string to_string(const PoissonAlgebra& pa, const KahlerForm& w) {
  return legs_to_string(w, pa.coordinate_names(), "d");
}

Multivector euler_contraction(const Multivector& D, const Polynomial& euler) {
  Multivector r(D.nvars(), D.degree() - 1);
  for (const auto& [s, c] : D.terms())
    for (auto u : legs_of(s)) {
      Polynomial du = euler.derivative(u);
      if (du.is_zero()) continue;
      Polynomial t = du * c;
      r.add(s & ~(LegSet{1} << u), (below(s, u) % 2 == 0) ? t : -t);
    }
  return r;
}

EulerReport euler_contraction_check(const PoissonAlgebra& pa, const Polynomial& euler,
                                    int max_weight, int max_degree) {
  std::size_t N = pa.nvars();
  auto names = pa.coordinate_names();
  EulerReport out;
  out.report.checks.push_back("euler-grading");
  for (std::size_t u = 0; u < N; ++u) {
    Polynomial b = pa.bracket(euler, pa.coordinate(u));
    Rational g = b.coefficient(Monomial::unit(u));
    if (b != pa.coordinate(u) * g || g.get_den() != 1) {
      out.report.ok = false;
      out.report.failure = "{euler, " + names[u] + "} is not an integer multiple of " + names[u];
      return out;
    }
    out.grading.push_back(static_cast<int>(g.get_num().get_si()));
  }
  out.report.checks.push_back("euler-anticommutator");
  const auto& w = pa.weights();
  for (LegSet s = 0; s < (LegSet{1} << N); ++s) {
    int legs_w = 0, legs_g = 0;
    for (auto u : legs_of(s)) {
      if (w) legs_w += (*w)[u];
      legs_g += out.grading[u];
    }
    for (const auto& m : monomials_up_to_degree(N, max_degree)) {
      if (w && m.weight(*w) - legs_w > max_weight) continue;
      Multivector D(N, leg_count(s));
      D.add(s, Polynomial::term(N, m, 1));
      Multivector lhs = delta_P(pa, euler_contraction(D, euler));
      Multivector rhs = euler_contraction(delta_P(pa, D), euler);
      Multivector a = lhs + rhs;
      int grade = m.weight(out.grading) - legs_g;
      ++out.checked;
      if (a != D * Rational(-grade)) {
        out.report.ok = false;
        out.report.failure = "anticommutator differs from -grading on " + to_string(pa, D);
        return out;
      }
    }
  }
  return out;
}

std::vector<Polynomial> capped_casimir_search(const PoissonAlgebra& pa, int max_weight,
                                              int max_degree) {
  std::size_t N = pa.nvars();
  const auto& w = pa.weights();
  auto beta = pa.bracket_weight();
  std::map<int, std::vector<Monomial>> groups;
  for (const auto& m : monomials_up_to_degree(N, max_degree)) {
    if (w && m.weight(*w) > max_weight) continue;
    groups[beta ? m.weight(*w) : 0].push_back(m);
  }
  std::vector<Polynomial> out;
  for (const auto& [g, monos] : groups) {
    std::map<std::pair<LegSet, Monomial>, std::size_t> rows;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(monos.size());
    for (std::size_t j = 0; j < monos.size(); ++j) {
      Multivector f(N, 0);
      f.add(0, Polynomial::term(N, monos[j], 1));
      Multivector df = delta_P(pa, f);
      for (const auto& [s, c] : df.terms())
        for (const auto& [m, v] : c.terms())
          cols[j].emplace_back(rows.try_emplace({s, m}, rows.size()).first->second, v);
    }
    SparseMatrixQ M(rows.size(), monos.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [r, v] : cols[j]) M.add(r, j, v);
    for (const auto& v : kernel_and_rank(M).basis) {
      Polynomial p(N);
      for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] != 0) p += Polynomial::term(N, monos[j], v[j]);
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace rinehart
