#include "rinehart/rinehart.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "rinehart/driver.hpp"
#include "rinehart/poly_parse.hpp"
#include "rinehart/quasimod.hpp"

struct rh_algebra {
  rinehart::Algebra a;
  std::string name;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

rh_status fail(rh_status code, const std::string& msg) {
  last_error = msg;
  return code;
}

template <class F>
rh_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const rinehart::SpecError& e) {
    return fail(RH_ERR_PARSE, e.what());
  } catch (const rinehart::ParseError& e) {
    return fail(RH_ERR_PARSE, e.what());
  } catch (const rinehart::CapError& e) {
    return fail(RH_ERR_CAP, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(RH_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(RH_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RH_ERR_INTERNAL, "unknown exception");
  }
}

rh_status wrap(rinehart::Algebra a, std::string name, rh_algebra** out) {
  *out = new rh_algebra{std::move(a), std::move(name)};
  return RH_OK;
}

}  // namespace

extern "C" {

rh_status rh_algebra_from_json(const char* text, rh_algebra** out) {
  if (!text || !out) return fail(RH_ERR_ARGUMENT, "null argument");
  return guarded([&] { return wrap(rinehart::algebra_from_json(text), "json", out); });
}

rh_status rh_algebra_from_file(const char* path, rh_algebra** out) {
  if (!path || !out) return fail(RH_ERR_ARGUMENT, "null argument");
  if (!std::ifstream(path)) return fail(RH_ERR_IO, std::string("cannot read '") + path + "'");
  return guarded([&] { return wrap(rinehart::algebra_from_file(path), path, out); });
}

rh_status rh_algebra_builtin(const char* name, rh_algebra** out) {
  if (!name || !out) return fail(RH_ERR_ARGUMENT, "null argument");
  return guarded([&] { return wrap(rinehart::builtin(name), name, out); });
}

rh_status rh_algebra_to_json(const rh_algebra* a, char** out) {
  if (!a || !out) return fail(RH_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(rinehart::algebra_to_json(a->a));
    return *out ? RH_OK : fail(RH_ERR_INTERNAL, "out of memory");
  });
}

void rh_algebra_free(rh_algebra* a) { delete a; }

rh_status rh_run(const rh_algebra* a, const char* command, const char* options_json, char** report,
                 int* verdict) {
  if (!a || !command || !report || !verdict) return fail(RH_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto opt = rinehart::options_from_json(options_json ? options_json : "");
    auto rep = rinehart::run_command(a->a, command, opt);
    rep.algebra = a->name;
    *report = dup(rinehart::render(rep));
    if (!*report) return fail(RH_ERR_INTERNAL, "out of memory");
    *verdict = rep.pass ? RH_PASS : RH_FAIL;
    return RH_OK;
  });
}

void rh_string_free(char* s) { std::free(s); }

const char* rh_last_error(void) { return last_error.c_str(); }

}  // extern "C"
