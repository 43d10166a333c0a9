#include "ifplab/ifplab.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <new>
#include <string>

#include "classify.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "groups.hpp"
#include "report.hpp"

struct ifp_group {
  ifp::spec::GroupSpec spec;
  ifp::groups::FiniteGroup group;
};

namespace {

thread_local std::string last_error;

int fail(int code, const std::string& msg) {
  last_error = msg;
  return code;
}

template <class F>
int guarded(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const ifp::InvalidInput& e) {
    return fail(IFP_INVALID_INPUT, e.what());
  } catch (const ifp::InvariantViolation& e) {
    return fail(IFP_INVARIANT_VIOLATION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(IFP_INVARIANT_VIOLATION, "out of memory");
  } catch (const std::exception& e) {
    return fail(IFP_INVARIANT_VIOLATION, std::string("internal error: ") + e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::size_t cap_or_default(std::size_t cap) { return cap ? cap : ifp::groups::kDefaultOrderCap; }

int emit(const char* command, char** out, const std::function<ifp::report::Document()>& run, int ok_code = IFP_OK) {
  if (!out) return fail(IFP_INVALID_INPUT, "output pointer is null");
  *out = nullptr;
  auto t0 = std::chrono::steady_clock::now();
  auto doc = run();
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  *out = dup(ifp::report::envelope(command, doc, ms).dump());
  return ok_code;
}

const char* need(const char* s, const char* what) {
  if (!s) throw ifp::InvalidInput(std::string(what) + " is null");
  return s;
}

std::string surface_arg(const char* s) { return s ? s : ""; }

}  // namespace

extern "C" {

const char* ifp_version(void) { return "1.0.0"; }

const char* ifp_last_error(void) { return last_error.c_str(); }

int ifp_group_build(const char* spec, size_t cap, ifp_group** out) {
  return guarded([&] {
    if (!out) return fail(IFP_INVALID_INPUT, "output pointer is null");
    *out = nullptr;
    auto s = ifp::spec::parse(need(spec, "spec"));
    auto g = ifp::groups::build(s, cap_or_default(cap));
    *out = new ifp_group{std::move(s), std::move(g)};
    return static_cast<int>(IFP_OK);
  });
}

void ifp_group_free(ifp_group* g) { delete g; }

int ifp_group_order(const ifp_group* g, size_t* out) {
  if (!g || !out) return fail(IFP_INVALID_INPUT, "null argument");
  *out = g->group.order();
  return IFP_OK;
}

int ifp_group_conductor(const ifp_group* g, unsigned* out) {
  if (!g || !out) return fail(IFP_INVALID_INPUT, "null argument");
  *out = g->group.conductor();
  return IFP_OK;
}

int ifp_group_kind(const ifp_group* g, const char** out) {
  if (!g || !out) return fail(IFP_INVALID_INPUT, "null argument");
  *out = ifp::groups::kind_name(g->group.kind());
  return IFP_OK;
}

int ifp_group_verdict(const ifp_group* g, int* out) {
  return guarded([&] {
    if (!g || !out) return fail(IFP_INVALID_INPUT, "null argument");
    auto v = ifp::geometry::decide_ifp_birational(g->group);
    switch (v.kind) {
      case ifp::geometry::VerdictKind::IFPBirational:
        *out = IFP_VERDICT_YES;
        break;
      case ifp::geometry::VerdictKind::NotIFPBirational:
        *out = IFP_VERDICT_NOT;
        break;
      default:
        *out = IFP_VERDICT_UNKNOWN;
    }
    return static_cast<int>(IFP_OK);
  });
}

int ifp_group_abelian_subgroups_cyclic(const ifp_group* g, int* out) {
  return guarded([&] {
    if (!g || !out) return fail(IFP_INVALID_INPUT, "null argument");
    *out = ifp::classify::abelian_subgroups_cyclic(g->group) ? 1 : 0;
    return static_cast<int>(IFP_OK);
  });
}

int ifp_check_json(const char* spec, size_t cap, char** out) {
  return guarded([&] { return emit("check", out, [&] { return ifp::report::check(need(spec, "spec"), cap_or_default(cap)); }); });
}

int ifp_sigma_json(const char* spec, const char* surface, size_t cap, char** out) {
  return guarded([&] {
    return emit("sigma", out, [&] {
      return ifp::report::sigma(need(spec, "spec"), ifp::report::parse_surface(surface_arg(surface)), cap_or_default(cap));
    });
  });
}

int ifp_lefschetz_json(const char* spec, const char* surface, size_t cap, char** out) {
  return guarded([&] {
    return emit("lefschetz", out, [&] {
      return ifp::report::lefschetz(need(spec, "spec"), ifp::report::parse_surface(surface_arg(surface)),
                                    cap_or_default(cap));
    });
  });
}

int ifp_resolve_json(long r, long a, char** out) {
  return guarded([&] { return emit("resolve", out, [&] { return ifp::report::resolve(r, a); }); });
}

int ifp_germ_json(long r, long p, long q, const char* action, char** out) {
  return guarded([&] {
    return emit("germ", out, [&] { return ifp::report::germ(r, p, q, action ? action : "split"); });
  });
}

int ifp_pi1_json(long p, long q, size_t coset_cap, char** out) {
  return guarded([&] {
    return emit("pi1", out, [&] { return ifp::report::pi1(p, q, coset_cap ? coset_cap : 1000000); });
  });
}

int ifp_hessian_model_json(char** out) {
  return guarded([&] { return emit("hessian-model", out, [] { return ifp::report::hessian_model(); }); });
}

int ifp_table_json(const char* roster_path, size_t cap, char** out) {
  return guarded([&] {
    bool ok = true;
    int code = emit("table", out, [&] {
      auto t = ifp::report::table(need(roster_path, "roster path"), cap_or_default(cap));
      ok = t.all_match;
      return t.doc;
    });
    return ok ? code : static_cast<int>(IFP_MISMATCH);
  });
}

void ifp_string_free(char* s) { std::free(s); }

}  // extern "C"
