// ifp-lab: command-line front end over the ifplab C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "ifplab/ifplab.h"

#ifndef IFPLAB_DEFAULT_ROSTER
#define IFPLAB_DEFAULT_ROSTER "data/roster.txt"
#endif

namespace {

bool pretty = false;

int print(const std::string& command, int status, char* doc) {
  if (doc) {
    auto j = nlohmann::json::parse(doc);
    std::cout << (pretty ? j.dump(2) : j.dump()) << "\n";
    ifp_string_free(doc);
  }
  if (status == IFP_INVALID_INPUT || status == IFP_INVARIANT_VIOLATION) {
    nlohmann::json err = {{"command", command}, {"error", {{"status", status}, {"message", ifp_last_error()}}}};
    std::cout << (pretty ? err.dump(2) : err.dump()) << "\n";
    std::cerr << "ifp-lab " << command << ": " << ifp_last_error() << "\n";
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite group actions on rational surfaces birational to isolated-fixed-point actions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--pretty", pretty, "indent the JSON output");
  app.set_version_flag("--version", ifp_version());

  std::string spec, surface = "auto", action = "split", roster = IFPLAB_DEFAULT_ROSTER;
  std::size_t cap = 0, coset_cap = 1000000;
  long r = 0, a = 0, p = 0, q = 0;

  auto* check = app.add_subcommand("check", "decide whether the action is birational to an IFP action");
  check->add_option("spec", spec, "group spec, e.g. \"hessian-full\"")->required();
  check->add_option("--cap", cap, "group order cap");

  auto* sigma = app.add_subcommand("sigma", "configuration of pointwise-fixed curves");
  sigma->add_option("spec", spec, "group spec")->required();
  sigma->add_option("--surface", surface, "p2, f0 or auto")->check(CLI::IsMember({"p2", "f0", "auto", "P2", "F0"}));
  sigma->add_option("--cap", cap, "group order cap");

  auto* lef = app.add_subcommand("lefschetz", "check e(S^g) = 2 + Tr2(g) for every nontrivial element");
  lef->add_option("spec", spec, "group spec")->required();
  lef->add_option("--surface", surface, "p2, f0 or auto")->check(CLI::IsMember({"p2", "f0", "auto", "P2", "F0"}));
  lef->add_option("--cap", cap, "group order cap");

  auto* res = app.add_subcommand("resolve", "Hirzebruch-Jung chain and discrepancies of 1/r(1,a)");
  res->add_option("r", r, "order")->required();
  res->add_option("a", a, "weight")->required();

  auto* germ = app.add_subcommand("germ", "blow-up splitting or separation exponent of 1/r(p,q)");
  germ->add_option("r", r, "order")->required();
  germ->add_option("p", p, "first weight")->required();
  germ->add_option("q", q, "second weight")->required();
  germ->add_option("--action", action, "split, separate or normalize")
      ->check(CLI::IsMember({"split", "separate", "normalize"}));

  auto* pi1 = app.add_subcommand("pi1", "coset enumeration of the star-shaped link presentation");
  pi1->add_option("p", p, "p")->required();
  pi1->add_option("q", q, "q")->required();
  pi1->add_option("--cap", coset_cap, "coset cap");

  auto* hes = app.add_subcommand("hessian-model", "canonical class of the contracted 12-point blow-up");

  auto* table = app.add_subcommand("table", "reproduce the verdict roster");
  table->add_option("roster", roster, "roster file of 'spec => verdict' lines");
  table->add_option("--cap", cap, "group order cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : IFP_INVALID_INPUT;
  }

  char* doc = nullptr;
  const char* surf = surface.c_str();
  if (*check) { int st = ifp_check_json(spec.c_str(), cap, &doc); return print("check", st, doc); }
  if (*sigma) { int st = ifp_sigma_json(spec.c_str(), surf, cap, &doc); return print("sigma", st, doc); }
  if (*lef) { int st = ifp_lefschetz_json(spec.c_str(), surf, cap, &doc); return print("lefschetz", st, doc); }
  if (*res) { int st = ifp_resolve_json(r, a, &doc); return print("resolve", st, doc); }
  if (*germ) { int st = ifp_germ_json(r, p, q, action.c_str(), &doc); return print("germ", st, doc); }
  if (*pi1) { int st = ifp_pi1_json(p, q, coset_cap, &doc); return print("pi1", st, doc); }
  if (*hes) { int st = ifp_hessian_model_json(&doc); return print("hessian-model", st, doc); }
  if (*table) {
    int st = ifp_table_json(roster.c_str(), cap, &doc);
    int out = print("table", st, doc);
    if (st == IFP_MISMATCH) std::cerr << "ifp-lab table: roster verdicts differ from expectations (see result.diff)\n";
    return out;
  }
  return IFP_INVALID_INPUT;
}
