#include "gradering/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "gradering/corpus.hpp"
#include "gradering/errors.hpp"
#include "gradering/lab.hpp"
#include "gradering/report.hpp"

namespace gradering {
namespace {

struct Loaded {
  std::string name; // as typed on the command line
  RealizedInstance inst;
  Expectations expectations;
};

Loaded load(const std::string& target) {
  RingDocument doc;
  if (std::filesystem::exists(target)) {
    std::ifstream in(target, std::ios::binary);
    if (!in)
      throw SpecError("input", "cannot read '" + target + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    doc = parse_spec(buf.str());
  } else if (catalog_has(target)) {
    doc = build_catalog_example(target);
  } else {
    throw SpecError("input", "no such file or catalog id: '" + target + "'");
  }
  Expectations expect = doc.expectations;
  return {target, realize(doc, target), std::move(expect)};
}

const Grading& need_grading(const RealizedInstance& inst) {
  if (!inst.ring_validation.pass)
    throw PreconditionError("ring invalid: " + inst.ring_validation.detail);
  if (!inst.grading)
    throw PreconditionError("grading invalid: " +
                            inst.grading_validation.detail +
                            " (run validate for the witness)");
  return *inst.grading;
}

const AdditiveMap& need_map(const RealizedInstance& inst,
                            const std::string& name) {
  auto it = inst.maps.find(name);
  if (it == inst.maps.end()) {
    std::string known;
    for (const auto& [n, m] : inst.maps) {
      (void)m;
      if (!known.empty())
        known += ", ";
      known += n;
    }
    throw SpecError("--map", "unknown map '" + name + "'" +
                                 (known.empty() ? "; the document declares none"
                                                : "; declared: " + known));
  }
  return it->second;
}

/// Named ideal when asked, the document's "I" when present, else the whole
/// ring.
std::pair<std::string, IdealHandle>
pick_ideal(const RealizedInstance& inst,
           const std::optional<std::string>& name) {
  if (name) {
    auto it = inst.ideals.find(*name);
    if (it == inst.ideals.end())
      throw SpecError("--ideal", "unknown ideal '" + *name + "'");
    return {*name, it->second};
  }
  auto it = inst.ideals.find("I");
  if (it != inst.ideals.end())
    return {"I", it->second};
  return {"R", full_ring_ideal(inst.ring)};
}

std::vector<AdditiveMap>
resolve_maps(const RealizedInstance& inst, const std::vector<std::string>& given,
             const std::vector<std::string>& defaults) {
  std::vector<std::string> names = given.empty() ? defaults : given;
  if (names.size() != defaults.size())
    throw SpecError("--map", "expected " + std::to_string(defaults.size()) +
                                 " map name(s), got " +
                                 std::to_string(names.size()));
  std::vector<AdditiveMap> out;
  out.reserve(names.size());
  for (const auto& n : names)
    out.push_back(need_map(inst, n));
  return out;
}

// --- text rendering ---------------------------------------------------------

std::string fmt_witness(const std::vector<i64>& w) {
  if (w.empty())
    return "";
  std::string out = " [witness";
  for (i64 x : w)
    out += " " + std::to_string(x);
  return out + "]";
}

std::string fmt_verdict(const Verdict& v) {
  std::string out = v.pass ? "ok" : "FAIL";
  if (!v.detail.empty())
    out += " - " + v.detail;
  return out + fmt_witness(v.witness);
}

std::string fmt_element(const Ring& r, const std::vector<u64>& coords) {
  return r.element_u(coords).str();
}

std::string theorem_text(const Loaded& L, const std::string& theorem,
                         std::optional<Sign> sign, const std::string& ideal,
                         const TheoremVerdict& v) {
  std::string out = "instance: " + L.name + "\n";
  out += "theorem: " + theorem;
  if (sign)
    out += " (sign " + sign_token(*sign) + ")";
  out += "\nideal: " + ideal + "\n";
  for (const HypothesisCheck& h : v.hypotheses)
    out += std::string(h.holds ? "  holds  " : "  fails  ") + h.name +
           (h.detail.empty() ? "" : " - " + h.detail) + "\n";
  out += std::string("conclusion: ring is ") +
         (v.conclusion_commutative ? "commutative" : "not commutative") + "\n";
  out += "verdict: " + v.summary() + "\n";
  return out;
}

std::string family_text(const FamilyOptions& o) {
  std::string fams, mods;
  for (const auto& f : (o.families.empty() ? known_families() : o.families)) {
    if (!fams.empty())
      fams += ", ";
    fams += f;
  }
  for (u64 m : (o.moduli.empty() ? std::vector<u64>{2, 3, 5} : o.moduli)) {
    if (!mods.empty())
      mods += ", ";
    mods += std::to_string(m);
  }
  return "families: " + fams + "; moduli: " + mods +
         "; max n: " + std::to_string(o.max_n) +
         "; max group order: " + std::to_string(o.max_group_order);
}

// --- subcommand runners -----------------------------------------------------

CommandOutcome run_validate(const std::string& target, bool json_out) {
  Loaded L = load(target);
  CommandOutcome out;
  out.exit_code =
      (L.inst.ring_validation.pass && L.inst.grading_validation.pass) ? 0 : 1;
  if (json_out) {
    out.out = report_validation(L.name, L.inst.ring, L.inst.ring_validation,
                                L.inst.grading_validation);
  } else {
    out.out = "instance: " + L.name + "\n";
    out.out += "ring: " + fmt_verdict(L.inst.ring_validation) + "\n";
    out.out += "grading: " + fmt_verdict(L.inst.grading_validation) + "\n";
  }
  return out;
}

CommandOutcome run_classify(const std::string& target,
                            const std::string& map_name, bool json_out) {
  Loaded L = load(target);
  const Grading& g = need_grading(L.inst);
  const AdditiveMap& F = need_map(L.inst, map_name);
  Classification c = classify_map(F, g);
  CommandOutcome out;
  out.exit_code = c.generalized_homogeneous == Tri::undecided ? 3 : 0;
  if (json_out) {
    out.out = report_classification(L.name, map_name, c);
  } else {
    out.out = "instance: " + L.name + "\nmap: " + map_name + "\n" + c.summary();
  }
  return out;
}

CommandOutcome run_primeness(const std::string& target, bool graded_kind,
                             bool json_out) {
  Loaded L = load(target);
  const Ring& r = L.inst.ring;
  PrimenessVerdict v;
  if (graded_kind) {
    // Only the graded check: the full-enumeration cross-check can exceed any
    // sane budget on rings whose homogeneous part is still tiny.
    const Grading& g = need_grading(L.inst);
    v = is_gr_prime(r, g);
  } else {
    if (!L.inst.ring_validation.pass)
      throw PreconditionError("ring invalid: " + L.inst.ring_validation.detail);
    v = is_prime(r);
  }
  const char* kind = graded_kind ? "gr-primeness" : "primeness";
  const char* label = graded_kind ? "gr-prime" : "prime";
  CommandOutcome out;
  out.exit_code = v.prime ? 0 : 1;
  if (json_out) {
    out.out = report_primeness(L.name, kind, v);
  } else {
    out.out = "instance: " + L.name + "\n";
    out.out += std::string(label) + ": " + (v.prime ? "yes" : "no") + " - " +
               v.detail + "\n";
    if (v.witness) {
      out.out += "witness a = " + fmt_element(r, v.witness->a) + "\n";
      out.out += "witness b = " + fmt_element(r, v.witness->b) + "\n";
    }
  }
  return out;
}

CommandOutcome run_center(const std::string& target, bool json_out) {
  Loaded L = load(target);
  if (!L.inst.ring_validation.pass)
    throw PreconditionError("ring invalid: " + L.inst.ring_validation.detail);
  std::vector<Element> basis = center(L.inst.ring);
  CommandOutcome out;
  if (json_out) {
    out.out = report_center(L.name, basis);
  } else {
    out.out = "instance: " + L.name + "\n";
    out.out += "center dimension: " + std::to_string(basis.size()) + "\n";
    for (const Element& e : basis)
      out.out += "  " + e.str() + "\n";
  }
  return out;
}

CommandOutcome run_verify(const std::string& target,
                          const std::string& theorem,
                          const std::vector<std::string>& map_names,
                          const std::optional<std::string>& ideal_name,
                          const std::string& sign_str, bool json_out) {
  Loaded L = load(target);
  const Ring& r = L.inst.ring;
  const Grading& g = need_grading(L.inst);
  CommandOutcome out;

  if (theorem == "4.1" || theorem == "4.2") {
    Sign sign = sign_from_token(sign_str, "--sign");
    auto [iname, I] = pick_ideal(L.inst, ideal_name);
    TheoremVerdict v;
    if (theorem == "4.1") {
      auto m = resolve_maps(L.inst, map_names, {"F1", "d1"});
      v = verify_single_map_theorem(r, g, I, m[0], m[1], sign);
    } else {
      auto m = resolve_maps(L.inst, map_names, {"F1", "d1", "F2", "d2"});
      v = verify_two_map_theorem(r, g, I, m[0], m[1], m[2], m[3], sign);
    }
    out.exit_code = v.consistent ? 0 : 1;
    out.out = json_out ? report_theorem(L.name, theorem, sign, iname, v)
                       : theorem_text(L, theorem, sign, iname, v);
    return out;
  }

  Verdict v;
  if (theorem == "prop-F-nonzero") {
    auto m = resolve_maps(L.inst, map_names, {"F1", "d1"});
    v = check_f_forced_nonzero(r, g, m[0], m[1]);
  } else if (theorem == "prop-restriction") {
    auto m = resolve_maps(L.inst, map_names, {"d1"});
    auto [iname, I] = pick_ideal(L.inst, ideal_name);
    (void)iname;
    v = check_ideal_restriction_nonzero(g, I, m[0]);
  } else if (theorem == "lemma-2.1") {
    Verdict one_sided = check_one_sided_annihilator(r, g);
    Verdict centralizer = check_graded_ideal_centralizer(r, g);
    v.pass = one_sided.pass && centralizer.pass;
    v.detail = "(1) one-sided annihilator: " + one_sided.detail +
               "; (2) graded-ideal centralizer: " + centralizer.detail;
    v.witness = one_sided.pass ? centralizer.witness : one_sided.witness;
  } else {
    throw SpecError("--theorem",
                    "unknown theorem id '" + theorem +
                        "'; known: 4.1, 4.2, prop-F-nonzero, "
                        "prop-restriction, lemma-2.1");
  }
  out.exit_code = v.pass ? 0 : 1;
  out.out = json_out
                ? report_check(L.name, theorem, v)
                : "instance: " + L.name + "\n" + theorem + ": " +
                      fmt_verdict(v) + "\n";
  return out;
}

CommandOutcome run_sweep(const SweepOptions& opts, bool json_out) {
  SweepReport rep = sweep_theorem(opts);
  CommandOutcome out;
  out.exit_code = rep.total_inconsistencies == 0 ? 0 : 1;
  if (json_out) {
    out.out = report_sweep(rep);
    return out;
  }
  out.out = "sweep theorem " + theorem_token(rep.theorem) + "\n";
  out.out += family_text(rep.options) + "\n";
  out.out += "instances: " + std::to_string(rep.instances.size()) + "\n";
  out.out += "cases: " + std::to_string(rep.total_cases) + "\n";
  out.out += "inconsistencies: " + std::to_string(rep.total_inconsistencies) +
             "\n";
  for (const SweepAnomaly& a : rep.anomalies)
    out.out += "  ANOMALY " + a.instance + " ideal " + a.ideal + " sign " +
               sign_token(a.sign) + ": " + a.summary + "\n";
  return out;
}

CommandOutcome run_search(const SearchOptions& opts, bool json_out) {
  SearchReport rep = search_problem(opts);
  u64 nontrivial = 0;
  for (const Survivor& s : rep.survivors)
    if (!s.trivial)
      ++nontrivial;
  CommandOutcome out;
  out.exit_code = nontrivial == 0 ? 0 : 1;
  if (json_out) {
    out.out = report_search(rep);
    return out;
  }
  out.out = "search problem " + problem_token(rep.problem) + "\n";
  out.out += family_text(rep.options) + "\n";
  out.out += "instances: " + std::to_string(rep.instances.size()) + "\n";
  out.out += "cases: " + std::to_string(rep.total_cases) +
             ", hypothesis-satisfying: " + std::to_string(rep.total_satisfying) +
             "\n";
  out.out += "survivors: " + std::to_string(rep.total_survivors) + " (" +
             std::to_string(nontrivial) + " nontrivial)\n";
  if (rep.total_survivors > 0)
    out.out += "survivors are candidate counterexamples pending manual "
               "verification, not refutations\n";
  for (const Survivor& s : rep.survivors)
    out.out += std::string("  ") + (s.trivial ? "trivial " : "SURVIVOR ") +
               s.instance + " ideal " + s.ideal +
               (s.sign ? " sign " + sign_token(*s.sign) : std::string()) + "\n";
  return out;
}

CommandOutcome run_demo(const std::string& example, const CatalogParams& params,
                        bool json_out) {
  if (!catalog_has(example)) {
    std::string known;
    for (const auto& id : catalog_ids()) {
      if (!known.empty())
        known += ", ";
      known += id;
    }
    throw SpecError("--example",
                    "unknown example id '" + example + "'; known: " + known);
  }
  RingDocument doc = build_catalog_example(example, params);
  RealizedInstance inst = realize(doc, example);
  auto checks = run_expectations(inst, doc.expectations);
  u64 failed = 0;
  for (const auto& [name, v] : checks) {
    (void)name;
    if (!v.pass)
      ++failed;
  }
  CommandOutcome out;
  out.exit_code = failed == 0 ? 0 : 1;
  if (json_out) {
    out.out = report_expectations(example, checks);
    return out;
  }
  out.out = "example: " + example + "\n";
  for (const auto& [name, v] : checks)
    out.out += (v.pass ? "  ok    " : "  FAIL  ") + name +
               (v.pass ? "" : " - " + v.detail + fmt_witness(v.witness)) + "\n";
  out.out += "passed " + std::to_string(checks.size() - failed) + ", failed " +
             std::to_string(failed) + "\n";
  return out;
}

CommandOutcome dispatch(const std::vector<std::string>& args) {
  CLI::App app{"workbench for finite graded rings presented by structure "
               "constants"};
  app.name("gradering");
  app.require_subcommand(1);

  std::string target, map_name, theorem, sign_str = "minus", problem,
                                                    ideal_str, example;
  std::vector<std::string> map_names;
  bool json_validate = false, json_classify = false, json_grprime = false,
       json_prime = false, json_center = false, json_verify = false,
       json_sweep = false, json_search = false, json_demo = false;

  auto* validate =
      app.add_subcommand("validate", "check ring axioms and grading closure");
  validate->add_option("input", target, "document path or catalog id")
      ->required();
  validate->add_flag("--json", json_validate, "emit the machine document");

  auto* classify =
      app.add_subcommand("classify", "place a declared map in the inclusion "
                                     "diagram of derivation kinds");
  classify->add_option("input", target, "document path or catalog id")
      ->required();
  classify->add_option("--map", map_name, "declared map name")->required();
  classify->add_flag("--json", json_classify, "emit the machine document");

  auto* grprime = app.add_subcommand(
      "grprime", "decide graded primeness (homogeneous annihilating pairs)");
  grprime->add_option("input", target, "document path or catalog id")
      ->required();
  grprime->add_flag("--json", json_grprime, "emit the machine document");

  auto* prime =
      app.add_subcommand("prime", "decide primeness by full enumeration");
  prime->add_option("input", target, "document path or catalog id")
      ->required();
  prime->add_flag("--json", json_prime, "emit the machine document");

  auto* center_cmd =
      app.add_subcommand("center", "compute a basis of the center");
  center_cmd->add_option("input", target, "document path or catalog id")
      ->required();
  center_cmd->add_flag("--json", json_center, "emit the machine document");

  auto* verify = app.add_subcommand(
      "verify", "evaluate a commutativity criterion on one instance");
  verify->add_option("input", target, "document path or catalog id")
      ->required();
  verify
      ->add_option("--theorem", theorem,
                   "4.1, 4.2, prop-F-nonzero, prop-restriction or lemma-2.1")
      ->required();
  verify->add_option("--map", map_names,
                     "map slot names, in order (repeatable)");
  auto* ideal_opt =
      verify->add_option("--ideal", ideal_str, "declared ideal name");
  verify->add_option("--sign", sign_str, "plus or minus (default minus)");
  verify->add_flag("--json", json_verify, "emit the machine document");

  SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand(
      "sweep", "run one criterion over every generated instance");
  std::string sweep_theorem_str = "4.1";
  sweep->add_option("--family", sweep_opts.families.families,
                    "instance family (repeatable; default all)");
  sweep->add_option("--modulus", sweep_opts.families.moduli,
                    "prime modulus (repeatable; default 2 3 5)");
  sweep->add_option("--max-n", sweep_opts.families.max_n,
                    "matrix-pattern size bound (default 2)");
  sweep->add_option("--max-group-order", sweep_opts.families.max_group_order,
                    "group-algebra order bound (default 4)");
  sweep->add_option("--theorem", sweep_theorem_str, "4.1 or 4.2");
  sweep->add_option("--jobs", sweep_opts.jobs, "worker threads (default 1)");
  sweep->add_flag("--json", json_sweep, "emit the machine document");

  SearchOptions search_opts;
  auto* search = app.add_subcommand(
      "search", "hunt for hypothesis-satisfying cases on noncommutative "
                "instances");
  search
      ->add_option("--problem", problem, "pr1.i, pr1.ii, pr1.iii or pr2")
      ->required();
  search->add_option("--family", search_opts.families.families,
                     "instance family (repeatable; default all)");
  search->add_option("--modulus", search_opts.families.moduli,
                     "prime modulus (repeatable; default 2 3 5)");
  search->add_option("--max-n", search_opts.families.max_n,
                     "matrix-pattern size bound (default 2)");
  search->add_option("--max-group-order", search_opts.families.max_group_order,
                     "group-algebra order bound (default 4)");
  search->add_option("--jobs", search_opts.jobs, "worker threads (default 1)");
  search->add_flag("--json", json_search, "emit the machine document");

  auto* demo = app.add_subcommand(
      "demo", "build a catalog example and run its inline expectations");
  demo->add_option("--example", example, "catalog example id")->required();
  u64 demo_modulus = 0, demo_truncation = 0;
  auto* mod_opt =
      demo->add_option("--modulus", demo_modulus, "prime coefficient modulus");
  auto* trunc_opt = demo->add_option("--truncation", demo_truncation,
                                     "polynomial truncation length");
  demo->add_flag("--json", json_demo, "emit the machine document");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(std::move(rev));
  } catch (const CLI::CallForHelp&) {
    return {0, app.help(), ""}; // help() descends into the parsed subcommand
  }

  if (validate->parsed())
    return run_validate(target, json_validate);
  if (classify->parsed())
    return run_classify(target, map_name, json_classify);
  if (grprime->parsed())
    return run_primeness(target, /*graded_kind=*/true, json_grprime);
  if (prime->parsed())
    return run_primeness(target, /*graded_kind=*/false, json_prime);
  if (center_cmd->parsed())
    return run_center(target, json_center);
  if (verify->parsed()) {
    std::optional<std::string> ideal_name;
    if (ideal_opt->count() > 0)
      ideal_name = ideal_str;
    return run_verify(target, theorem, map_names, ideal_name, sign_str,
                      json_verify);
  }
  if (sweep->parsed()) {
    sweep_opts.theorem = theorem_from_token(sweep_theorem_str, "--theorem");
    return run_sweep(sweep_opts, json_sweep);
  }
  if (search->parsed()) {
    search_opts.problem = problem_from_token(problem, "--problem");
    return run_search(search_opts, json_search);
  }
  if (demo->parsed()) {
    CatalogParams params;
    if (mod_opt->count() > 0)
      params.modulus = demo_modulus;
    if (trunc_opt->count() > 0)
      params.truncation = demo_truncation;
    return run_demo(example, params, json_demo);
  }
  throw SpecError("command", "no subcommand given");
}

} // namespace

CommandOutcome cli_run(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const CLI::ParseError& e) {
    return {2, "", std::string(e.what()) + "\n"};
  } catch (const BudgetExceededError& e) {
    return {3, "", std::string("budget exceeded: ") + e.what() + "\n"};
  } catch (const ParseError& e) {
    return {2, "", std::string(e.what()) + "\n"};
  } catch (const SpecError& e) {
    return {2, "", std::string(e.what()) + "\n"};
  } catch (const PreconditionError& e) {
    return {2, "", std::string(e.what()) + "\n"};
  } catch (const UnsupportedModulusError& e) {
    return {2, "", std::string(e.what()) + "\n"};
  } catch (const Error& e) {
    return {2, "", std::string(e.what()) + "\n"};
  } catch (const std::exception& e) {
    return {2, "", std::string("internal error: ") + e.what() + "\n"};
  }
}

} // namespace gradering
