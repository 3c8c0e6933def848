#include "gradering/report.hpp"

#include <limits>

#include "json_util.hpp"

namespace gradering {
namespace {

using jsonu::as_bool;
using jsonu::as_i64;
using jsonu::as_string;
using jsonu::as_u64;
using jsonu::bad;
using jsonu::check_keys;
using jsonu::idx;
using jsonu::json;
using jsonu::member;
using jsonu::opt_member;
using jsonu::require_array;
using jsonu::require_object;

constexpr u64 kMax = std::numeric_limits<u64>::max();

std::string finish(const json& doc) { return doc.dump(2) + "\n"; }

// --- emit helpers ---------------------------------------------------------

json verdict_json(const Verdict& v) {
  json out;
  out["pass"] = v.pass;
  out["detail"] = v.detail;
  out["witness"] = v.witness;
  return out;
}

json coords_json(const std::vector<u64>& coords) { return json(coords); }

json matrix_json(const std::vector<std::vector<u64>>& rows) {
  json out = json::array();
  for (const auto& row : rows) out.push_back(coords_json(row));
  return out;
}

json pool_json(const PoolStats& p) {
  json out;
  out["restricted"] = p.restricted;
  out["maps_scanned"] = p.maps_scanned;
  out["homogeneous_maps"] = p.homogeneous_maps;
  out["derivations"] = p.derivations;
  return out;
}

json options_json(const FamilyOptions& o) {
  json out;
  out["families"] = o.families;
  out["moduli"] = o.moduli;
  out["max_n"] = o.max_n;
  out["max_group_order"] = o.max_group_order;
  return out;
}

json pairs_json(const std::vector<MapPairData>& pairs) {
  json out = json::array();
  for (const auto& pr : pairs) {
    json e;
    e["f"] = matrix_json(pr.f);
    e["d"] = matrix_json(pr.d);
    out.push_back(std::move(e));
  }
  return out;
}

// --- reparse helpers (each returns the canonical rebuild) ------------------

json check_verdict(const json& v, const std::string& path) {
  require_object(v, path);
  check_keys(v, path, {"pass", "detail", "witness"});
  json out;
  out["pass"] = as_bool(member(v, "pass", path), path + ".pass");
  out["detail"] = as_string(member(v, "detail", path), path + ".detail");
  const json& w = member(v, "witness", path);
  const std::string wp = path + ".witness";
  require_array(w, wp);
  json warr = json::array();
  for (std::size_t i = 0; i < w.size(); ++i)
    warr.push_back(as_i64(w[i], idx(wp, i)));
  out["witness"] = std::move(warr);
  return out;
}

json check_coords(const json& v, const std::string& path) {
  require_array(v, path);
  json out = json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(as_u64(v[i], idx(path, i), 0, kMax));
  return out;
}

json check_matrix(const json& v, const std::string& path) {
  require_array(v, path);
  json out = json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(check_coords(v[i], idx(path, i)));
  return out;
}

json check_pool(const json& v, const std::string& path) {
  require_object(v, path);
  check_keys(v, path,
             {"restricted", "maps_scanned", "homogeneous_maps", "derivations"});
  json out;
  out["restricted"] =
      as_bool(member(v, "restricted", path), path + ".restricted");
  out["maps_scanned"] =
      as_u64(member(v, "maps_scanned", path), path + ".maps_scanned", 0, kMax);
  out["homogeneous_maps"] = as_u64(member(v, "homogeneous_maps", path),
                                   path + ".homogeneous_maps", 0, kMax);
  out["derivations"] =
      as_u64(member(v, "derivations", path), path + ".derivations", 0, kMax);
  return out;
}

json check_options(const json& v, const std::string& path) {
  require_object(v, path);
  check_keys(v, path, {"families", "moduli", "max_n", "max_group_order"});
  json out;
  const json& fams = member(v, "families", path);
  const std::string fp = path + ".families";
  require_array(fams, fp);
  json farr = json::array();
  for (std::size_t i = 0; i < fams.size(); ++i)
    farr.push_back(as_string(fams[i], idx(fp, i)));
  out["families"] = std::move(farr);
  const json& mods = member(v, "moduli", path);
  const std::string mp = path + ".moduli";
  require_array(mods, mp);
  json marr = json::array();
  for (std::size_t i = 0; i < mods.size(); ++i)
    marr.push_back(as_u64(mods[i], idx(mp, i), 2, kMax));
  out["moduli"] = std::move(marr);
  out["max_n"] = as_u64(member(v, "max_n", path), path + ".max_n", 1, 3);
  out["max_group_order"] = as_u64(member(v, "max_group_order", path),
                                  path + ".max_group_order", 1, 4);
  return out;
}

json check_pairs(const json& v, const std::string& path) {
  require_array(v, path);
  json out = json::array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = idx(path, i);
    require_object(v[i], p);
    check_keys(v[i], p, {"f", "d"});
    json e;
    e["f"] = check_matrix(member(v[i], "f", p), p + ".f");
    e["d"] = check_matrix(member(v[i], "d", p), p + ".d");
    out.push_back(std::move(e));
  }
  return out;
}

std::string check_sign(const json& v, const std::string& path) {
  std::string tok = as_string(v, path);
  sign_from_token(tok, path); // validates
  return tok;
}

std::string check_tri(const json& v, const std::string& path) {
  std::string tok = as_string(v, path);
  if (tok != "yes" && tok != "no" && tok != "undecided")
    bad(path, "expected one of yes, no, undecided");
  return tok;
}

// --- per-kind validators ----------------------------------------------------

json check_validation_doc(const json& v) {
  check_keys(v, "report", {"kind", "instance", "modulus", "dim", "ring",
                           "grading"});
  json out;
  out["kind"] = "validation";
  out["instance"] =
      as_string(member(v, "instance", "report"), "report.instance");
  out["modulus"] =
      as_u64(member(v, "modulus", "report"), "report.modulus", 2, kMax);
  out["dim"] = as_u64(member(v, "dim", "report"), "report.dim", 1, kMax);
  out["ring"] = check_verdict(member(v, "ring", "report"), "report.ring");
  out["grading"] =
      check_verdict(member(v, "grading", "report"), "report.grading");
  return out;
}

json check_classification_doc(const json& v) {
  check_keys(v, "report",
             {"kind", "instance", "map", "derivation", "homogeneous_map",
              "homogeneous_derivation", "generalized_derivation",
              "generalized_homogeneous", "assoc_space_dim", "associated",
              "homogeneous_witness", "summary"});
  json out;
  out["kind"] = "classification";
  out["instance"] =
      as_string(member(v, "instance", "report"), "report.instance");
  out["map"] = as_string(member(v, "map", "report"), "report.map");
  out["derivation"] =
      check_verdict(member(v, "derivation", "report"), "report.derivation");
  out["homogeneous_map"] = check_verdict(member(v, "homogeneous_map", "report"),
                                         "report.homogeneous_map");
  out["homogeneous_derivation"] =
      as_bool(member(v, "homogeneous_derivation", "report"),
              "report.homogeneous_derivation");
  out["generalized_derivation"] =
      as_bool(member(v, "generalized_derivation", "report"),
              "report.generalized_derivation");
  out["generalized_homogeneous"] =
      check_tri(member(v, "generalized_homogeneous", "report"),
                "report.generalized_homogeneous");
  out["assoc_space_dim"] = as_u64(member(v, "assoc_space_dim", "report"),
                                  "report.assoc_space_dim", 0, kMax);
  if (const json* a = opt_member(v, "associated"))
    out["associated"] = check_matrix(*a, "report.associated");
  if (const json* w = opt_member(v, "homogeneous_witness"))
    out["homogeneous_witness"] =
        check_matrix(*w, "report.homogeneous_witness");
  out["summary"] = as_string(member(v, "summary", "report"), "report.summary");
  return out;
}

json check_primeness_doc(const json& v, const std::string& kind) {
  check_keys(v, "report",
             {"kind", "instance", "prime", "pairs_checked", "detail",
              "witness"});
  json out;
  out["kind"] = kind;
  out["instance"] =
      as_string(member(v, "instance", "report"), "report.instance");
  out["prime"] = as_bool(member(v, "prime", "report"), "report.prime");
  out["pairs_checked"] = as_u64(member(v, "pairs_checked", "report"),
                                "report.pairs_checked", 0, kMax);
  out["detail"] = as_string(member(v, "detail", "report"), "report.detail");
  if (const json* w = opt_member(v, "witness")) {
    require_object(*w, "report.witness");
    check_keys(*w, "report.witness", {"a", "b"});
    json wit;
    wit["a"] = check_coords(member(*w, "a", "report.witness"),
                            "report.witness.a");
    wit["b"] = check_coords(member(*w, "b", "report.witness"),
                            "report.witness.b");
    out["witness"] = std::move(wit);
  }
  return out;
}

json check_center_doc(const json& v) {
  check_keys(v, "report", {"kind", "instance", "dim", "basis"});
  json out;
  out["kind"] = "center";
  out["instance"] =
      as_string(member(v, "instance", "report"), "report.instance");
  out["dim"] = as_u64(member(v, "dim", "report"), "report.dim", 0, kMax);
  out["basis"] = check_matrix(member(v, "basis", "report"), "report.basis");
  if (out["dim"].get<u64>() != out["basis"].size())
    bad("report.dim", "dim disagrees with the basis length");
  return out;
}

json check_theorem_doc(const json& v) {
  check_keys(v, "report",
             {"kind", "instance", "theorem", "sign", "ideal", "hypotheses",
              "hypotheses_hold", "conclusion_commutative", "consistent",
              "summary"});
  json out;
  out["kind"] = "theorem";
  out["instance"] =
      as_string(member(v, "instance", "report"), "report.instance");
  std::string theorem =
      as_string(member(v, "theorem", "report"), "report.theorem");
  if (theorem != "4.1" && theorem != "4.2")
    bad("report.theorem", "expected one of 4.1, 4.2");
  out["theorem"] = theorem;
  if (const json* s = opt_member(v, "sign"))
    out["sign"] = check_sign(*s, "report.sign");
  out["ideal"] = as_string(member(v, "ideal", "report"), "report.ideal");
  const json& hyps = member(v, "hypotheses", "report");
  const std::string hp = "report.hypotheses";
  require_array(hyps, hp);
  json harr = json::array();
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const std::string p = idx(hp, i);
    require_object(hyps[i], p);
    check_keys(hyps[i], p, {"name", "holds", "detail"});
    json h;
    h["name"] = as_string(member(hyps[i], "name", p), p + ".name");
    h["holds"] = as_bool(member(hyps[i], "holds", p), p + ".holds");
    h["detail"] = as_string(member(hyps[i], "detail", p), p + ".detail");
    harr.push_back(std::move(h));
  }
  out["hypotheses"] = std::move(harr);
  out["hypotheses_hold"] = as_bool(member(v, "hypotheses_hold", "report"),
                                   "report.hypotheses_hold");
  out["conclusion_commutative"] =
      as_bool(member(v, "conclusion_commutative", "report"),
              "report.conclusion_commutative");
  out["consistent"] =
      as_bool(member(v, "consistent", "report"), "report.consistent");
  out["summary"] = as_string(member(v, "summary", "report"), "report.summary");
  return out;
}

json check_check_doc(const json& v) {
  check_keys(v, "report", {"kind", "instance", "check", "verdict"});
  json out;
  out["kind"] = "check";
  out["instance"] =
      as_string(member(v, "instance", "report"), "report.instance");
  out["check"] = as_string(member(v, "check", "report"), "report.check");
  out["verdict"] =
      check_verdict(member(v, "verdict", "report"), "report.verdict");
  return out;
}

json check_expectations_doc(const json& v) {
  check_keys(v, "report", {"kind", "instance", "checks", "passed", "failed"});
  json out;
  out["kind"] = "expectations";
  out["instance"] =
      as_string(member(v, "instance", "report"), "report.instance");
  const json& checks = member(v, "checks", "report");
  const std::string cp = "report.checks";
  require_array(checks, cp);
  json carr = json::array();
  u64 passed = 0, failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string p = idx(cp, i);
    require_object(checks[i], p);
    check_keys(checks[i], p, {"name", "pass", "detail", "witness"});
    json c;
    c["name"] = as_string(member(checks[i], "name", p), p + ".name");
    bool pass = as_bool(member(checks[i], "pass", p), p + ".pass");
    c["pass"] = pass;
    (pass ? passed : failed) += 1;
    c["detail"] = as_string(member(checks[i], "detail", p), p + ".detail");
    const json& w = member(checks[i], "witness", p);
    const std::string wp = p + ".witness";
    require_array(w, wp);
    json warr = json::array();
    for (std::size_t j = 0; j < w.size(); ++j)
      warr.push_back(as_i64(w[j], idx(wp, j)));
    c["witness"] = std::move(warr);
    carr.push_back(std::move(c));
  }
  out["checks"] = std::move(carr);
  if (as_u64(member(v, "passed", "report"), "report.passed", 0, kMax) !=
      passed)
    bad("report.passed", "count disagrees with the checks array");
  if (as_u64(member(v, "failed", "report"), "report.failed", 0, kMax) !=
      failed)
    bad("report.failed", "count disagrees with the checks array");
  out["passed"] = passed;
  out["failed"] = failed;
  return out;
}

json check_sweep_doc(const json& v) {
  check_keys(v, "report", {"kind", "theorem", "options", "budget", "totals",
                           "instances", "anomalies"});
  json out;
  out["kind"] = "sweep";
  std::string theorem =
      as_string(member(v, "theorem", "report"), "report.theorem");
  theorem_from_token(theorem, "report.theorem");
  out["theorem"] = theorem;
  out["options"] =
      check_options(member(v, "options", "report"), "report.options");
  out["budget"] =
      as_u64(member(v, "budget", "report"), "report.budget", 0, kMax);
  const json& totals = member(v, "totals", "report");
  require_object(totals, "report.totals");
  check_keys(totals, "report.totals", {"cases", "inconsistencies"});
  json tot;
  tot["cases"] = as_u64(member(totals, "cases", "report.totals"),
                        "report.totals.cases", 0, kMax);
  tot["inconsistencies"] =
      as_u64(member(totals, "inconsistencies", "report.totals"),
             "report.totals.inconsistencies", 0, kMax);
  out["totals"] = std::move(tot);
  const json& insts = member(v, "instances", "report");
  const std::string ip = "report.instances";
  require_array(insts, ip);
  json iarr = json::array();
  for (std::size_t i = 0; i < insts.size(); ++i) {
    const std::string p = idx(ip, i);
    require_object(insts[i], p);
    check_keys(insts[i], p,
               {"name", "family", "modulus", "dim", "gr_prime", "commutative",
                "checks_skipped", "pool", "qualifying_pairs", "ideals",
                "cases", "inconsistencies"});
    json e;
    e["name"] = as_string(member(insts[i], "name", p), p + ".name");
    e["family"] = as_string(member(insts[i], "family", p), p + ".family");
    e["modulus"] =
        as_u64(member(insts[i], "modulus", p), p + ".modulus", 2, kMax);
    e["dim"] = as_u64(member(insts[i], "dim", p), p + ".dim", 1, kMax);
    e["gr_prime"] =
        as_bool(member(insts[i], "gr_prime", p), p + ".gr_prime");
    e["commutative"] =
        as_bool(member(insts[i], "commutative", p), p + ".commutative");
    e["checks_skipped"] =
        as_bool(member(insts[i], "checks_skipped", p), p + ".checks_skipped");
    e["pool"] = check_pool(member(insts[i], "pool", p), p + ".pool");
    e["qualifying_pairs"] = as_u64(member(insts[i], "qualifying_pairs", p),
                                   p + ".qualifying_pairs", 0, kMax);
    e["ideals"] = as_u64(member(insts[i], "ideals", p), p + ".ideals", 0, kMax);
    e["cases"] = as_u64(member(insts[i], "cases", p), p + ".cases", 0, kMax);
    e["inconsistencies"] = as_u64(member(insts[i], "inconsistencies", p),
                                  p + ".inconsistencies", 0, kMax);
    iarr.push_back(std::move(e));
  }
  out["instances"] = std::move(iarr);
  const json& anomalies = member(v, "anomalies", "report");
  const std::string ap = "report.anomalies";
  require_array(anomalies, ap);
  json aarr = json::array();
  for (std::size_t i = 0; i < anomalies.size(); ++i) {
    const std::string p = idx(ap, i);
    require_object(anomalies[i], p);
    check_keys(anomalies[i], p,
               {"instance", "ideal", "ideal_generators", "pairs", "sign",
                "summary"});
    json a;
    a["instance"] =
        as_string(member(anomalies[i], "instance", p), p + ".instance");
    a["ideal"] = as_string(member(anomalies[i], "ideal", p), p + ".ideal");
    a["ideal_generators"] =
        check_matrix(member(anomalies[i], "ideal_generators", p),
                     p + ".ideal_generators");
    a["pairs"] = check_pairs(member(anomalies[i], "pairs", p), p + ".pairs");
    a["sign"] = check_sign(member(anomalies[i], "sign", p), p + ".sign");
    a["summary"] =
        as_string(member(anomalies[i], "summary", p), p + ".summary");
    aarr.push_back(std::move(a));
  }
  out["anomalies"] = std::move(aarr);
  return out;
}

json check_search_doc(const json& v) {
  check_keys(v, "report", {"kind", "problem", "options", "budget", "totals",
                           "instances", "survivors"});
  json out;
  out["kind"] = "search";
  std::string problem =
      as_string(member(v, "problem", "report"), "report.problem");
  problem_from_token(problem, "report.problem");
  out["problem"] = problem;
  out["options"] =
      check_options(member(v, "options", "report"), "report.options");
  out["budget"] =
      as_u64(member(v, "budget", "report"), "report.budget", 0, kMax);
  const json& totals = member(v, "totals", "report");
  require_object(totals, "report.totals");
  check_keys(totals, "report.totals", {"cases", "satisfying", "survivors"});
  json tot;
  tot["cases"] = as_u64(member(totals, "cases", "report.totals"),
                        "report.totals.cases", 0, kMax);
  tot["satisfying"] = as_u64(member(totals, "satisfying", "report.totals"),
                             "report.totals.satisfying", 0, kMax);
  tot["survivors"] = as_u64(member(totals, "survivors", "report.totals"),
                            "report.totals.survivors", 0, kMax);
  out["totals"] = std::move(tot);
  const json& insts = member(v, "instances", "report");
  const std::string ip = "report.instances";
  require_array(insts, ip);
  json iarr = json::array();
  for (std::size_t i = 0; i < insts.size(); ++i) {
    const std::string p = idx(ip, i);
    require_object(insts[i], p);
    check_keys(insts[i], p,
               {"name", "family", "modulus", "dim", "skipped", "skip_reason",
                "pool", "qualifying_pairs", "ideals", "cases", "satisfying",
                "survivors"});
    json e;
    e["name"] = as_string(member(insts[i], "name", p), p + ".name");
    e["family"] = as_string(member(insts[i], "family", p), p + ".family");
    e["modulus"] =
        as_u64(member(insts[i], "modulus", p), p + ".modulus", 2, kMax);
    e["dim"] = as_u64(member(insts[i], "dim", p), p + ".dim", 1, kMax);
    e["skipped"] = as_bool(member(insts[i], "skipped", p), p + ".skipped");
    e["skip_reason"] =
        as_string(member(insts[i], "skip_reason", p), p + ".skip_reason");
    e["pool"] = check_pool(member(insts[i], "pool", p), p + ".pool");
    e["qualifying_pairs"] = as_u64(member(insts[i], "qualifying_pairs", p),
                                   p + ".qualifying_pairs", 0, kMax);
    e["ideals"] = as_u64(member(insts[i], "ideals", p), p + ".ideals", 0, kMax);
    e["cases"] = as_u64(member(insts[i], "cases", p), p + ".cases", 0, kMax);
    e["satisfying"] =
        as_u64(member(insts[i], "satisfying", p), p + ".satisfying", 0, kMax);
    e["survivors"] =
        as_u64(member(insts[i], "survivors", p), p + ".survivors", 0, kMax);
    iarr.push_back(std::move(e));
  }
  out["instances"] = std::move(iarr);
  const json& survivors = member(v, "survivors", "report");
  const std::string sp = "report.survivors";
  require_array(survivors, sp);
  json sarr = json::array();
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    const std::string p = idx(sp, i);
    require_object(survivors[i], p);
    check_keys(survivors[i], p,
               {"instance", "family", "modulus", "ideal", "ideal_generators",
                "pairs", "sign", "trivial"});
    json s;
    s["instance"] =
        as_string(member(survivors[i], "instance", p), p + ".instance");
    s["family"] =
        as_string(member(survivors[i], "family", p), p + ".family");
    s["modulus"] =
        as_u64(member(survivors[i], "modulus", p), p + ".modulus", 2, kMax);
    s["ideal"] = as_string(member(survivors[i], "ideal", p), p + ".ideal");
    s["ideal_generators"] =
        check_matrix(member(survivors[i], "ideal_generators", p),
                     p + ".ideal_generators");
    s["pairs"] = check_pairs(member(survivors[i], "pairs", p), p + ".pairs");
    if (const json* sg = opt_member(survivors[i], "sign"))
      s["sign"] = check_sign(*sg, p + ".sign");
    s["trivial"] = as_bool(member(survivors[i], "trivial", p), p + ".trivial");
    sarr.push_back(std::move(s));
  }
  out["survivors"] = std::move(sarr);
  return out;
}

} // namespace

// --- emitters ---------------------------------------------------------------

std::string report_validation(const std::string& instance, const Ring& r,
                              const Verdict& ring_check,
                              const Verdict& grading_check) {
  json doc;
  doc["kind"] = "validation";
  doc["instance"] = instance;
  doc["modulus"] = r.modulus();
  doc["dim"] = r.dim();
  doc["ring"] = verdict_json(ring_check);
  doc["grading"] = verdict_json(grading_check);
  return finish(doc);
}

std::string report_classification(const std::string& instance,
                                  const std::string& map_name,
                                  const Classification& c) {
  json doc;
  doc["kind"] = "classification";
  doc["instance"] = instance;
  doc["map"] = map_name;
  doc["derivation"] = verdict_json(c.derivation);
  doc["homogeneous_map"] = verdict_json(c.homogeneous_map);
  doc["homogeneous_derivation"] = c.homogeneous_derivation;
  doc["generalized_derivation"] = c.generalized_derivation;
  doc["generalized_homogeneous"] = tri_name(c.generalized_homogeneous);
  doc["assoc_space_dim"] = static_cast<u64>(c.assoc_space_dim);
  if (c.associated) doc["associated"] = matrix_json(c.associated->columns());
  if (c.homogeneous_witness)
    doc["homogeneous_witness"] = matrix_json(c.homogeneous_witness->columns());
  doc["summary"] = c.summary();
  return finish(doc);
}

std::string report_primeness(const std::string& instance, const char* kind,
                             const PrimenessVerdict& v) {
  json doc;
  doc["kind"] = kind;
  doc["instance"] = instance;
  doc["prime"] = v.prime;
  doc["pairs_checked"] = v.pairs_checked;
  doc["detail"] = v.detail;
  if (v.witness) {
    json wit;
    wit["a"] = coords_json(v.witness->a);
    wit["b"] = coords_json(v.witness->b);
    doc["witness"] = std::move(wit);
  }
  return finish(doc);
}

std::string report_center(const std::string& instance,
                          const std::vector<Element>& basis) {
  json doc;
  doc["kind"] = "center";
  doc["instance"] = instance;
  doc["dim"] = basis.size();
  json rows = json::array();
  for (const Element& e : basis) rows.push_back(coords_json(e.coords()));
  doc["basis"] = std::move(rows);
  return finish(doc);
}

std::string report_theorem(const std::string& instance,
                           const std::string& theorem,
                           std::optional<Sign> sign, const std::string& ideal,
                           const TheoremVerdict& v) {
  json doc;
  doc["kind"] = "theorem";
  doc["instance"] = instance;
  doc["theorem"] = theorem;
  if (sign) doc["sign"] = sign_token(*sign);
  doc["ideal"] = ideal;
  json hyps = json::array();
  for (const HypothesisCheck& h : v.hypotheses) {
    json e;
    e["name"] = h.name;
    e["holds"] = h.holds;
    e["detail"] = h.detail;
    hyps.push_back(std::move(e));
  }
  doc["hypotheses"] = std::move(hyps);
  doc["hypotheses_hold"] = v.hypotheses_hold;
  doc["conclusion_commutative"] = v.conclusion_commutative;
  doc["consistent"] = v.consistent;
  doc["summary"] = v.summary();
  return finish(doc);
}

std::string report_check(const std::string& instance, const std::string& check,
                         const Verdict& v) {
  json doc;
  doc["kind"] = "check";
  doc["instance"] = instance;
  doc["check"] = check;
  doc["verdict"] = verdict_json(v);
  return finish(doc);
}

std::string report_expectations(
    const std::string& instance,
    const std::vector<std::pair<std::string, Verdict>>& checks) {
  json doc;
  doc["kind"] = "expectations";
  doc["instance"] = instance;
  json arr = json::array();
  u64 passed = 0, failed = 0;
  for (const auto& [name, v] : checks) {
    json e;
    e["name"] = name;
    e["pass"] = v.pass;
    (v.pass ? passed : failed) += 1;
    e["detail"] = v.detail;
    e["witness"] = v.witness;
    arr.push_back(std::move(e));
  }
  doc["checks"] = std::move(arr);
  doc["passed"] = passed;
  doc["failed"] = failed;
  return finish(doc);
}

std::string report_sweep(const SweepReport& rep) {
  json doc;
  doc["kind"] = "sweep";
  doc["theorem"] = theorem_token(rep.theorem);
  doc["options"] = options_json(rep.options);
  doc["budget"] = rep.budget;
  json totals;
  totals["cases"] = rep.total_cases;
  totals["inconsistencies"] = rep.total_inconsistencies;
  doc["totals"] = std::move(totals);
  json insts = json::array();
  for (const SweepInstanceResult& r : rep.instances) {
    json e;
    e["name"] = r.instance;
    e["family"] = r.family;
    e["modulus"] = r.modulus;
    e["dim"] = r.dim;
    e["gr_prime"] = r.gr_prime;
    e["commutative"] = r.commutative;
    e["checks_skipped"] = r.checks_skipped;
    e["pool"] = pool_json(r.pool);
    e["qualifying_pairs"] = r.qualifying_pairs;
    e["ideals"] = r.ideals;
    e["cases"] = r.cases;
    e["inconsistencies"] = r.inconsistencies;
    insts.push_back(std::move(e));
  }
  doc["instances"] = std::move(insts);
  json anomalies = json::array();
  for (const SweepAnomaly& a : rep.anomalies) {
    json e;
    e["instance"] = a.instance;
    e["ideal"] = a.ideal;
    e["ideal_generators"] = matrix_json(a.ideal_generators);
    e["pairs"] = pairs_json(a.pairs);
    e["sign"] = sign_token(a.sign);
    e["summary"] = a.summary;
    anomalies.push_back(std::move(e));
  }
  doc["anomalies"] = std::move(anomalies);
  return finish(doc);
}

std::string report_search(const SearchReport& rep) {
  json doc;
  doc["kind"] = "search";
  doc["problem"] = problem_token(rep.problem);
  doc["options"] = options_json(rep.options);
  doc["budget"] = rep.budget;
  json totals;
  totals["cases"] = rep.total_cases;
  totals["satisfying"] = rep.total_satisfying;
  totals["survivors"] = rep.total_survivors;
  doc["totals"] = std::move(totals);
  json insts = json::array();
  for (const SearchInstanceResult& r : rep.instances) {
    json e;
    e["name"] = r.instance;
    e["family"] = r.family;
    e["modulus"] = r.modulus;
    e["dim"] = r.dim;
    e["skipped"] = r.skipped;
    e["skip_reason"] = r.skip_reason;
    e["pool"] = pool_json(r.pool);
    e["qualifying_pairs"] = r.qualifying_pairs;
    e["ideals"] = r.ideals;
    e["cases"] = r.cases;
    e["satisfying"] = r.satisfying;
    e["survivors"] = r.survivors;
    insts.push_back(std::move(e));
  }
  doc["instances"] = std::move(insts);
  json survivors = json::array();
  for (const Survivor& s : rep.survivors) {
    json e;
    e["instance"] = s.instance;
    e["family"] = s.family;
    e["modulus"] = s.modulus;
    e["ideal"] = s.ideal;
    e["ideal_generators"] = matrix_json(s.ideal_generators);
    e["pairs"] = pairs_json(s.pairs);
    if (s.sign) e["sign"] = sign_token(*s.sign);
    e["trivial"] = s.trivial;
    survivors.push_back(std::move(e));
  }
  doc["survivors"] = std::move(survivors);
  return finish(doc);
}

std::string reparse_report(const std::string& text) {
  json root = jsonu::parse_text(text);
  require_object(root, "report");
  std::string kind = as_string(member(root, "kind", "report"), "report.kind");
  json out;
  if (kind == "validation") {
    out = check_validation_doc(root);
  } else if (kind == "classification") {
    out = check_classification_doc(root);
  } else if (kind == "gr-primeness" || kind == "primeness") {
    out = check_primeness_doc(root, kind);
  } else if (kind == "center") {
    out = check_center_doc(root);
  } else if (kind == "theorem") {
    out = check_theorem_doc(root);
  } else if (kind == "check") {
    out = check_check_doc(root);
  } else if (kind == "expectations") {
    out = check_expectations_doc(root);
  } else if (kind == "sweep") {
    out = check_sweep_doc(root);
  } else if (kind == "search") {
    out = check_search_doc(root);
  } else {
    bad("report.kind", "unknown report kind '" + kind + "'");
  }
  return finish(out);
}

} // namespace gradering
