#include "gradering/corpus.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

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

/// Coordinate vector over the ring basis: exactly dim entries in [0, m).
std::vector<u64> as_coords(const json& v, const std::string& path,
                           std::size_t dim, u64 m) {
  require_array(v, path);
  if (v.size() != dim)
    bad(path, "expected " + std::to_string(dim) + " coordinates, got " +
                  std::to_string(v.size()));
  std::vector<u64> out;
  out.reserve(dim);
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(as_u64(v[i], idx(path, i), 0, m - 1));
  return out;
}

std::vector<RingSpec::Triple> parse_triples(const json& v,
                                            const std::string& path,
                                            std::size_t dim, u64 m) {
  require_array(v, path);
  std::vector<RingSpec::Triple> out;
  out.reserve(v.size());
  for (std::size_t n = 0; n < v.size(); ++n) {
    const std::string p = idx(path, n);
    require_array(v[n], p);
    if (v[n].size() != 4) bad(p, "expected [i, j, k, c]");
    RingSpec::Triple t;
    t.i = static_cast<u32>(as_u64(v[n][0], p + "[0]", 0, dim - 1));
    t.j = static_cast<u32>(as_u64(v[n][1], p + "[1]", 0, dim - 1));
    t.k = static_cast<u32>(as_u64(v[n][2], p + "[2]", 0, dim - 1));
    t.c = as_u64(v[n][3], p + "[3]", 1, m - 1);
    if (!out.empty()) {
      const auto& prev = out.back();
      auto key = std::tuple(t.i, t.j, t.k);
      auto prev_key = std::tuple(prev.i, prev.j, prev.k);
      if (key == prev_key) bad(p, "duplicate triple");
      if (key < prev_key) bad(p, "triples must be sorted lexicographically");
    }
    out.push_back(t);
  }
  return out;
}

GradingSpec parse_grading(const json& v, const std::string& path,
                          std::size_t dim) {
  require_object(v, path);
  check_keys(v, path, {"free_rank", "torsion", "degrees"});
  GradingSpec g;
  g.free_rank =
      static_cast<u32>(as_u64(member(v, "free_rank", path), path + ".free_rank", 0, 8));
  const json& tor = member(v, "torsion", path);
  require_array(tor, path + ".torsion");
  for (std::size_t i = 0; i < tor.size(); ++i)
    g.torsion.push_back(as_u64(tor[i], idx(path + ".torsion", i), 2,
                               std::numeric_limits<u64>::max()));
  const std::size_t arity = g.free_rank + g.torsion.size();
  const json& degs = member(v, "degrees", path);
  require_array(degs, path + ".degrees");
  if (degs.size() != dim)
    bad(path + ".degrees", "expected one degree per basis vector");
  for (std::size_t i = 0; i < degs.size(); ++i) {
    const std::string p = idx(path + ".degrees", i);
    require_array(degs[i], p);
    if (degs[i].size() != arity)
      bad(p, "expected " + std::to_string(arity) + " coordinates");
    std::vector<i64> d;
    for (std::size_t c = 0; c < degs[i].size(); ++c) {
      i64 x = as_i64(degs[i][c], idx(p, c));
      if (c >= g.free_rank) {
        u64 mod = g.torsion[c - g.free_rank];
        if (x < 0 || static_cast<u64>(x) >= mod)
          bad(idx(p, c), "torsion coordinate must be reduced");
      }
      d.push_back(x);
    }
    g.degrees.push_back(std::move(d));
  }
  return g;
}

Expectations parse_expectations(const json& v, const std::string& path,
                                const RingDocument& doc) {
  require_object(v, path);
  check_keys(v, path,
             {"ring_valid", "grading_valid", "grading_witness", "commutative",
              "gr_prime", "gr_prime_witness", "prime", "prime_witness",
              "center_dim", "maps", "map_images", "ideals",
              "generalized_pairs", "conditions"});
  const std::size_t dim = doc.ring.basis_names.size();
  const u64 m = doc.ring.modulus;
  Expectations e;

  auto known_map = [&](const std::string& name, const std::string& p) {
    if (!doc.maps.count(name)) bad(p, "references undeclared map '" + name + "'");
  };

  if (const json* j = opt_member(v, "ring_valid"))
    e.ring_valid = as_bool(*j, path + ".ring_valid");
  if (const json* j = opt_member(v, "grading_valid"))
    e.grading_valid = as_bool(*j, path + ".grading_valid");
  if (const json* j = opt_member(v, "grading_witness")) {
    const std::string p = path + ".grading_witness";
    require_array(*j, p);
    if (j->size() != 3) bad(p, "expected [i, j, k]");
    std::vector<i64> w;
    for (std::size_t i = 0; i < 3; ++i)
      w.push_back(static_cast<i64>(as_u64((*j)[i], idx(p, i), 0, dim - 1)));
    e.grading_witness = std::move(w);
  }
  if (const json* j = opt_member(v, "commutative"))
    e.commutative = as_bool(*j, path + ".commutative");

  auto parse_pair = [&](const json& j, const std::string& p) {
    require_object(j, p);
    check_keys(j, p, {"a", "b"});
    return std::pair(as_coords(member(j, "a", p), p + ".a", dim, m),
                     as_coords(member(j, "b", p), p + ".b", dim, m));
  };
  if (const json* j = opt_member(v, "gr_prime"))
    e.gr_prime = as_bool(*j, path + ".gr_prime");
  if (const json* j = opt_member(v, "gr_prime_witness"))
    e.gr_prime_witness = parse_pair(*j, path + ".gr_prime_witness");
  if (const json* j = opt_member(v, "prime"))
    e.prime = as_bool(*j, path + ".prime");
  if (const json* j = opt_member(v, "prime_witness"))
    e.prime_witness = parse_pair(*j, path + ".prime_witness");
  if (const json* j = opt_member(v, "center_dim"))
    e.center_dim = as_u64(*j, path + ".center_dim", 0, dim);

  if (const json* j = opt_member(v, "maps")) {
    const std::string p = path + ".maps";
    require_object(*j, p);
    for (const auto& item : j->items()) {
      const std::string mp = p + "." + item.key();
      known_map(item.key(), mp);
      require_object(item.value(), mp);
      check_keys(item.value(), mp,
                 {"derivation", "homogeneous_map", "homogeneous_derivation",
                  "generalized_derivation", "generalized_homogeneous",
                  "assoc_space_dim", "associated"});
      MapExpectation me;
      if (const json* f = opt_member(item.value(), "derivation"))
        me.derivation = as_bool(*f, mp + ".derivation");
      if (const json* f = opt_member(item.value(), "homogeneous_map"))
        me.homogeneous_map = as_bool(*f, mp + ".homogeneous_map");
      if (const json* f = opt_member(item.value(), "homogeneous_derivation"))
        me.homogeneous_derivation = as_bool(*f, mp + ".homogeneous_derivation");
      if (const json* f = opt_member(item.value(), "generalized_derivation"))
        me.generalized_derivation = as_bool(*f, mp + ".generalized_derivation");
      if (const json* f = opt_member(item.value(), "generalized_homogeneous")) {
        std::string s = as_string(*f, mp + ".generalized_homogeneous");
        if (s != "yes" && s != "no" && s != "undecided")
          bad(mp + ".generalized_homogeneous", "expected yes, no or undecided");
        me.generalized_homogeneous = s;
      }
      if (const json* f = opt_member(item.value(), "assoc_space_dim"))
        me.assoc_space_dim = as_u64(*f, mp + ".assoc_space_dim", 0, dim * dim);
      if (const json* f = opt_member(item.value(), "associated")) {
        std::string s = as_string(*f, mp + ".associated");
        known_map(s, mp + ".associated");
        me.associated = s;
      }
      e.maps.emplace(item.key(), std::move(me));
    }
  }

  if (const json* j = opt_member(v, "map_images")) {
    const std::string p = path + ".map_images";
    require_array(*j, p);
    for (std::size_t n = 0; n < j->size(); ++n) {
      const std::string mp = idx(p, n);
      require_object((*j)[n], mp);
      check_keys((*j)[n], mp, {"map", "input", "output", "homogeneous"});
      MapImageExpectation mi;
      mi.map = as_string(member((*j)[n], "map", mp), mp + ".map");
      known_map(mi.map, mp + ".map");
      mi.input = as_coords(member((*j)[n], "input", mp), mp + ".input", dim, m);
      mi.output =
          as_coords(member((*j)[n], "output", mp), mp + ".output", dim, m);
      if (const json* f = opt_member((*j)[n], "homogeneous"))
        mi.homogeneous = as_bool(*f, mp + ".homogeneous");
      e.map_images.push_back(std::move(mi));
    }
  }

  if (const json* j = opt_member(v, "ideals")) {
    const std::string p = path + ".ideals";
    require_object(*j, p);
    for (const auto& item : j->items()) {
      const std::string ip = p + "." + item.key();
      if (!doc.ideals.count(item.key()))
        bad(ip, "references undeclared ideal '" + item.key() + "'");
      require_object(item.value(), ip);
      check_keys(item.value(), ip, {"nonzero", "graded"});
      IdealExpectation ie;
      if (const json* f = opt_member(item.value(), "nonzero"))
        ie.nonzero = as_bool(*f, ip + ".nonzero");
      if (const json* f = opt_member(item.value(), "graded"))
        ie.graded = as_bool(*f, ip + ".graded");
      e.ideals.emplace(item.key(), ie);
    }
  }

  if (const json* j = opt_member(v, "generalized_pairs")) {
    const std::string p = path + ".generalized_pairs";
    require_array(*j, p);
    for (std::size_t n = 0; n < j->size(); ++n) {
      const std::string gp = idx(p, n);
      require_object((*j)[n], gp);
      check_keys((*j)[n], gp, {"f", "d"});
      PairExpectation pe;
      pe.f = as_string(member((*j)[n], "f", gp), gp + ".f");
      pe.d = as_string(member((*j)[n], "d", gp), gp + ".d");
      known_map(pe.f, gp + ".f");
      known_map(pe.d, gp + ".d");
      e.generalized_pairs.push_back(std::move(pe));
    }
  }

  if (const json* j = opt_member(v, "conditions")) {
    const std::string p = path + ".conditions";
    require_array(*j, p);
    for (std::size_t n = 0; n < j->size(); ++n) {
      const std::string cp = idx(p, n);
      require_object((*j)[n], cp);
      check_keys((*j)[n], cp, {"tag", "sign", "f1", "f2", "ideal", "holds"});
      ConditionExpectation ce;
      ce.kind.tag = condition_tag_from_token(
          as_string(member((*j)[n], "tag", cp), cp + ".tag"), cp + ".tag");
      const json* sign = opt_member((*j)[n], "sign");
      if (condition_has_sign(ce.kind.tag)) {
        if (!sign) bad(cp, "missing field 'sign'");
        ce.kind.sign =
            sign_from_token(as_string(*sign, cp + ".sign"), cp + ".sign");
      } else if (sign) {
        bad(cp + ".sign", "this condition shape has no sign");
      }
      ce.f1 = as_string(member((*j)[n], "f1", cp), cp + ".f1");
      known_map(ce.f1, cp + ".f1");
      const json* f2 = opt_member((*j)[n], "f2");
      if (condition_uses_second_map(ce.kind.tag)) {
        if (!f2) bad(cp, "missing field 'f2'");
        ce.f2 = as_string(*f2, cp + ".f2");
        known_map(*ce.f2, cp + ".f2");
      } else if (f2) {
        bad(cp + ".f2", "this condition shape takes a single map");
      }
      ce.ideal = as_string(member((*j)[n], "ideal", cp), cp + ".ideal");
      if (!doc.ideals.count(ce.ideal))
        bad(cp + ".ideal", "references undeclared ideal '" + ce.ideal + "'");
      ce.holds = as_bool(member((*j)[n], "holds", cp), cp + ".holds");
      e.conditions.push_back(std::move(ce));
    }
  }
  return e;
}

json emit_expectations(const Expectations& e) {
  json v = json::object();
  auto put_pair = [](const std::pair<std::vector<u64>, std::vector<u64>>& w) {
    json p = json::object();
    p["a"] = w.first;
    p["b"] = w.second;
    return p;
  };
  if (e.ring_valid) v["ring_valid"] = *e.ring_valid;
  if (e.grading_valid) v["grading_valid"] = *e.grading_valid;
  if (e.grading_witness) v["grading_witness"] = *e.grading_witness;
  if (e.commutative) v["commutative"] = *e.commutative;
  if (e.gr_prime) v["gr_prime"] = *e.gr_prime;
  if (e.gr_prime_witness) v["gr_prime_witness"] = put_pair(*e.gr_prime_witness);
  if (e.prime) v["prime"] = *e.prime;
  if (e.prime_witness) v["prime_witness"] = put_pair(*e.prime_witness);
  if (e.center_dim) v["center_dim"] = *e.center_dim;
  if (!e.maps.empty()) {
    json maps = json::object();
    for (const auto& [name, me] : e.maps) {
      json mv = json::object();
      if (me.derivation) mv["derivation"] = *me.derivation;
      if (me.homogeneous_map) mv["homogeneous_map"] = *me.homogeneous_map;
      if (me.homogeneous_derivation)
        mv["homogeneous_derivation"] = *me.homogeneous_derivation;
      if (me.generalized_derivation)
        mv["generalized_derivation"] = *me.generalized_derivation;
      if (me.generalized_homogeneous)
        mv["generalized_homogeneous"] = *me.generalized_homogeneous;
      if (me.assoc_space_dim) mv["assoc_space_dim"] = *me.assoc_space_dim;
      if (me.associated) mv["associated"] = *me.associated;
      maps[name] = std::move(mv);
    }
    v["maps"] = std::move(maps);
  }
  if (!e.map_images.empty()) {
    json arr = json::array();
    for (const auto& mi : e.map_images) {
      json mv = json::object();
      mv["map"] = mi.map;
      mv["input"] = mi.input;
      mv["output"] = mi.output;
      if (mi.homogeneous) mv["homogeneous"] = *mi.homogeneous;
      arr.push_back(std::move(mv));
    }
    v["map_images"] = std::move(arr);
  }
  if (!e.ideals.empty()) {
    json ids = json::object();
    for (const auto& [name, ie] : e.ideals) {
      json iv = json::object();
      if (ie.nonzero) iv["nonzero"] = *ie.nonzero;
      if (ie.graded) iv["graded"] = *ie.graded;
      ids[name] = std::move(iv);
    }
    v["ideals"] = std::move(ids);
  }
  if (!e.generalized_pairs.empty()) {
    json arr = json::array();
    for (const auto& pe : e.generalized_pairs) {
      json pv = json::object();
      pv["f"] = pe.f;
      pv["d"] = pe.d;
      arr.push_back(std::move(pv));
    }
    v["generalized_pairs"] = std::move(arr);
  }
  if (!e.conditions.empty()) {
    json arr = json::array();
    for (const auto& ce : e.conditions) {
      json cv = json::object();
      cv["tag"] = condition_tag_token(ce.kind.tag);
      if (condition_has_sign(ce.kind.tag))
        cv["sign"] = sign_token(ce.kind.sign);
      cv["f1"] = ce.f1;
      if (ce.f2) cv["f2"] = *ce.f2;
      cv["ideal"] = ce.ideal;
      cv["holds"] = ce.holds;
      arr.push_back(std::move(cv));
    }
    v["conditions"] = std::move(arr);
  }
  return v;
}

} // namespace

bool Expectations::empty() const {
  return !ring_valid && !grading_valid && !grading_witness && !commutative &&
         !gr_prime && !gr_prime_witness && !prime && !prime_witness &&
         !center_dim && maps.empty() && map_images.empty() && ideals.empty() &&
         generalized_pairs.empty() && conditions.empty();
}

RingDocument parse_spec(const std::string& text) {
  json root = jsonu::parse_text(text);
  require_object(root, "document");
  check_keys(root, "document",
             {"format_version", "modulus", "basis_names", "structure_constants",
              "grading", "maps", "ideals", "expectations", "provenance"});

  RingDocument doc;
  doc.format_version = static_cast<u32>(
      as_u64(member(root, "format_version", "document"), "format_version", 0,
             std::numeric_limits<u32>::max()));
  if (doc.format_version != 1)
    bad("format_version", "unsupported format_version " +
                              std::to_string(doc.format_version));
  doc.ring.modulus = as_u64(member(root, "modulus", "document"), "modulus", 2,
                            std::numeric_limits<u64>::max());

  const json& names = member(root, "basis_names", "document");
  require_array(names, "basis_names");
  if (names.empty()) bad("basis_names", "a ring needs at least one basis vector");
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::string n = as_string(names[i], idx("basis_names", i));
    if (n.empty()) bad(idx("basis_names", i), "empty basis name");
    if (std::find(doc.ring.basis_names.begin(), doc.ring.basis_names.end(),
                  n) != doc.ring.basis_names.end())
      bad(idx("basis_names", i), "duplicate basis name '" + n + "'");
    doc.ring.basis_names.push_back(std::move(n));
  }
  const std::size_t dim = doc.ring.basis_names.size();
  const u64 m = doc.ring.modulus;

  doc.ring.structure_constants =
      parse_triples(member(root, "structure_constants", "document"),
                    "structure_constants", dim, m);
  doc.grading = parse_grading(member(root, "grading", "document"), "grading", dim);

  if (const json* j = opt_member(root, "maps")) {
    require_object(*j, "maps");
    for (const auto& item : j->items()) {
      const std::string p = "maps." + item.key();
      require_array(item.value(), p);
      if (item.value().size() != dim)
        bad(p, "expected one image per basis vector");
      std::vector<std::vector<u64>> cols;
      for (std::size_t c = 0; c < item.value().size(); ++c)
        cols.push_back(as_coords(item.value()[c], idx(p, c), dim, m));
      doc.maps.emplace(item.key(), std::move(cols));
    }
  }

  if (const json* j = opt_member(root, "ideals")) {
    require_object(*j, "ideals");
    for (const auto& item : j->items()) {
      const std::string p = "ideals." + item.key();
      require_object(item.value(), p);
      check_keys(item.value(), p, {"side", "generators"});
      IdealSpec spec;
      spec.side = side_from_name(
          as_string(member(item.value(), "side", p), p + ".side"), p + ".side");
      const json& gens = member(item.value(), "generators", p);
      require_array(gens, p + ".generators");
      for (std::size_t g = 0; g < gens.size(); ++g)
        spec.generators.push_back(
            as_coords(gens[g], idx(p + ".generators", g), dim, m));
      doc.ideals.emplace(item.key(), std::move(spec));
    }
  }

  if (const json* j = opt_member(root, "expectations"))
    doc.expectations = parse_expectations(*j, "expectations", doc);
  if (const json* j = opt_member(root, "provenance"))
    doc.provenance = as_string(*j, "provenance");
  return doc;
}

std::string emit_spec(const RingDocument& doc) {
  json root = json::object();
  root["format_version"] = doc.format_version;
  root["modulus"] = doc.ring.modulus;
  root["basis_names"] = doc.ring.basis_names;

  auto triples = doc.ring.structure_constants;
  std::sort(triples.begin(), triples.end(), [](const auto& a, const auto& b) {
    return std::tuple(a.i, a.j, a.k) < std::tuple(b.i, b.j, b.k);
  });
  json sc = json::array();
  for (const auto& t : triples)
    sc.push_back(json::array({t.i, t.j, t.k, t.c}));
  root["structure_constants"] = std::move(sc);

  json grading = json::object();
  grading["free_rank"] = doc.grading.free_rank;
  grading["torsion"] = doc.grading.torsion;
  grading["degrees"] = doc.grading.degrees;
  root["grading"] = std::move(grading);

  if (!doc.maps.empty()) {
    json maps = json::object();
    for (const auto& [name, cols] : doc.maps) maps[name] = cols;
    root["maps"] = std::move(maps);
  }
  if (!doc.ideals.empty()) {
    json ideals = json::object();
    for (const auto& [name, spec] : doc.ideals) {
      json iv = json::object();
      iv["side"] = side_name(spec.side);
      iv["generators"] = spec.generators;
      ideals[name] = std::move(iv);
    }
    root["ideals"] = std::move(ideals);
  }
  if (!doc.expectations.empty())
    root["expectations"] = emit_expectations(doc.expectations);
  if (!doc.provenance.empty()) root["provenance"] = doc.provenance;
  return root.dump(2) + "\n";
}

RealizedInstance realize(const RingDocument& doc, std::string name) {
  Ring ring = Ring::make(doc.ring);
  Grading raw(DegreeGroup{doc.grading.free_rank, doc.grading.torsion},
              [&] {
                std::vector<Degree> ds;
                for (const auto& d : doc.grading.degrees)
                  ds.push_back(Degree{d});
                return ds;
              }());
  RealizedInstance inst{std::move(name),
                        ring,
                        raw,
                        std::nullopt,
                        validate_ring(ring),
                        validate_grading(ring, raw),
                        {},
                        {}};
  if (inst.grading_validation.pass) inst.grading = certify(ring, raw);

  for (const auto& [mname, cols] : doc.maps)
    inst.maps.emplace(mname, AdditiveMap(ring, cols));
  for (const auto& [iname, spec] : doc.ideals) {
    std::vector<Element> gens;
    gens.reserve(spec.generators.size());
    for (const auto& g : spec.generators) gens.push_back(ring.element_u(g));
    IdealHandle I = ideal_generate(gens, spec.side, ring);
    if (inst.grading) I.attach_graded_certificate(is_graded_ideal(I, *inst.grading));
    inst.ideals.emplace(iname, std::move(I));
  }
  return inst;
}

std::vector<std::pair<std::string, Verdict>>
run_expectations(const RealizedInstance& inst, const Expectations& expect,
                 u64 budget) {
  std::vector<std::pair<std::string, Verdict>> out;
  auto add = [&](std::string name, Verdict v) {
    out.emplace_back(std::move(name), std::move(v));
  };
  auto flag = [](bool declared, bool computed, const std::string& what) {
    Verdict v;
    v.pass = declared == computed;
    v.detail = what + ": declared " + (declared ? "yes" : "no") +
               ", computed " + (computed ? "yes" : "no");
    return v;
  };
  auto no_grading = [](const std::string& what) {
    return Verdict{false, what + ": needs a valid grading, but validation failed",
                   {}};
  };

  if (expect.ring_valid)
    add("ring_valid",
        flag(*expect.ring_valid, inst.ring_validation.pass, "ring validity"));
  if (expect.grading_valid)
    add("grading_valid", flag(*expect.grading_valid,
                              inst.grading_validation.pass, "grading validity"));
  if (expect.grading_witness) {
    Verdict v;
    v.pass = !inst.grading_validation.pass &&
             inst.grading_validation.witness == *expect.grading_witness;
    v.detail = "grading witness: " + inst.grading_validation.detail;
    v.witness = inst.grading_validation.witness;
    add("grading_witness", v);
  }
  if (expect.commutative)
    add("commutative",
        flag(*expect.commutative, is_commutative(inst.ring).pass, "commutativity"));
  if (expect.center_dim) {
    u64 dim = center(inst.ring).size();
    Verdict v;
    v.pass = dim == *expect.center_dim;
    v.detail = "center dimension: declared " + std::to_string(*expect.center_dim) +
               ", computed " + std::to_string(dim);
    add("center_dim", v);
  }

  auto check_pair_witness =
      [&](const std::string& name, const PrimenessVerdict& pv,
          const std::optional<std::pair<std::vector<u64>, std::vector<u64>>>&
              declared) {
        Verdict v;
        v.pass = !pv.prime && pv.witness && pv.witness->a == declared->first &&
                 pv.witness->b == declared->second;
        v.detail = name + ": " + pv.detail;
        add(name, v);
      };
  if (expect.gr_prime || expect.gr_prime_witness) {
    if (!inst.grading) {
      if (expect.gr_prime) add("gr_prime", no_grading("gr-primeness"));
      if (expect.gr_prime_witness)
        add("gr_prime_witness", no_grading("gr-primeness witness"));
    } else {
      PrimenessVerdict pv = is_gr_prime(inst.ring, *inst.grading, budget);
      if (expect.gr_prime)
        add("gr_prime", flag(*expect.gr_prime, pv.prime, "gr-primeness"));
      if (expect.gr_prime_witness)
        check_pair_witness("gr_prime_witness", pv, expect.gr_prime_witness);
    }
  }
  if (expect.prime || expect.prime_witness) {
    PrimenessVerdict pv = is_prime(inst.ring, budget);
    if (expect.prime) add("prime", flag(*expect.prime, pv.prime, "primeness"));
    if (expect.prime_witness)
      check_pair_witness("prime_witness", pv, expect.prime_witness);
  }

  std::map<std::string, Classification> classified;
  auto classification_of = [&](const std::string& name) -> const Classification& {
    auto it = classified.find(name);
    if (it == classified.end())
      it = classified
               .emplace(name,
                        classify_map(inst.maps.at(name), *inst.grading, budget))
               .first;
    return it->second;
  };

  for (const auto& [name, me] : expect.maps) {
    const std::string prefix = "maps." + name + ".";
    if (!inst.maps.count(name)) {
      add(prefix + "declared", Verdict{false, "map '" + name + "' missing", {}});
      continue;
    }
    if (!inst.grading) {
      add(prefix + "classification", no_grading("classification"));
      continue;
    }
    const Classification& c = classification_of(name);
    if (me.derivation)
      add(prefix + "derivation",
          flag(*me.derivation, c.derivation.pass, "derivation law"));
    if (me.homogeneous_map)
      add(prefix + "homogeneous_map",
          flag(*me.homogeneous_map, c.homogeneous_map.pass, "homogeneity"));
    if (me.homogeneous_derivation)
      add(prefix + "homogeneous_derivation",
          flag(*me.homogeneous_derivation, c.homogeneous_derivation,
               "homogeneous derivation"));
    if (me.generalized_derivation)
      add(prefix + "generalized_derivation",
          flag(*me.generalized_derivation, c.generalized_derivation,
               "generalized derivation"));
    if (me.generalized_homogeneous) {
      std::string got = tri_name(c.generalized_homogeneous);
      Verdict v;
      v.pass = got == *me.generalized_homogeneous;
      v.detail = "generalized homogeneous: declared " +
                 *me.generalized_homogeneous + ", computed " + got;
      add(prefix + "generalized_homogeneous", v);
    }
    if (me.assoc_space_dim) {
      Verdict v;
      v.pass = c.generalized_derivation &&
               c.assoc_space_dim == *me.assoc_space_dim;
      v.detail = "associated-space dimension: declared " +
                 std::to_string(*me.assoc_space_dim) + ", computed " +
                 std::to_string(c.assoc_space_dim);
      add(prefix + "assoc_space_dim", v);
    }
    if (me.associated) {
      Verdict v;
      v.pass = c.associated && inst.maps.count(*me.associated) &&
               *c.associated == inst.maps.at(*me.associated);
      v.detail = "canonical associated derivation: declared '" +
                 *me.associated + "'";
      if (!c.associated) v.detail += ", but none was computed";
      add(prefix + "associated", v);
    }
  }

  for (std::size_t n = 0; n < expect.map_images.size(); ++n) {
    const auto& mi = expect.map_images[n];
    const std::string name = idx("map_images", n);
    Element got = inst.maps.at(mi.map).apply(inst.ring.element_u(mi.input));
    Verdict v;
    v.pass = got.coords() == mi.output;
    v.detail = mi.map + " maps the declared input to " + got.str();
    if (v.pass && mi.homogeneous) {
      if (!inst.grading) {
        add(name, no_grading("image homogeneity"));
        continue;
      }
      bool hom = is_homogeneous(got, *inst.grading).in_single_component();
      v.pass = hom == *mi.homogeneous;
      v.detail += hom ? " (homogeneous)" : " (mixed)";
    }
    add(name, v);
  }

  for (const auto& [name, ie] : expect.ideals) {
    const std::string prefix = "ideals." + name + ".";
    const IdealHandle& I = inst.ideals.at(name);
    if (ie.nonzero)
      add(prefix + "nonzero", flag(*ie.nonzero, !I.is_zero(), "nonzero span"));
    if (ie.graded) {
      if (!inst.grading) {
        add(prefix + "graded", no_grading("gradedness"));
      } else {
        add(prefix + "graded",
            flag(*ie.graded, is_graded_ideal(I, *inst.grading).pass,
                 "graded ideal"));
      }
    }
  }

  for (std::size_t n = 0; n < expect.generalized_pairs.size(); ++n) {
    const auto& pe = expect.generalized_pairs[n];
    Verdict v = is_generalized_pair(inst.maps.at(pe.f), inst.maps.at(pe.d));
    v.detail = "(" + pe.f + ", " + pe.d + "): " + v.detail;
    add(idx("generalized_pairs", n), v);
  }

  for (std::size_t n = 0; n < expect.conditions.size(); ++n) {
    const auto& ce = expect.conditions[n];
    const std::string name = idx("conditions", n);
    if (!inst.grading) {
      add(name, no_grading(condition_name(ce.kind)));
      continue;
    }
    const AdditiveMap* f2 = ce.f2 ? &inst.maps.at(*ce.f2) : nullptr;
    ConditionOutcome oc = check_condition(ce.kind, inst.maps.at(ce.f1), f2,
                                          inst.ideals.at(ce.ideal),
                                          *inst.grading, budget);
    Verdict v;
    v.pass = oc.verdict.pass == ce.holds;
    v.detail = condition_name(ce.kind) + ": declared " +
               (ce.holds ? "holds" : "fails") + "; " + oc.verdict.detail;
    v.witness = oc.verdict.witness;
    add(name, v);
  }
  return out;
}

RingSpec truncated_poly_spec(u64 p, u64 k) {
  if (k < 1) throw PreconditionError("truncated_poly_spec: k must be >= 1");
  RingSpec spec;
  spec.modulus = p;
  for (u64 n = 0; n < k; ++n) {
    if (n == 0)
      spec.basis_names.push_back("1");
    else if (n == 1)
      spec.basis_names.push_back("X");
    else
      spec.basis_names.push_back("X^" + std::to_string(n));
  }
  for (u64 a = 0; a < k; ++a)
    for (u64 b = 0; b + a < k; ++b)
      spec.structure_constants.push_back({static_cast<u32>(a),
                                          static_cast<u32>(b),
                                          static_cast<u32>(a + b), 1});
  std::sort(spec.structure_constants.begin(), spec.structure_constants.end(),
            [](const auto& x, const auto& y) {
              return std::tuple(x.i, x.j, x.k) < std::tuple(y.i, y.j, y.k);
            });
  return spec;
}

namespace {

using Cols = std::vector<std::vector<u64>>;

std::vector<std::vector<i64>> degree_table(std::size_t dim) {
  return std::vector<std::vector<i64>>(dim);
}

void sort_triples(RingSpec& spec) {
  std::sort(spec.structure_constants.begin(), spec.structure_constants.end(),
            [](const auto& x, const auto& y) {
              return std::tuple(x.i, x.j, x.k) < std::tuple(y.i, y.j, y.k);
            });
}

u64 require_prime_param(const CatalogParams& params, u64 fallback) {
  u64 p = params.modulus.value_or(fallback);
  if (!is_prime(p))
    throw PreconditionError("build_catalog_example: modulus " +
                            std::to_string(p) + " is not prime");
  return p;
}

u64 require_truncation(const CatalogParams& params, u64 fallback) {
  u64 k = params.truncation.value_or(fallback);
  if (k < 4)
    throw PreconditionError(
        "build_catalog_example: truncation must be at least 4");
  return k;
}

std::string provenance_line(const std::string& id, u64 p,
                            std::optional<u64> k) {
  std::string s = "gradering example catalog: id " + id + ", modulus " +
                  std::to_string(p);
  if (k) s += ", truncation " + std::to_string(*k);
  return s;
}

/// Nilpotent 3x3 slice span{E12, E13, E23} glued to Z_p[X]/(X^k), all cross
/// products zero. Shared by the ex3.2.1 variants.
RingDocument build_ex321(bool corrected, const CatalogParams& params) {
  const u64 p = require_prime_param(params, 5);
  const u64 k = require_truncation(params, 10);
  RingDocument doc;
  doc.ring = truncated_poly_spec(p, k);
  doc.ring.basis_names.insert(doc.ring.basis_names.begin(),
                              {"E12", "E13", "E23"});
  for (auto& t : doc.ring.structure_constants) {
    t.i += 3;
    t.j += 3;
    t.k += 3;
  }
  doc.ring.structure_constants.push_back({0, 2, 1, 1}); // E12 E23 = E13
  sort_triples(doc.ring);
  const std::size_t dim = 3 + k;

  doc.grading.free_rank = 2;
  doc.grading.degrees = degree_table(dim);
  doc.grading.degrees[0] = corrected ? std::vector<i64>{1, 1}
                                     : std::vector<i64>{0, 0}; // E12
  doc.grading.degrees[1] = {1, 1};                             // E13
  doc.grading.degrees[2] = {0, 0};                             // E23
  for (u64 n = 0; n < k; ++n)
    doc.grading.degrees[3 + n] = {static_cast<i64>(n), static_cast<i64>(n)};

  if (!corrected) {
    doc.expectations.ring_valid = true;
    doc.expectations.grading_valid = false;
    doc.expectations.grading_witness = std::vector<i64>{0, 2, 1};
    doc.provenance = provenance_line("ex3.2.1", p, k) +
                     "; degree table kept exactly as first printed, known to "
                     "fail closure";
    return doc;
  }

  Cols F(dim, std::vector<u64>(dim, 0));
  Cols d(dim, std::vector<u64>(dim, 0));
  F[1][1] = 1;                       // E13 -> E13
  F[2][2] = 1;                       // E23 -> E23
  d[2][2] = 1;                       // E23 -> E23
  for (u64 n = 1; n < k; ++n) {      // X^n -> 2n X^(n-1)
    u64 c = (2 * n) % p;
    F[3 + n][3 + n - 1] = c;
    d[3 + n][3 + n - 1] = c;
  }
  doc.maps.emplace("F", std::move(F));
  doc.maps.emplace("d", std::move(d));

  // The boundary pair (X^a, X^b) with a + b = k forces the coefficient 2k on
  // X^(k-1); F is a (generalized) derivation exactly when p divides 2k. At
  // p = 2 the polynomial images vanish entirely and F becomes homogeneous.
  const bool gen = (2 * k) % p == 0;
  const bool fhom = p == 2;
  Expectations& e = doc.expectations;
  e.ring_valid = true;
  e.grading_valid = true;
  e.commutative = false;
  e.gr_prime = false;
  std::vector<u64> e23(dim, 0);
  e23[2] = 1;
  e.gr_prime_witness = std::pair(e23, e23);
  e.center_dim = 1 + k;
  MapExpectation fe;
  fe.derivation = gen;
  fe.homogeneous_map = fhom;
  fe.homogeneous_derivation = gen && fhom;
  fe.generalized_derivation = gen;
  fe.generalized_homogeneous = (gen && fhom) ? "yes" : "no";
  e.maps.emplace("F", fe);
  MapExpectation de;
  de.derivation = false;
  de.homogeneous_map = true;
  de.homogeneous_derivation = false;
  e.maps.emplace("d", de);
  if (gen) e.generalized_pairs.push_back({"F", "d"});
  doc.provenance = provenance_line("ex3.2.1-corrected", p, k) +
                   "; repaired degree table";
  return doc;
}

/// Four matrix units E12, E13, E22, E23 with a Z_4 degree table.
RingDocument build_ex322(bool corrected, const CatalogParams& params) {
  const u64 p = require_prime_param(params, 5);
  RingDocument doc;
  doc.ring.modulus = p;
  doc.ring.basis_names = {"E12", "E13", "E22", "E23"};
  doc.ring.structure_constants = {
      {0, 2, 0, 1}, // E12 E22 = E12
      {0, 3, 1, 1}, // E12 E23 = E13
      {2, 2, 2, 1}, // E22 E22 = E22
      {2, 3, 3, 1}, // E22 E23 = E23
  };
  doc.grading.torsion = {4};
  doc.grading.degrees = corrected
                            ? std::vector<std::vector<i64>>{{1}, {2}, {0}, {1}}
                            : std::vector<std::vector<i64>>{{1}, {2}, {0}, {3}};

  Expectations& e = doc.expectations;
  e.ring_valid = true;
  if (!corrected) {
    e.grading_valid = false;
    e.grading_witness = std::vector<i64>{0, 3, 1};
    doc.provenance = provenance_line("ex3.2.2", p, std::nullopt) +
                     "; degree table kept exactly as first printed, known to "
                     "fail closure";
    return doc;
  }

  Cols F(4, std::vector<u64>(4, 0));
  F[0][0] = 1; // E12 -> E12
  F[2][2] = 1; // E22 -> E22
  Cols d(4, std::vector<u64>(4, 0));
  d[1][1] = p - 1; // E13 -> -E13
  d[3][3] = p - 1; // E23 -> -E23
  doc.maps.emplace("F", std::move(F));
  doc.maps.emplace("d", std::move(d));

  e.grading_valid = true;
  e.commutative = false;
  e.gr_prime = false;
  e.gr_prime_witness = std::pair(std::vector<u64>{0, 0, 1, 0},
                                 std::vector<u64>{1, 0, 0, 0});
  e.center_dim = 1;
  MapExpectation fe;
  fe.derivation = false;
  fe.homogeneous_map = true;
  fe.homogeneous_derivation = false;
  fe.generalized_derivation = true;
  fe.generalized_homogeneous = "yes";
  e.maps.emplace("F", fe);
  MapExpectation de;
  de.derivation = true;
  de.homogeneous_map = true;
  de.homogeneous_derivation = true;
  e.maps.emplace("d", de);
  e.generalized_pairs.push_back({"F", "d"});
  doc.provenance = provenance_line("ex3.2.2-corrected", p, std::nullopt) +
                   "; repaired degree table";
  return doc;
}

/// Upper-triangular 2x2 slice span{E11, E12, E22} with the Z_4 grading
/// (0, 2, 0). Base ring of the ex3.4 pair and ex3.6.
RingDocument build_triangular_base(u64 p) {
  RingDocument doc;
  doc.ring.modulus = p;
  doc.ring.basis_names = {"E11", "E12", "E22"};
  doc.ring.structure_constants = {
      {0, 0, 0, 1}, // E11 E11 = E11
      {0, 1, 1, 1}, // E11 E12 = E12
      {1, 2, 1, 1}, // E12 E22 = E12
      {2, 2, 2, 1}, // E22 E22 = E22
  };
  doc.grading.torsion = {4};
  doc.grading.degrees = {{0}, {2}, {0}};
  Expectations& e = doc.expectations;
  e.ring_valid = true;
  e.grading_valid = true;
  e.commutative = false;
  e.gr_prime = false;
  e.gr_prime_witness =
      std::pair(std::vector<u64>{0, 0, 1}, std::vector<u64>{1, 0, 0});
  e.prime = false;
  e.prime_witness =
      std::pair(std::vector<u64>{0, 1, 0}, std::vector<u64>{1, 0, 0});
  e.center_dim = 1;
  return doc;
}

MapExpectation plain_homogeneous_derivation() {
  MapExpectation me;
  me.derivation = true;
  me.homogeneous_map = true;
  me.homogeneous_derivation = true;
  return me;
}

RingDocument build_ex341(const CatalogParams& params) {
  const u64 p = require_prime_param(params, 5);
  RingDocument doc = build_triangular_base(p);

  Cols F1(3, std::vector<u64>(3, 0));
  F1[1][1] = 1; // E12 -> E12
  F1[2][2] = 1; // E22 -> E22
  Cols d1(3, std::vector<u64>(3, 0));
  d1[1][1] = 1; // E12 -> E12
  doc.maps.emplace("F1", std::move(F1));
  doc.maps.emplace("d1", std::move(d1));

  // rF1 is x -> r * F1(x) for r = 2 E11 + 9 E12 + 2 E22; its images follow
  // from r E12 = 2 E12 and r E22 = 9 E12 + 2 E22.
  Cols rF1(3, std::vector<u64>(3, 0));
  rF1[1][1] = 2 % p;
  rF1[2][1] = 9 % p;
  rF1[2][2] = 2 % p;
  doc.maps.emplace("rF1", std::move(rF1));

  Expectations& e = doc.expectations;
  MapExpectation fe;
  fe.derivation = false;
  fe.homogeneous_map = true;
  fe.homogeneous_derivation = false;
  fe.generalized_derivation = true;
  fe.generalized_homogeneous = "yes";
  fe.assoc_space_dim = 0;
  fe.associated = "d1";
  e.maps.emplace("F1", fe);
  e.maps.emplace("d1", plain_homogeneous_derivation());
  MapExpectation re;
  // rF1(E22) = 9 E12 + 2 E22 is mixed unless one part vanishes (p = 3 kills
  // the 9, p = 2 the 2).
  re.homogeneous_map = (p == 2 || p == 3);
  e.maps.emplace("rF1", re);
  e.generalized_pairs.push_back({"F1", "d1"});

  MapImageExpectation mi;
  mi.map = "rF1";
  mi.input = {2 % p, 0, reduce_mod(-7, p)};
  mi.output = {0, reduce_mod(-63, p), reduce_mod(-14, p)};
  mi.homogeneous = (p == 2 || p == 3 || p == 7);
  e.map_images.push_back(std::move(mi));

  doc.provenance = provenance_line("ex3.4.1", p, std::nullopt);
  return doc;
}

RingDocument build_ex342(const CatalogParams& params) {
  const u64 p = require_prime_param(params, 5);
  RingDocument doc = build_triangular_base(p);

  Cols F(3, std::vector<u64>(3, 0));
  for (std::size_t j = 0; j < 3; ++j) F[j][j] = 3 % p; // x -> 3x
  doc.maps.emplace("F", std::move(F));
  doc.maps.emplace("d0", Cols(3, std::vector<u64>(3, 0)));

  Expectations& e = doc.expectations;
  MapExpectation fe;
  fe.derivation = (p == 3); // 3x collapses to the zero map at p = 3
  fe.homogeneous_map = true;
  fe.generalized_derivation = true;
  fe.generalized_homogeneous = "yes";
  fe.assoc_space_dim = 0;
  fe.associated = "d0";
  e.maps.emplace("F", fe);
  e.maps.emplace("d0", plain_homogeneous_derivation());
  e.generalized_pairs.push_back({"F", "d0"});
  doc.provenance = provenance_line("ex3.4.2", p, std::nullopt);
  return doc;
}

RingDocument build_ex36(const CatalogParams& params) {
  const u64 p = require_prime_param(params, 5);
  if (p % 4 != 1)
    throw PreconditionError("build_catalog_example: ex3.6 needs a square root "
                            "of -1, so the modulus must be 1 mod 4");
  u64 i = 0;
  for (u64 t = 2; t < p; ++t)
    if ((t * t) % p == p - 1) {
      i = t;
      break;
    }
  RingDocument doc = build_triangular_base(p);

  Cols F(3, std::vector<u64>(3, 0));
  F[1][1] = i; // E12 -> i E12
  F[2][2] = 1; // E22 -> E22
  Cols d(3, std::vector<u64>(3, 0));
  d[1][1] = i; // E12 -> i E12
  doc.maps.emplace("F", std::move(F));
  doc.maps.emplace("d", std::move(d));

  Expectations& e = doc.expectations;
  MapExpectation fe;
  fe.derivation = false;
  fe.homogeneous_map = true;
  fe.homogeneous_derivation = false;
  fe.generalized_derivation = true;
  fe.generalized_homogeneous = "yes";
  fe.assoc_space_dim = 0;
  fe.associated = "d";
  e.maps.emplace("F", fe);
  e.maps.emplace("d", plain_homogeneous_derivation());
  e.generalized_pairs.push_back({"F", "d"});
  doc.provenance = provenance_line("ex3.6", p, std::nullopt);
  return doc;
}

RingSpec m2_spec(u64 p) {
  RingSpec spec;
  spec.modulus = p;
  spec.basis_names = {"E11", "E12", "E21", "E22"};
  spec.structure_constants = {
      {0, 0, 0, 1}, {0, 1, 1, 1}, {1, 2, 0, 1}, {1, 3, 1, 1},
      {2, 0, 2, 1}, {2, 1, 3, 1}, {3, 2, 2, 1}, {3, 3, 3, 1},
  };
  return spec;
}

RingDocument build_ex38(bool corrected, const CatalogParams& params) {
  const u64 p = require_prime_param(params, 5);
  RingDocument doc;
  doc.ring = m2_spec(p);
  if (corrected) {
    doc.grading.torsion = {6};
  } else {
    doc.grading.free_rank = 1;
  }
  doc.grading.degrees = {{0}, {3}, {3}, {0}};

  Expectations& e = doc.expectations;
  e.ring_valid = true;
  if (!corrected) {
    e.grading_valid = false;
    e.grading_witness = std::vector<i64>{1, 2, 0};
    doc.provenance = provenance_line("ex3.8", p, std::nullopt) +
                     "; integer degree table kept exactly as first printed, "
                     "known to fail closure";
    return doc;
  }

  // x = E11 + 2 E12 + 3 E21 + E22; dx = [x, .]; F(y) = 2xy - yx, so that
  // F(yz) = F(y)z + y dx(z) holds identically.
  Ring ring = Ring::make(doc.ring);
  Element x = ring.element({1, 2, 3, 1});
  AdditiveMap dx = inner_derivation(x);
  std::vector<std::vector<u64>> fcols;
  for (std::size_t j = 0; j < 4; ++j) {
    Element ej = ring.basis_element(j);
    fcols.push_back(((x * ej).scaled(2) - ej * x).coords());
  }
  AdditiveMap F(ring, fcols);
  doc.maps.emplace("dx", dx.columns());
  doc.maps.emplace("F", F.columns());

  e.grading_valid = true;
  e.commutative = false;
  e.gr_prime = true;
  e.prime = true;
  e.center_dim = 1;
  e.maps.emplace("dx", plain_homogeneous_derivation());
  MapExpectation fe;
  fe.derivation = false;
  fe.homogeneous_map = false;
  fe.homogeneous_derivation = false;
  fe.generalized_derivation = true;
  fe.generalized_homogeneous = "no";
  fe.assoc_space_dim = 0;
  fe.associated = "dx";
  e.maps.emplace("F", fe);
  e.generalized_pairs.push_back({"F", "dx"});

  MapImageExpectation mi;
  mi.map = "F";
  mi.input = {2 % p, 0, 0, 1};
  mi.output = {2 % p, 0, 9 % p, 1};
  mi.homogeneous = (p == 3); // the E21 part 9 E21 vanishes at p = 3
  e.map_images.push_back(std::move(mi));
  doc.provenance = provenance_line("ex3.8-corrected", p, std::nullopt) +
                   "; degree table moved from Z to Z_6";
  return doc;
}

RingDocument build_ex43(const CatalogParams& params) {
  const u64 p = require_prime_param(params, 5);
  const u64 k = require_truncation(params, 8);
  RingDocument doc;
  doc.ring = truncated_poly_spec(p, k);
  doc.ring.basis_names.insert(doc.ring.basis_names.begin(), {"E11", "E12"});
  for (auto& t : doc.ring.structure_constants) {
    t.i += 2;
    t.j += 2;
    t.k += 2;
  }
  doc.ring.structure_constants.push_back({0, 0, 0, 1}); // E11 E11 = E11
  doc.ring.structure_constants.push_back({0, 1, 1, 1}); // E11 E12 = E12
  sort_triples(doc.ring);
  const std::size_t dim = 2 + k;

  doc.grading.free_rank = 2;
  doc.grading.degrees = degree_table(dim);
  doc.grading.degrees[0] = {0, 0}; // E11
  doc.grading.degrees[1] = {1, 1}; // E12
  for (u64 n = 0; n < k; ++n)
    doc.grading.degrees[2 + n] = {static_cast<i64>(n), static_cast<i64>(n)};

  Cols F1(dim, std::vector<u64>(dim, 0));
  F1[0][0] = 1;                                      // E11 -> E11
  for (u64 n = 1; n < k; ++n) F1[2 + n][2 + n - 1] = n % p; // X^n -> n X^(n-1)
  Cols F2(dim, std::vector<u64>(dim, 0));
  F2[1][1] = 1; // E12 -> E12
  Cols d1(dim, std::vector<u64>(dim, 0));
  d1[1][1] = p - 1; // E12 -> -E12
  for (u64 n = 1; n < k; ++n) d1[2 + n][2 + n - 1] = n % p;
  doc.maps.emplace("F1", std::move(F1));
  doc.maps.emplace("F2", Cols(F2));
  doc.maps.emplace("d1", std::move(d1));
  doc.maps.emplace("d2", std::move(F2));

  IdealSpec I;
  I.side = Side::two_sided;
  std::vector<u64> e12(dim, 0), x3(dim, 0);
  e12[1] = 1;
  x3[2 + 3] = 1;
  I.generators = {e12, x3};
  doc.ideals.emplace("I", std::move(I));

  // Differentiating X^a X^b across the truncation boundary a + b = k leaves
  // the coefficient k on X^(k-1), so the derivative-style maps satisfy their
  // laws exactly when p divides k.
  const bool boundary = k % p == 0;
  Expectations& e = doc.expectations;
  e.ring_valid = true;
  e.grading_valid = true;
  e.commutative = false;
  e.gr_prime = false;
  std::vector<u64> e11(dim, 0), one(dim, 0);
  e11[0] = 1;
  one[2] = 1;
  e.gr_prime_witness = std::pair(e11, one);
  e.center_dim = k;
  e.ideals.emplace("I", IdealExpectation{true, true});

  MapExpectation f1e;
  f1e.derivation = false;
  f1e.homogeneous_map = true;
  f1e.homogeneous_derivation = false;
  f1e.generalized_derivation = boundary;
  f1e.generalized_homogeneous = "no";
  e.maps.emplace("F1", f1e);
  MapExpectation f2e = plain_homogeneous_derivation();
  f2e.generalized_derivation = true;
  f2e.generalized_homogeneous = "yes";
  f2e.assoc_space_dim = 0;
  f2e.associated = "d2";
  e.maps.emplace("F2", f2e);
  MapExpectation d1e;
  d1e.derivation = boundary;
  d1e.homogeneous_map = false;
  d1e.homogeneous_derivation = false;
  e.maps.emplace("d1", d1e);
  e.maps.emplace("d2", plain_homogeneous_derivation());
  e.generalized_pairs.push_back({"F2", "d2"});
  if (boundary) e.generalized_pairs.push_back({"F1", "d1"});

  for (Sign sign : {Sign::minus, Sign::plus}) {
    ConditionExpectation ce;
    ce.kind = {ConditionTag::f_xy, sign};
    ce.f1 = "F1";
    ce.ideal = "I";
    ce.holds = true;
    e.conditions.push_back(ce);
  }
  for (Sign sign : {Sign::minus, Sign::plus}) {
    ConditionExpectation ce;
    ce.kind = {ConditionTag::f1x_f2y, sign};
    ce.f1 = "F1";
    ce.f2 = "F2";
    ce.ideal = "I";
    ce.holds = true;
    e.conditions.push_back(ce);
  }
  doc.provenance = provenance_line("ex4.3", p, k);
  return doc;
}

RingDocument build_zp5_c2() {
  RingDocument doc;
  doc.ring.modulus = 5;
  doc.ring.basis_names = {"e", "g"};
  doc.ring.structure_constants = {
      {0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}};
  doc.grading.torsion = {2};
  doc.grading.degrees = {{0}, {1}};
  Expectations& e = doc.expectations;
  e.ring_valid = true;
  e.grading_valid = true;
  e.commutative = true;
  e.gr_prime = true;
  e.prime = false;
  e.prime_witness =
      std::pair(std::vector<u64>{1, 1}, std::vector<u64>{4, 1});
  e.center_dim = 2;
  doc.provenance = "gradering example catalog: id zp5-c2; group algebra "
                   "Z5[Z2], graded over Z2 by the group itself";
  return doc;
}

RingDocument build_m2z5_sum() {
  RingDocument doc;
  doc.ring = m2_spec(5);
  doc.grading.torsion = {2};
  doc.grading.degrees = {{0}, {1}, {1}, {0}};

  Ring ring = Ring::make(doc.ring);
  AdditiveMap dA = inner_derivation(ring.basis_element(0)); // [E11, .]
  AdditiveMap dB = inner_derivation(ring.basis_element(1)); // [E12, .]
  AdditiveMap S = dA + dB;
  doc.maps.emplace("S", S.columns());
  doc.maps.emplace("dA", dA.columns());
  doc.maps.emplace("dB", dB.columns());

  Expectations& e = doc.expectations;
  e.ring_valid = true;
  e.grading_valid = true;
  e.commutative = false;
  e.gr_prime = true;
  e.prime = true;
  e.center_dim = 1;
  e.maps.emplace("dA", plain_homogeneous_derivation());
  e.maps.emplace("dB", plain_homogeneous_derivation());
  MapExpectation se;
  se.derivation = true;
  se.homogeneous_map = false;
  se.homogeneous_derivation = false;
  e.maps.emplace("S", se);
  doc.provenance =
      "gradering example catalog: id m2z5-sum; stored witness that the sum "
      "of two homogeneous derivations can fail to be homogeneous";
  return doc;
}

} // namespace

std::vector<std::string> catalog_ids() {
  return {"ex3.2.1", "ex3.2.1-corrected", "ex3.2.2", "ex3.2.2-corrected",
          "ex3.4.1", "ex3.4.2",           "ex3.6",   "ex3.8",
          "ex3.8-corrected", "ex4.3",     "zp5-c2",  "m2z5-sum"};
}

bool catalog_has(const std::string& id) {
  auto ids = catalog_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

RingDocument build_catalog_example(const std::string& id,
                                   const CatalogParams& params) {
  if (id == "ex3.2.1") return build_ex321(false, params);
  if (id == "ex3.2.1-corrected") return build_ex321(true, params);
  if (id == "ex3.2.2") return build_ex322(false, params);
  if (id == "ex3.2.2-corrected") return build_ex322(true, params);
  if (id == "ex3.4.1") return build_ex341(params);
  if (id == "ex3.4.2") return build_ex342(params);
  if (id == "ex3.6") return build_ex36(params);
  if (id == "ex3.8") return build_ex38(false, params);
  if (id == "ex3.8-corrected") return build_ex38(true, params);
  if (id == "ex4.3") return build_ex43(params);
  if (id == "zp5-c2") return build_zp5_c2();
  if (id == "m2z5-sum") return build_m2z5_sum();
  throw SpecError("example", "unknown example id '" + id + "'");
}

namespace {

void push_instance(std::vector<Instance>& out, std::set<std::string>& seen,
                   std::string name, std::string family, const RingSpec& spec,
                   const DegreeGroup& group, std::vector<Degree> degrees) {
  Ring ring = Ring::make(spec);
  Grading grading(group, std::move(degrees));
  if (!validate_ring(ring).pass || !validate_grading(ring, grading).pass)
    return;

  std::ostringstream key;
  key << spec.modulus << '|';
  for (const auto& t : spec.structure_constants)
    key << t.i << ',' << t.j << ',' << t.k << ',' << t.c << ';';
  key << '|' << group.free_rank << '|';
  for (u64 t : group.torsion) key << t << ',';
  key << '|';
  for (std::size_t i = 0; i < grading.dim(); ++i) {
    for (i64 c : grading.degree_of(i).coords) key << c << ',';
    key << ';';
  }
  if (!seen.insert(key.str()).second) return;

  out.push_back(Instance{std::move(name), std::move(family), ring,
                         certify(ring, grading)});
}

void enumerate_matrix_pattern(std::vector<Instance>& out,
                              std::set<std::string>& seen, u64 p, u32 max_n) {
  for (u32 n = 1; n <= max_n; ++n) {
    const u32 cells = n * n;
    for (u32 mask = 1; mask < (1u << cells); ++mask) {
      auto in = [&](u32 i, u32 j) { return (mask >> (i * n + j)) & 1u; };
      bool closed = true;
      for (u32 i = 0; i < n && closed; ++i)
        for (u32 j = 0; j < n && closed; ++j)
          for (u32 k = 0; k < n && closed; ++k)
            if (in(i, j) && in(j, k) && !in(i, k)) closed = false;
      if (!closed) continue;

      std::vector<std::pair<u32, u32>> pos;
      for (u32 i = 0; i < n; ++i)
        for (u32 j = 0; j < n; ++j)
          if (in(i, j)) pos.emplace_back(i, j);

      RingSpec spec;
      spec.modulus = p;
      std::string tag;
      for (const auto& [i, j] : pos) {
        spec.basis_names.push_back("E" + std::to_string(i + 1) +
                                   std::to_string(j + 1));
        if (!tag.empty()) tag += '.';
        tag += std::to_string(i + 1) + std::to_string(j + 1);
      }
      auto index_of = [&](u32 i, u32 j) {
        return static_cast<u32>(
            std::find(pos.begin(), pos.end(), std::pair(i, j)) - pos.begin());
      };
      for (u32 a = 0; a < pos.size(); ++a)
        for (u32 b = 0; b < pos.size(); ++b)
          if (pos[a].second == pos[b].first)
            spec.structure_constants.push_back(
                {a, b, index_of(pos[a].first, pos[b].second), 1});
      sort_triples(spec);

      // Units of a full diagonal sum as identity, when the pattern has one.
      bool full_diag = true;
      for (u32 i = 0; i < n; ++i) full_diag = full_diag && in(i, i);
      if (full_diag) {
        std::vector<u64> one(pos.size(), 0);
        for (u32 i = 0; i < n; ++i) one[index_of(i, i)] = 1;
        spec.unity = one;
      }

      DegreeGroup group;
      std::vector<Degree> degrees;
      if (n >= 2) {
        group.torsion = {n};
        for (const auto& [i, j] : pos)
          degrees.push_back(Degree{{static_cast<i64>((j + n - i) % n)}});
      } else {
        degrees.assign(pos.size(), Degree{});
      }
      push_instance(out, seen,
                    "matrix-pattern-p" + std::to_string(p) + "-n" +
                        std::to_string(n) + "-" + tag,
                    "matrix-pattern", spec, group, std::move(degrees));
    }
  }
}

void enumerate_group_algebra(std::vector<Instance>& out,
                             std::set<std::string>& seen, u64 p,
                             u64 max_order) {
  struct Group {
    std::string tag;
    std::vector<u64> orders; // cyclic factors
  };
  const std::vector<Group> groups = {{"c1", {}},
                                     {"c2", {2}},
                                     {"c3", {3}},
                                     {"c4", {4}},
                                     {"c2xc2", {2, 2}}};
  for (const auto& grp : groups) {
    u64 order = 1;
    for (u64 o : grp.orders) order *= o;
    if (order > max_order) continue;

    // Elements in counter order over the exponent vectors, first factor
    // fastest; names e, g, g2, ... for one factor and e, a, b, ab for two.
    std::vector<std::vector<u64>> elems;
    std::vector<u64> cur(grp.orders.size(), 0);
    for (u64 c = 0; c < order; ++c) {
      elems.push_back(cur);
      for (std::size_t f = 0; f < cur.size(); ++f) {
        if (++cur[f] < grp.orders[f]) break;
        cur[f] = 0;
      }
    }
    auto name_of = [&](const std::vector<u64>& v) -> std::string {
      bool zero = std::all_of(v.begin(), v.end(), [](u64 x) { return x == 0; });
      if (zero) return "e";
      if (v.size() == 1) return v[0] == 1 ? "g" : "g" + std::to_string(v[0]);
      std::string s;
      if (v[0]) s += "a";
      if (v[1]) s += "b";
      return s;
    };
    auto index_of = [&](const std::vector<u64>& v) {
      return static_cast<u32>(std::find(elems.begin(), elems.end(), v) -
                              elems.begin());
    };

    RingSpec spec;
    spec.modulus = p;
    for (const auto& v : elems) spec.basis_names.push_back(name_of(v));
    for (u32 a = 0; a < elems.size(); ++a)
      for (u32 b = 0; b < elems.size(); ++b) {
        std::vector<u64> sum(grp.orders.size());
        for (std::size_t f = 0; f < sum.size(); ++f)
          sum[f] = (elems[a][f] + elems[b][f]) % grp.orders[f];
        spec.structure_constants.push_back({a, b, index_of(sum), 1});
      }
    sort_triples(spec);
    std::vector<u64> one(elems.size(), 0);
    one[0] = 1;
    spec.unity = one;

    DegreeGroup group;
    group.torsion = grp.orders;
    std::vector<Degree> degrees;
    for (const auto& v : elems) {
      std::vector<i64> coords(v.begin(), v.end());
      degrees.push_back(Degree{coords});
    }
    push_instance(out, seen,
                  "group-algebra-p" + std::to_string(p) + "-" + grp.tag,
                  "group-algebra", spec, group, std::move(degrees));
  }
}

void enumerate_free_small(std::vector<Instance>& out,
                          std::set<std::string>& seen) {
  // Dimension 1 over Z_2: x*x = c*x.
  for (u64 c = 0; c <= 1; ++c) {
    RingSpec spec;
    spec.modulus = 2;
    spec.basis_names = {"x"};
    if (c) spec.structure_constants.push_back({0, 0, 0, 1});
    for (i64 d = 0; d <= 1; ++d) {
      DegreeGroup group;
      group.torsion = {2};
      push_instance(out, seen,
                    "free-small-d1-t" + std::to_string(c) + "-g" +
                        std::to_string(d),
                    "free-small", spec, group, {Degree{{d}}});
    }
  }
  // Dimension 2 over Z_2: every associative table, bit (4i + 2j + k).
  for (u32 mask = 0; mask < 256; ++mask) {
    RingSpec spec;
    spec.modulus = 2;
    spec.basis_names = {"x", "y"};
    for (u32 i = 0; i < 2; ++i)
      for (u32 j = 0; j < 2; ++j)
        for (u32 k = 0; k < 2; ++k)
          if ((mask >> (4 * i + 2 * j + k)) & 1u)
            spec.structure_constants.push_back({i, j, k, 1});
    for (i64 d0 = 0; d0 <= 1; ++d0)
      for (i64 d1 = 0; d1 <= 1; ++d1) {
        DegreeGroup group;
        group.torsion = {2};
        push_instance(out, seen,
                      "free-small-d2-t" + std::to_string(mask) + "-g" +
                          std::to_string(d0) + std::to_string(d1),
                      "free-small", spec, group, {Degree{{d0}}, Degree{{d1}}});
      }
  }
}

} // namespace

std::vector<std::string> known_families() {
  return {"matrix-pattern", "group-algebra", "free-small"};
}

std::vector<Instance> enumerate_instances(const FamilyOptions& opts) {
  std::vector<std::string> families =
      opts.families.empty() ? known_families() : opts.families;
  for (const auto& f : families) {
    auto known = known_families();
    if (std::find(known.begin(), known.end(), f) == known.end())
      throw SpecError("families", "unknown family '" + f + "'");
  }
  std::vector<u64> moduli =
      opts.moduli.empty() ? std::vector<u64>{2, 3, 5} : opts.moduli;
  for (u64 m : moduli)
    if (!is_prime(m))
      throw PreconditionError("enumerate_instances: modulus " +
                              std::to_string(m) + " is not prime");
  if (opts.max_n < 1 || opts.max_n > 3)
    throw PreconditionError("enumerate_instances: pattern size must be 1..3");
  if (opts.max_group_order < 1 || opts.max_group_order > 4)
    throw PreconditionError(
        "enumerate_instances: group order bound must be 1..4");

  std::vector<Instance> out;
  std::set<std::string> seen;
  for (const auto& family : families) {
    if (family == "matrix-pattern") {
      for (u64 p : moduli) enumerate_matrix_pattern(out, seen, p, opts.max_n);
    } else if (family == "group-algebra") {
      for (u64 p : moduli)
        enumerate_group_algebra(out, seen, p, opts.max_group_order);
    } else {
      enumerate_free_small(out, seen); // pinned to Z_2 by construction
    }
  }
  return out;
}

} // namespace gradering
