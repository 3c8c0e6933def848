#include "gradering/lab.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <thread>

#include "gradering/linalg.hpp"

namespace gradering {

std::string theorem_token(TheoremId id) {
  return id == TheoremId::single_map ? "4.1" : "4.2";
}

TheoremId theorem_from_token(const std::string& token,
                             const std::string& field_path) {
  if (token == "4.1") return TheoremId::single_map;
  if (token == "4.2") return TheoremId::two_map;
  throw SpecError(field_path, "unknown theorem '" + token + "'; known: 4.1, 4.2");
}

std::string problem_token(ProblemId id) {
  switch (id) {
    case ProblemId::bracket_self: return "pr1.i";
    case ProblemId::bracket_pair: return "pr1.ii";
    case ProblemId::lie_pair: return "pr1.iii";
    case ProblemId::jordan_pair: return "pr2";
  }
  return "pr1.i";
}

ProblemId problem_from_token(const std::string& token,
                             const std::string& field_path) {
  if (token == "pr1.i") return ProblemId::bracket_self;
  if (token == "pr1.ii") return ProblemId::bracket_pair;
  if (token == "pr1.iii") return ProblemId::lie_pair;
  if (token == "pr2") return ProblemId::jordan_pair;
  throw SpecError(field_path,
                  "unknown problem '" + token +
                      "'; known: pr1.i, pr1.ii, pr1.iii, pr2");
}

ConditionTag problem_condition_tag(ProblemId id) {
  switch (id) {
    case ProblemId::bracket_self: return ConditionTag::bracket_f1x_x;
    case ProblemId::bracket_pair: return ConditionTag::bracket_f1x_f2y_xy;
    case ProblemId::lie_pair: return ConditionTag::f1x_f2y_lie;
    case ProblemId::jordan_pair: return ConditionTag::f1x_f2y_jordan;
  }
  return ConditionTag::bracket_f1x_x;
}

namespace {

/// Instance-slot parallelism: worker threads pull indices off an atomic
/// counter, results land in pre-sized slots, so output never depends on the
/// thread count. The first exception wins and is rethrown on the caller.
template <typename Fn>
void parallel_for(std::size_t n, u32 jobs, Fn&& fn) {
  jobs = std::clamp<u32>(jobs, 1, 64);
  if (jobs == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&] {
    for (std::size_t i = next.fetch_add(1); i < n && !failed.load();
         i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  for (u32 t = 1; t < jobs; ++t) threads.emplace_back(body);
  body();
  for (auto& th : threads) th.join();
  if (error) std::rethrow_exception(error);
}

MapPairData pair_data(const AdditiveMap& f, const AdditiveMap& d) {
  return MapPairData{f.columns(), d.columns()};
}

std::vector<std::vector<u64>> span_coords(const IdealHandle& I) {
  std::vector<std::vector<u64>> out;
  for (const Element& e : I.spanning_set()) out.push_back(e.coords());
  return out;
}

} // namespace

MapPool build_map_pool(const Instance& inst) {
  const Ring& r = inst.ring;
  const u64 p = r.modulus();
  const std::size_t n = r.dim();
  MapPool pool;

  const bool restricted = n * n > 9;
  std::vector<linalg::Row> rows; // basis of the restricted span
  std::size_t knobs = n * n;
  if (restricted) {
    linalg::Rref rref(p, n * n);
    for (std::size_t j = 0; j < n; ++j)
      rref.add(inner_derivation(r.basis_element(j)).flat());
    rows = rref.basis();
    knobs = rows.size(); // may be 0 on commutative rings
    pool.stats.restricted = true;
  }
  u64 total = 1;
  for (std::size_t i = 0; i < knobs; ++i) total *= p;
  pool.stats.maps_scanned = total;

  std::vector<u64> counter(knobs, 0);
  std::vector<u64> flat(n * n, 0);
  for (u64 c = 0; c < total; ++c) {
    if (!restricted) {
      flat = counter;
    } else {
      std::fill(flat.begin(), flat.end(), 0);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (counter[i] == 0) continue;
        for (std::size_t u = 0; u < flat.size(); ++u)
          flat[u] = (flat[u] + counter[i] * rows[i][u]) % p;
      }
    }
    AdditiveMap f = AdditiveMap::from_flat(r, flat);
    if (is_homogeneous_map(f, inst.grading).pass) {
      pool.homogeneous.push_back(f);
      if (!f.is_zero() && is_derivation(f).pass)
        pool.derivations.push_back(std::move(f));
    }
    for (std::size_t i = 0; i < knobs; ++i) {
      if (++counter[i] < p) break;
      counter[i] = 0;
    }
  }
  pool.stats.homogeneous_maps = pool.homogeneous.size();
  pool.stats.derivations = pool.derivations.size();
  return pool;
}

std::vector<std::pair<u32, u32>> qualifying_pairs(const MapPool& pool) {
  std::vector<std::pair<u32, u32>> out;
  for (u32 fi = 0; fi < pool.homogeneous.size(); ++fi)
    for (u32 di = 0; di < pool.derivations.size(); ++di)
      if (is_generalized_pair(pool.homogeneous[fi], pool.derivations[di]).pass)
        out.emplace_back(fi, di);
  return out;
}

std::vector<std::pair<std::string, IdealHandle>>
candidate_ideals(const Ring& r, const Grading& g, u64 budget) {
  std::vector<std::pair<std::string, IdealHandle>> out;
  auto push = [&](std::string name, IdealHandle I) {
    for (const auto& [existing_name, existing] : out)
      if (existing.same(I)) return;
    out.emplace_back(std::move(name), std::move(I));
  };
  HomogeneousStream stream(r, g, budget);
  while (auto e = stream.next()) {
    if (e->is_zero()) continue;
    std::array<Element, 1> gen{*e};
    push("I(" + e->str() + ")", ideal_generate(gen, Side::two_sided, r));
  }
  push("R", full_ring_ideal(r));
  return out;
}

SweepReport sweep_theorem(const SweepOptions& opts) {
  SweepReport report;
  report.theorem = opts.theorem;
  report.options = opts.families;
  report.budget = opts.budget;

  const std::vector<Instance> instances = enumerate_instances(opts.families);
  report.instances.resize(instances.size());
  std::vector<std::vector<SweepAnomaly>> anomaly_slots(instances.size());

  parallel_for(instances.size(), opts.jobs, [&](std::size_t idx) {
    const Instance& inst = instances[idx];
    SweepInstanceResult res;
    res.instance = inst.name;
    res.family = inst.family;
    res.modulus = inst.ring.modulus();
    res.dim = static_cast<u32>(inst.ring.dim());
    res.gr_prime = is_gr_prime(inst.ring, inst.grading, opts.budget).prime;
    res.commutative = is_commutative(inst.ring).pass;

    MapPool pool = build_map_pool(inst);
    res.pool = pool.stats;
    const auto pairs = qualifying_pairs(pool);
    res.qualifying_pairs = pairs.size();

    // A commutative conclusion or a failed gr-prime leg forces consistency
    // for every case, so the condition checks carry no information.
    if (!res.gr_prime || res.commutative) {
      res.checks_skipped = true;
      report.instances[idx] = std::move(res);
      return;
    }

    const auto ideals = candidate_ideals(inst.ring, inst.grading, opts.budget);
    res.ideals = ideals.size();

    auto record = [&](const std::pair<std::string, IdealHandle>& ideal,
                      const std::pair<u32, u32>& p1,
                      const std::pair<u32, u32>* p2, Sign sign) {
      const AdditiveMap& F1 = pool.homogeneous[p1.first];
      const AdditiveMap& d1 = pool.derivations[p1.second];
      TheoremVerdict v =
          p2 ? verify_two_map_theorem(inst.ring, inst.grading, ideal.second,
                                      F1, d1, pool.homogeneous[p2->first],
                                      pool.derivations[p2->second], sign,
                                      opts.budget)
             : verify_single_map_theorem(inst.ring, inst.grading, ideal.second,
                                         F1, d1, sign, opts.budget);
      ++res.cases;
      if (v.consistent) return;
      ++res.inconsistencies;
      SweepAnomaly a;
      a.instance = inst.name;
      a.ideal = ideal.first;
      a.ideal_generators = span_coords(ideal.second);
      a.pairs.push_back(
          pair_data(pool.homogeneous[p1.first], pool.derivations[p1.second]));
      if (p2)
        a.pairs.push_back(pair_data(pool.homogeneous[p2->first],
                                    pool.derivations[p2->second]));
      a.sign = sign;
      a.summary = v.summary();
      anomaly_slots[idx].push_back(std::move(a));
    };

    for (const auto& ideal : ideals) {
      for (const auto& p1 : pairs) {
        if (opts.theorem == TheoremId::single_map) {
          for (Sign sign : {Sign::minus, Sign::plus}) record(ideal, p1, nullptr, sign);
        } else {
          for (const auto& p2 : pairs)
            for (Sign sign : {Sign::minus, Sign::plus}) record(ideal, p1, &p2, sign);
        }
      }
    }
    report.instances[idx] = std::move(res);
  });

  for (std::size_t idx = 0; idx < instances.size(); ++idx) {
    report.total_cases += report.instances[idx].cases;
    report.total_inconsistencies += report.instances[idx].inconsistencies;
    for (auto& a : anomaly_slots[idx]) report.anomalies.push_back(std::move(a));
  }
  return report;
}

SearchReport search_problem(const SearchOptions& opts) {
  SearchReport report;
  report.problem = opts.problem;
  report.options = opts.families;
  report.budget = opts.budget;
  const ConditionTag tag = problem_condition_tag(opts.problem);
  const bool two_maps = condition_uses_second_map(tag);
  const bool signed_shape = condition_has_sign(tag);

  const std::vector<Instance> instances = enumerate_instances(opts.families);
  report.instances.resize(instances.size());
  std::vector<std::vector<Survivor>> survivor_slots(instances.size());

  parallel_for(instances.size(), opts.jobs, [&](std::size_t idx) {
    const Instance& inst = instances[idx];
    SearchInstanceResult res;
    res.instance = inst.name;
    res.family = inst.family;
    res.modulus = inst.ring.modulus();
    res.dim = static_cast<u32>(inst.ring.dim());

    if (opts.problem == ProblemId::jordan_pair && res.modulus == 2) {
      res.skipped = true;
      res.skip_reason = "modulus 2 excluded: the Jordan shape needs 2 invertible";
      report.instances[idx] = std::move(res);
      return;
    }
    if (!is_gr_prime(inst.ring, inst.grading, opts.budget).prime) {
      res.skipped = true;
      res.skip_reason = "not gr-prime";
      report.instances[idx] = std::move(res);
      return;
    }
    const bool commutative = is_commutative(inst.ring).pass;

    MapPool pool = build_map_pool(inst);
    res.pool = pool.stats;

    // Unlike the theorems, the open problems say nothing that forces the
    // associated derivation to be nonzero, so the zero map joins the pool;
    // pairs surviving through d = 0 are exactly the trivial escapes.
    std::vector<AdditiveMap> ds = pool.derivations;
    ds.push_back(AdditiveMap::zero(inst.ring));
    std::vector<std::pair<u32, u32>> pairs;
    for (u32 fi = 0; fi < pool.homogeneous.size(); ++fi)
      for (u32 di = 0; di < ds.size(); ++di)
        if (is_generalized_pair(pool.homogeneous[fi], ds[di]).pass)
          pairs.emplace_back(fi, di);
    res.qualifying_pairs = pairs.size();

    const auto ideals = candidate_ideals(inst.ring, inst.grading, opts.budget);
    res.ideals = ideals.size();

    auto record = [&](const std::pair<std::string, IdealHandle>& ideal,
                      const std::pair<u32, u32>& p1,
                      const std::pair<u32, u32>* p2,
                      std::optional<Sign> sign) {
      ConditionKind kind{tag, sign.value_or(Sign::minus)};
      const AdditiveMap& F1 = pool.homogeneous[p1.first];
      const AdditiveMap* F2 = p2 ? &pool.homogeneous[p2->first] : nullptr;
      ConditionOutcome oc =
          check_condition(kind, F1, F2, ideal.second, inst.grading, opts.budget);
      ++res.cases;
      if (!oc.verdict.pass) return;
      ++res.satisfying;
      if (commutative) return;
      ++res.survivors;
      Survivor s;
      s.instance = inst.name;
      s.family = inst.family;
      s.modulus = res.modulus;
      s.ideal = ideal.first;
      s.ideal_generators = span_coords(ideal.second);
      s.pairs.push_back(pair_data(F1, ds[p1.second]));
      if (p2) s.pairs.push_back(pair_data(*F2, ds[p2->second]));
      s.sign = sign;
      s.trivial = ds[p1.second].is_zero() && (!p2 || ds[p2->second].is_zero());
      survivor_slots[idx].push_back(std::move(s));
    };

    std::vector<std::optional<Sign>> signs;
    if (signed_shape) {
      signs = {Sign::minus, Sign::plus};
    } else {
      signs = {std::nullopt};
    }
    for (const auto& ideal : ideals) {
      for (const auto& p1 : pairs) {
        if (!two_maps) {
          for (auto sign : signs) record(ideal, p1, nullptr, sign);
        } else {
          for (const auto& p2 : pairs)
            for (auto sign : signs) record(ideal, p1, &p2, sign);
        }
      }
    }
    report.instances[idx] = std::move(res);
  });

  for (std::size_t idx = 0; idx < instances.size(); ++idx) {
    report.total_cases += report.instances[idx].cases;
    report.total_satisfying += report.instances[idx].satisfying;
    report.total_survivors += report.instances[idx].survivors;
    for (auto& s : survivor_slots[idx])
      report.survivors.push_back(std::move(s));
  }
  return report;
}

} // namespace gradering
