#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gradering/corpus.hpp"
#include "gradering/theorems.hpp"

namespace gradering {

/// Commutativity criteria driven by sweeps. Catalog tokens 4.1 / 4.2.
enum class TheoremId { single_map, two_map };
std::string theorem_token(TheoremId id);
TheoremId theorem_from_token(const std::string& token,
                             const std::string& field_path);

/// Candidate maps for one generated instance. Small rings (dim^2 <= 9) get
/// the complete space of additive maps; larger ones fall back to the span of
/// the inner derivations by basis elements (basis vectors are homogeneous,
/// so that span carries every inner derivation by a homogeneous element).
struct PoolStats {
  bool restricted = false;
  u64 maps_scanned = 0;
  u64 homogeneous_maps = 0;
  u64 derivations = 0; // nonzero homogeneous derivations
};

struct MapPool {
  PoolStats stats;
  std::vector<AdditiveMap> homogeneous; // F candidates; zero map included
  std::vector<AdditiveMap> derivations; // d candidates; zero excluded
};
MapPool build_map_pool(const Instance& inst);

/// (index into pool.homogeneous, index into pool.derivations) for every
/// generalized pair, in pool order.
std::vector<std::pair<u32, u32>> qualifying_pairs(const MapPool& pool);

/// Ideals a sweep feeds to the criteria: the principal two-sided ideal of
/// every nonzero homogeneous element (deduplicated by span) plus the full
/// ring, each with a printable name.
std::vector<std::pair<std::string, IdealHandle>>
candidate_ideals(const Ring& r, const Grading& g, u64 budget = default_budget());

struct SweepOptions {
  FamilyOptions families;
  TheoremId theorem = TheoremId::single_map;
  u32 jobs = 1;
  u64 budget = default_budget();
};

struct MapPairData {
  std::vector<std::vector<u64>> f; // image columns
  std::vector<std::vector<u64>> d;
};

/// Reproduction data for a case whose implication failed.
struct SweepAnomaly {
  std::string instance;
  std::string ideal;
  std::vector<std::vector<u64>> ideal_generators;
  std::vector<MapPairData> pairs; // one entry for 4.1, two for 4.2
  Sign sign = Sign::minus;
  std::string summary;
};

struct SweepInstanceResult {
  std::string instance;
  std::string family;
  u64 modulus = 0;
  u32 dim = 0;
  bool gr_prime = false;
  bool commutative = false;
  /// Consistency is forced whenever the ring is commutative (conclusion
  /// true) or not gr-prime (hypotheses false); such instances skip the
  /// per-case condition checks but still report their pool counts.
  bool checks_skipped = false;
  PoolStats pool;
  u64 qualifying_pairs = 0;
  u64 ideals = 0;
  u64 cases = 0;
  u64 inconsistencies = 0;
};

struct SweepReport {
  TheoremId theorem = TheoremId::single_map;
  FamilyOptions options;
  u64 budget = 0;
  std::vector<SweepInstanceResult> instances;
  std::vector<SweepAnomaly> anomalies;
  u64 total_cases = 0;
  u64 total_inconsistencies = 0;
};

/// Runs one criterion over every generated instance, every qualifying map
/// pair (pair of pairs for 4.2), every candidate ideal and both signs.
/// Deterministic: results land in instance slots, so the report is
/// byte-identical for any jobs count.
SweepReport sweep_theorem(const SweepOptions& opts);

/// Open-problem searches: drop the "d nonzero" leg and hunt for
/// hypothesis-satisfying cases on noncommutative rings.
///   pr1.i   [F1(x), x] central
///   pr1.ii  [F1(x), F2(y)] +- xy central
///   pr1.iii F1(x)F2(y) +- [x, y] central
///   pr2     F1(x)F2(y) +- (xy + yx) central, modulus 2 excluded
enum class ProblemId { bracket_self, bracket_pair, lie_pair, jordan_pair };
std::string problem_token(ProblemId id);
ProblemId problem_from_token(const std::string& token,
                             const std::string& field_path);
ConditionTag problem_condition_tag(ProblemId id);

struct SearchOptions {
  ProblemId problem = ProblemId::bracket_self;
  FamilyOptions families;
  u32 jobs = 1;
  u64 budget = default_budget();
};

/// A case whose hypotheses hold on a noncommutative ring. Survivors are
/// candidate counterexamples pending manual verification, never refutations;
/// trivial ones (every associated d zero) are flagged as such.
struct Survivor {
  std::string instance;
  std::string family;
  u64 modulus = 0;
  std::string ideal;
  std::vector<std::vector<u64>> ideal_generators;
  std::vector<MapPairData> pairs;
  std::optional<Sign> sign; // absent for the signless shape
  bool trivial = false;
};

struct SearchInstanceResult {
  std::string instance;
  std::string family;
  u64 modulus = 0;
  u32 dim = 0;
  bool skipped = false; // hypotheses cannot hold here
  std::string skip_reason;
  PoolStats pool;
  u64 qualifying_pairs = 0;
  u64 ideals = 0;
  u64 cases = 0;
  u64 satisfying = 0;
  u64 survivors = 0;
};

struct SearchReport {
  ProblemId problem = ProblemId::bracket_self;
  FamilyOptions options;
  u64 budget = 0;
  std::vector<SearchInstanceResult> instances;
  std::vector<Survivor> survivors;
  u64 total_cases = 0;
  u64 total_satisfying = 0;
  u64 total_survivors = 0;
};

/// Exhaustive within the enumeration frontier recorded in the report.
/// Deterministic for any jobs count, like sweep_theorem.
SearchReport search_problem(const SearchOptions& opts);

} // namespace gradering
