#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gradering/grading.hpp"
#include "gradering/ideal.hpp"
#include "gradering/maps.hpp"
#include "gradering/primeness.hpp"
#include "gradering/ring.hpp"

namespace gradering {

/// Shape of the centrality condition checked over an ideal. F2-based shapes
/// take a second map; the bracket_f1x_x shape is quadratic in one variable,
/// every other shape is bilinear in (x, y).
enum class ConditionTag {
  f_xy,               // F1(xy) +- xy
  f1x_f2y,            // F1(x)F2(y) +- xy
  bracket_f1x_x,      // [F1(x), x]         (no sign)
  bracket_f1x_f2y_xy, // [F1(x), F2(y)] +- xy
  f1x_f2y_lie,        // F1(x)F2(y) +- [x, y]
  f1x_f2y_jordan      // F1(x)F2(y) +- (xy + yx)
};

enum class Sign { minus, plus };

struct ConditionKind {
  ConditionTag tag = ConditionTag::f_xy;
  Sign sign = Sign::minus;
};

bool condition_uses_second_map(ConditionTag t);
bool condition_has_sign(ConditionTag t);
std::string condition_tag_token(ConditionTag t);
ConditionTag condition_tag_from_token(const std::string& token,
                                      const std::string& field_path);
std::string sign_token(Sign s);
Sign sign_from_token(const std::string& token, const std::string& field_path);
/// Human-readable formula, e.g. "F1(x)F2(y) - xy central".
std::string condition_name(const ConditionKind& kind);

struct ConditionOutcome {
  Verdict verdict; // witness: spanning indices {s, t}; s == t on diagonal
  u64 checks = 0;
  bool polarized = false; // witness came from a polarization pair
};

/// Does the condition value land in the center for ALL x, y in I?
/// Exact finite check: every shape except bracket_f1x_x is biadditive, so
/// spanning pairs decide it; the quadratic shape Q(x) = [F1(x), x] is handled
/// by Q on the spanning set plus the polarization B(x,y) = [F1(x),y] +
/// [F1(y),x], since Q(sum c_s b_s) = sum c_s^2 Q(b_s) +
/// sum_{s<t} c_s c_t B(b_s, b_t) and conversely B(b_s,b_t) =
/// Q(b_s+b_t) - Q(b_s) - Q(b_t). Polar pairs are scanned only after every
/// diagonal passed, so a polar witness (s, t) yields the genuine failing
/// element b_s + b_t. The budget bounds the number of ideal elements the
/// verdict speaks for. Certified grading and prime modulus required.
ConditionOutcome check_condition(const ConditionKind& kind,
                                 const AdditiveMap& F1, const AdditiveMap* F2,
                                 const IdealHandle& I, const Grading& g,
                                 u64 budget = default_budget());

struct HypothesisCheck {
  std::string name;
  bool holds = false;
  std::string detail;
  std::string fail_label; // short phrase a one-line summary uses on failure
};

/// Outcome of a commutativity criterion: the hypothesis legs, the
/// conclusion, and whether the implication survives on this instance.
struct TheoremVerdict {
  std::vector<HypothesisCheck> hypotheses;
  bool hypotheses_hold = false;
  bool conclusion_commutative = false;
  bool consistent = false; // !hypotheses_hold || conclusion_commutative

  std::string summary() const; // one line, CLI-friendly
};

/// Criterion: gr-prime ring, nonzero graded ideal I, map pair (F, d) with
/// d != 0 and F(xy) -+ xy central on I  =>  the ring is commutative.
/// Hypotheses are evaluated, never assumed; out-of-scope inputs simply show
/// up as unsatisfied legs.
TheoremVerdict verify_single_map_theorem(const Ring& r, const Grading& g,
                                         const IdealHandle& I,
                                         const AdditiveMap& F,
                                         const AdditiveMap& d, Sign sign,
                                         u64 budget = default_budget());

/// Criterion: gr-prime ring, nonzero graded ideal I, pairs (F1, d1) and
/// (F2, d2) with d1 != 0, d2 != 0 and F1(x)F2(y) -+ xy central on I  =>
/// commutative.
TheoremVerdict verify_two_map_theorem(const Ring& r, const Grading& g,
                                      const IdealHandle& I,
                                      const AdditiveMap& F1,
                                      const AdditiveMap& d1,
                                      const AdditiveMap& F2,
                                      const AdditiveMap& d2, Sign sign,
                                      u64 budget = default_budget());

/// On a gr-prime ring, a generalized pair (F, d) with d != 0 forces F != 0.
/// Instances outside the hypotheses (not gr-prime, not a generalized pair,
/// or d = 0) pass vacuously with an explanatory detail.
Verdict check_f_forced_nonzero(const Ring& r, const Grading& g,
                               const AdditiveMap& F, const AdditiveMap& d,
                               u64 budget = default_budget());

/// On a gr-prime ring, a nonzero homogeneous derivation cannot vanish on a
/// nonzero graded ideal. Preconditions (gr-prime; I nonzero graded; d a
/// nonzero homogeneous derivation) are enforced with PreconditionError.
Verdict check_ideal_restriction_nonzero(const Grading& g, const IdealHandle& I,
                                        const AdditiveMap& d,
                                        u64 budget = default_budget());

/// On a gr-prime ring, a r b = 0 for all r with only ONE of a, b required
/// homogeneous still forces a = 0 or b = 0. Scans every (element,
/// homogeneous) pair in both orders; budget bounds m^dim. Throws
/// PreconditionError when the ring is not gr-prime.
Verdict check_one_sided_annihilator(const Ring& r, const Grading& g,
                                    u64 budget = default_budget());

/// On a gr-prime ring, the centralizer of every nonzero graded one-sided
/// ideal collapses to the center. Ideals scanned: principal ideals of every
/// nonzero homogeneous generator, both sides, plus the full ring. Throws
/// PreconditionError when the ring is not gr-prime.
Verdict check_graded_ideal_centralizer(const Ring& r, const Grading& g,
                                       u64 budget = default_budget());

/// The sum of two homogeneous derivations need not be homogeneous (their
/// degrees can differ). Searches inner derivations by homogeneous elements
/// for a witnessing pair, in enumeration order.
struct SumWitness {
  AdditiveMap a;
  AdditiveMap b;
  Verdict sum_homogeneity; // failing is_homogeneous_map verdict for a + b
};
std::optional<SumWitness> find_sum_witness(const Ring& r, const Grading& g,
                                           u64 budget = default_budget());

} // namespace gradering
