#include "gradering/theorems.hpp"

#include <algorithm>
#include <set>

#include "gradering/errors.hpp"

namespace gradering {

bool condition_uses_second_map(ConditionTag t) {
  return t != ConditionTag::f_xy && t != ConditionTag::bracket_f1x_x;
}

bool condition_has_sign(ConditionTag t) {
  return t != ConditionTag::bracket_f1x_x;
}

std::string condition_tag_token(ConditionTag t) {
  switch (t) {
  case ConditionTag::f_xy:
    return "f_xy";
  case ConditionTag::f1x_f2y:
    return "f1x_f2y";
  case ConditionTag::bracket_f1x_x:
    return "bracket_f1x_x";
  case ConditionTag::bracket_f1x_f2y_xy:
    return "bracket_f1x_f2y_xy";
  case ConditionTag::f1x_f2y_lie:
    return "f1x_f2y_lie";
  default:
    return "f1x_f2y_jordan";
  }
}

ConditionTag condition_tag_from_token(const std::string& token,
                                      const std::string& field_path) {
  for (ConditionTag t :
       {ConditionTag::f_xy, ConditionTag::f1x_f2y, ConditionTag::bracket_f1x_x,
        ConditionTag::bracket_f1x_f2y_xy, ConditionTag::f1x_f2y_lie,
        ConditionTag::f1x_f2y_jordan})
    if (condition_tag_token(t) == token)
      return t;
  throw SpecError(field_path, "unknown condition tag \"" + token + "\"");
}

std::string sign_token(Sign s) { return s == Sign::minus ? "minus" : "plus"; }

Sign sign_from_token(const std::string& token, const std::string& field_path) {
  if (token == "minus")
    return Sign::minus;
  if (token == "plus")
    return Sign::plus;
  throw SpecError(field_path, "sign must be \"minus\" or \"plus\"");
}

std::string condition_name(const ConditionKind& kind) {
  const std::string pm = kind.sign == Sign::minus ? " - " : " + ";
  switch (kind.tag) {
  case ConditionTag::f_xy:
    return "F1(xy)" + pm + "xy central";
  case ConditionTag::f1x_f2y:
    return "F1(x)F2(y)" + pm + "xy central";
  case ConditionTag::bracket_f1x_x:
    return "[F1(x), x] central";
  case ConditionTag::bracket_f1x_f2y_xy:
    return "[F1(x), F2(y)]" + pm + "xy central";
  case ConditionTag::f1x_f2y_lie:
    return "F1(x)F2(y)" + pm + "[x, y] central";
  default:
    return "F1(x)F2(y)" + pm + "(xy + yx) central";
  }
}

namespace {

linalg::Rref center_span(const Ring& r) {
  linalg::Rref z(r.modulus(), r.dim());
  for (const Element& e : center(r))
    z.add(e.coords());
  return z;
}

Element condition_value(const ConditionKind& kind, const AdditiveMap& F1,
                        const AdditiveMap* F2, const Element& x,
                        const Element& y) {
  const i64 s = kind.sign == Sign::minus ? -1 : 1;
  switch (kind.tag) {
  case ConditionTag::f_xy:
    return F1.apply(x * y) + (x * y).scaled(s);
  case ConditionTag::f1x_f2y:
    return F1.apply(x) * F2->apply(y) + (x * y).scaled(s);
  case ConditionTag::bracket_f1x_x:
    return commutator(F1.apply(x), x);
  case ConditionTag::bracket_f1x_f2y_xy:
    return commutator(F1.apply(x), F2->apply(y)) + (x * y).scaled(s);
  case ConditionTag::f1x_f2y_lie:
    return F1.apply(x) * F2->apply(y) + commutator(x, y).scaled(s);
  default:
    return F1.apply(x) * F2->apply(y) + jordan(x, y).scaled(s);
  }
}

} // namespace

ConditionOutcome check_condition(const ConditionKind& kind,
                                 const AdditiveMap& F1, const AdditiveMap* F2,
                                 const IdealHandle& I, const Grading& g,
                                 u64 budget) {
  const Ring& r = I.ring();
  require_certified(r, g, "check_condition");
  require_prime_modulus(r, "check_condition");
  require_same_ring(F1.ring(), r, "check_condition");
  if (condition_uses_second_map(kind.tag)) {
    if (!F2)
      throw PreconditionError("condition " + condition_name(kind) +
                              " needs a second map");
    require_same_ring(F2->ring(), r, "check_condition");
  }
  const u64 count = I.element_count(budget + 1);
  if (count > budget)
    throw BudgetExceededError("condition check covers " +
                              std::to_string(count) +
                              "+ ideal elements, budget is " +
                              std::to_string(budget));

  const linalg::Rref z = center_span(r);
  const auto& span = I.spanning_set();
  ConditionOutcome out;

  auto fail = [&](std::size_t s, std::size_t t, const Element& value,
                  bool polar) {
    out.verdict.pass = false;
    out.verdict.witness = {static_cast<i64>(s), static_cast<i64>(t)};
    out.polarized = polar;
    out.verdict.detail =
        condition_name(kind) + " fails on spanning " +
        (polar ? std::string("polarization pair (") : std::string("pair (")) +
        span[s].str() + ", " + span[t].str() + "): value " + value.str() +
        " is not central";
  };

  if (kind.tag == ConditionTag::bracket_f1x_x) {
    // Diagonals first so a later polarization witness implies the genuine
    // failing element b_s + b_t.
    for (std::size_t s = 0; s < span.size(); ++s) {
      ++out.checks;
      Element q = condition_value(kind, F1, F2, span[s], span[s]);
      if (!z.contains(q.coords())) {
        fail(s, s, q, false);
        return out;
      }
    }
    for (std::size_t s = 0; s < span.size(); ++s)
      for (std::size_t t = s + 1; t < span.size(); ++t) {
        ++out.checks;
        Element b = commutator(F1.apply(span[s]), span[t]) +
                    commutator(F1.apply(span[t]), span[s]);
        if (!z.contains(b.coords())) {
          fail(s, t, b, true);
          return out;
        }
      }
  } else {
    for (std::size_t s = 0; s < span.size(); ++s)
      for (std::size_t t = 0; t < span.size(); ++t) {
        ++out.checks;
        Element v = condition_value(kind, F1, F2, span[s], span[t]);
        if (!z.contains(v.coords())) {
          fail(s, t, v, false);
          return out;
        }
      }
  }
  out.verdict.pass = true;
  out.verdict.detail = condition_name(kind) + " holds: " +
                       std::to_string(out.checks) +
                       " spanning checks covering " + std::to_string(count) +
                       " ideal elements";
  return out;
}

std::string TheoremVerdict::summary() const {
  std::string out;
  if (hypotheses_hold) {
    out = "hypotheses satisfied";
  } else {
    out = "hypotheses unsatisfied (";
    bool first = true;
    for (const auto& h : hypotheses)
      if (!h.holds) {
        if (!first)
          out += "; ";
        out += h.fail_label.empty() ? h.name : h.fail_label;
        first = false;
      }
    out += ")";
  }
  out += conclusion_commutative ? "; conclusion holds" : "; conclusion fails";
  out += consistent ? "; consistent" : "; INCONSISTENT";
  return out;
}

namespace {

TheoremVerdict run_theorem(const Ring& r, const Grading& g,
                           const IdealHandle& I, const ConditionKind& kind,
                           const AdditiveMap& F1, const AdditiveMap* F2,
                           const std::vector<const AdditiveMap*>& assoc,
                           u64 budget) {
  require_certified(r, g, "theorem check");
  require_same_ring(I.ring(), r, "theorem check");
  TheoremVerdict v;

  PrimenessVerdict gp = is_gr_prime(r, g, budget);
  v.hypotheses.push_back(
      {"ring is gr-prime", gp.prime, gp.detail, "not gr-prime"});

  Verdict graded = is_graded_ideal(I, g);
  const bool ideal_ok = !I.is_zero() && graded.pass;
  std::string ideal_detail =
      I.is_zero() ? std::string("ideal is zero") : graded.detail;
  v.hypotheses.push_back({"ideal is nonzero and graded", ideal_ok,
                          std::move(ideal_detail),
                          "ideal zero or not graded"});

  for (std::size_t i = 0; i < assoc.size(); ++i) {
    const bool nz = !assoc[i]->is_zero();
    std::string name = assoc.size() == 1
                           ? std::string("associated map is nonzero")
                           : "associated map " + std::to_string(i + 1) +
                                 " is nonzero";
    std::string label = assoc.size() == 1
                            ? std::string("associated map is zero")
                            : "associated map " + std::to_string(i + 1) +
                                  " is zero";
    v.hypotheses.push_back(
        {std::move(name), nz, nz ? "nonzero" : "the zero map",
         std::move(label)});
  }

  ConditionOutcome cond = check_condition(kind, F1, F2, I, g, budget);
  v.hypotheses.push_back({"condition " + condition_name(kind) + " on the ideal",
                          cond.verdict.pass, cond.verdict.detail,
                          "condition fails on the ideal"});

  v.hypotheses_hold = std::all_of(v.hypotheses.begin(), v.hypotheses.end(),
                                  [](const auto& h) { return h.holds; });
  v.conclusion_commutative = is_commutative(r).pass;
  v.consistent = !v.hypotheses_hold || v.conclusion_commutative;
  return v;
}

} // namespace

TheoremVerdict verify_single_map_theorem(const Ring& r, const Grading& g,
                                         const IdealHandle& I,
                                         const AdditiveMap& F,
                                         const AdditiveMap& d, Sign sign,
                                         u64 budget) {
  return run_theorem(r, g, I, ConditionKind{ConditionTag::f_xy, sign}, F,
                     nullptr, {&d}, budget);
}

TheoremVerdict verify_two_map_theorem(const Ring& r, const Grading& g,
                                      const IdealHandle& I,
                                      const AdditiveMap& F1,
                                      const AdditiveMap& d1,
                                      const AdditiveMap& F2,
                                      const AdditiveMap& d2, Sign sign,
                                      u64 budget) {
  return run_theorem(r, g, I, ConditionKind{ConditionTag::f1x_f2y, sign}, F1,
                     &F2, {&d1, &d2}, budget);
}

Verdict check_f_forced_nonzero(const Ring& r, const Grading& g,
                               const AdditiveMap& F, const AdditiveMap& d,
                               u64 budget) {
  require_certified(r, g, "check_f_forced_nonzero");
  Verdict v;
  v.pass = true;
  if (!is_gr_prime(r, g, budget).prime) {
    v.detail = "outside hypotheses: ring is not gr-prime";
    return v;
  }
  Verdict pair = is_generalized_pair(F, d);
  if (!pair.pass) {
    v.detail = "outside hypotheses: (F, d) is not a generalized pair (" +
               pair.detail + ")";
    return v;
  }
  if (d.is_zero()) {
    v.detail = "vacuous: d = 0 implies nothing about F";
    return v;
  }
  if (F.is_zero()) {
    v.pass = false;
    v.detail = "refutation: F = 0 admits the nonzero associated map d = " +
               d.str() + " on a gr-prime ring";
    return v;
  }
  v.detail = "F != 0 as forced";
  return v;
}

Verdict check_ideal_restriction_nonzero(const Grading& g, const IdealHandle& I,
                                        const AdditiveMap& d, u64 budget) {
  const Ring& r = I.ring();
  require_certified(r, g, "check_ideal_restriction_nonzero");
  require_same_ring(d.ring(), r, "check_ideal_restriction_nonzero");
  if (!is_gr_prime(r, g, budget).prime)
    throw PreconditionError(
        "restriction check applies to gr-prime rings only");
  if (I.is_zero())
    throw PreconditionError("restriction check needs a nonzero ideal");
  if (!is_graded_ideal(I, g).pass)
    throw PreconditionError("restriction check needs a graded ideal");
  if (d.is_zero() || !is_homogeneous_derivation(d, g).pass)
    throw PreconditionError(
        "restriction check needs a nonzero homogeneous derivation");

  // d is additive, so d vanishes on I iff it kills the spanning set.
  for (std::size_t s = 0; s < I.spanning_set().size(); ++s) {
    const Element& b = I.spanning_set()[s];
    Element img = d.apply(b);
    if (!img.is_zero()) {
      Verdict v;
      v.pass = true;
      v.witness = {static_cast<i64>(s)};
      v.detail = "restriction is nonzero: d(" + b.str() + ") = " + img.str();
      return v;
    }
  }
  Verdict v;
  v.pass = false;
  v.detail = "refutation: the derivation vanishes on the whole ideal";
  return v;
}

Verdict check_one_sided_annihilator(const Ring& r, const Grading& g,
                                    u64 budget) {
  require_certified(r, g, "check_one_sided_annihilator");
  if (!is_gr_prime(r, g, budget).prime)
    throw PreconditionError(
        "one-sided annihilator check applies to gr-prime rings only");
  const u64 count = pow_capped(r.modulus(), r.dim(), budget + 1);
  if (count > budget)
    throw BudgetExceededError("annihilator scan needs " +
                              std::to_string(count) +
                              "+ elements, budget is " + std::to_string(budget));

  std::vector<Element> all;
  all.reserve(count - 1);
  std::vector<u64> coords(r.dim(), 0);
  while (true) {
    std::size_t pos = 0;
    while (pos < coords.size() && ++coords[pos] == r.modulus())
      coords[pos++] = 0;
    if (pos == coords.size())
      break;
    all.push_back(r.element_u(coords));
  }
  std::vector<Element> homog;
  for (Element& e : all_homogeneous(r, g, budget))
    if (!e.is_zero())
      homog.push_back(std::move(e));

  auto annihilates = [&](const Element& a, const Element& b) {
    for (u32 k = 0; k < r.dim(); ++k)
      if (!((a * r.basis_element(k)) * b).is_zero())
        return false;
    return true;
  };

  u64 checks = 0;
  for (const Element& a : all)
    for (const Element& b : homog) {
      ++checks;
      if (annihilates(a, b)) {
        Verdict v;
        v.pass = false;
        v.detail = "refutation: a = " + a.str() + " (arbitrary), b = " +
                   b.str() + " (homogeneous), a r b = 0 for all r";
        return v;
      }
    }
  for (const Element& a : homog)
    for (const Element& b : all) {
      ++checks;
      if (annihilates(a, b)) {
        Verdict v;
        v.pass = false;
        v.detail = "refutation: a = " + a.str() + " (homogeneous), b = " +
                   b.str() + " (arbitrary), a r b = 0 for all r";
        return v;
      }
    }
  Verdict v;
  v.pass = true;
  v.detail = "no annihilating pair with one homogeneous side (" +
             std::to_string(checks) + " pairs)";
  return v;
}

Verdict check_graded_ideal_centralizer(const Ring& r, const Grading& g,
                                       u64 budget) {
  require_certified(r, g, "check_graded_ideal_centralizer");
  if (!is_gr_prime(r, g, budget).prime)
    throw PreconditionError(
        "graded-ideal centralizer check applies to gr-prime rings only");

  const linalg::Rref z = center_span(r);
  std::set<std::vector<u64>> seen;
  u64 ideals = 0;

  auto inspect = [&](const IdealHandle& I, const std::string& what)
      -> std::optional<Verdict> {
    if (I.is_zero())
      return std::nullopt;
    std::vector<u64> key;
    key.push_back(static_cast<u64>(I.side()));
    for (const Element& e : I.spanning_set())
      key.insert(key.end(), e.coords().begin(), e.coords().end());
    if (!seen.insert(std::move(key)).second)
      return std::nullopt;
    ++ideals;
    linalg::Rref c(r.modulus(), r.dim());
    for (const Element& e : centralizer(I.spanning_set(), r))
      c.add(e.coords());
    if (!c.same_span(z)) {
      Verdict v;
      v.pass = false;
      v.detail = "refutation: centralizer of the " + side_name(I.side()) +
                 " ideal generated by " + what +
                 " differs from the center (rank " + std::to_string(c.rank()) +
                 " vs " + std::to_string(z.rank()) + ")";
      return v;
    }
    return std::nullopt;
  };

  for (Side side : {Side::left, Side::right}) {
    HomogeneousStream stream(r, g, budget);
    while (auto h = stream.next()) {
      if (h->is_zero())
        continue;
      std::vector<Element> gens{*h};
      if (auto bad = inspect(ideal_generate(gens, side, r), h->str()))
        return *bad;
    }
  }
  if (auto bad = inspect(full_ring_ideal(r), "the whole ring"))
    return *bad;

  Verdict v;
  v.pass = true;
  v.detail = "centralizer equals the center for all " +
             std::to_string(ideals) + " nonzero graded one-sided ideals";
  return v;
}

std::optional<SumWitness> find_sum_witness(const Ring& r, const Grading& g,
                                           u64 budget) {
  require_certified(r, g, "find_sum_witness");
  // Distinct homogeneous-derivation candidates: inner derivations by
  // homogeneous elements, deduplicated, in stream order.
  std::vector<AdditiveMap> pool;
  std::set<std::vector<u64>> seen;
  HomogeneousStream stream(r, g, budget);
  while (auto h = stream.next()) {
    AdditiveMap d = inner_derivation(*h);
    if (d.is_zero())
      continue;
    if (!seen.insert(d.flat()).second)
      continue;
    if (is_homogeneous_map(d, g).pass)
      pool.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      Verdict hom = is_homogeneous_map(pool[i] + pool[j], g);
      if (!hom.pass)
        return SumWitness{pool[i], pool[j], std::move(hom)};
    }
  return std::nullopt;
}

} // namespace gradering
