#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gradering/lab.hpp"
#include "gradering/maps.hpp"
#include "gradering/primeness.hpp"
#include "gradering/ring.hpp"
#include "gradering/theorems.hpp"

namespace gradering {

// Machine-readable reports: one JSON document per command run, discriminated
// by a leading "kind" field. Emission is canonical (fixed field order,
// two-space indent, trailing newline), so equal results are equal bytes.

std::string report_validation(const std::string& instance, const Ring& r,
                              const Verdict& ring_check,
                              const Verdict& grading_check);

std::string report_classification(const std::string& instance,
                                  const std::string& map_name,
                                  const Classification& c);

/// kind is "gr-primeness" or "primeness".
std::string report_primeness(const std::string& instance, const char* kind,
                             const PrimenessVerdict& v);

std::string report_center(const std::string& instance,
                          const std::vector<Element>& basis);

std::string report_theorem(const std::string& instance,
                           const std::string& theorem,
                           std::optional<Sign> sign, const std::string& ideal,
                           const TheoremVerdict& v);

/// Single named yes/no check (the standalone consequence checks).
std::string report_check(const std::string& instance, const std::string& check,
                         const Verdict& v);

/// Declared-vs-computed comparison results for one document.
std::string
report_expectations(const std::string& instance,
                    const std::vector<std::pair<std::string, Verdict>>& checks);

std::string report_sweep(const SweepReport& rep);

std::string report_search(const SearchReport& rep);

/// Strict round-trip validator: parses a report, checks every field against
/// the schema of its kind (unknown fields rejected, integers only), and
/// returns the canonical re-emission. ParseError on malformed JSON,
/// SpecError on schema violations. For any report emitted above,
/// reparse_report(text) == text.
std::string reparse_report(const std::string& text);

} // namespace gradering
