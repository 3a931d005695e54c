#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shuffle/dfa.hpp"
#include "shuffle/families.hpp"
#include "shuffle/grid_nfa.hpp"
#include "shuffle/periodic.hpp"
#include "shuffle/word.hpp"

namespace shuffle {

inline constexpr std::size_t kMaxExpansion = 10'000;

/// Parses letters with optional exponent groups: "bc(abc)^2", "a^3", "((ab)^2c)^2".
/// Throws ParseError (with the offending offset) on bad syntax or when the
/// expansion would exceed max_letters.
Word parse_word_expression(std::string_view text, std::size_t max_letters = kMaxExpansion);

/// Parses "w=abc w1=bc k=2 w2=abc l=0". Keys may appear in any order; all
/// five are required. An empty suffix is written "w1=" or "w1=λ".
PeriodicInstance parse_instance_description(std::string_view text);

struct GridDotOptions {
  /// Shade the states of every nondeterministic area.
  bool shade_areas = false;
  /// Transitions drawn dashed.
  std::vector<std::pair<GridState, GridState>> dashed;
  /// Mark every state active at some point of the run on this word.
  std::optional<Word> probe;
};

/// Graphviz rendering of the grid, states pinned at column |u|-i, row |v|-j.
std::string to_dot(const GridNfa& nfa, const GridDotOptions& options = {});
std::string to_dot(const Dfa& dfa);

/// Grid states active after each prefix of z, starting with {initial}.
std::vector<std::vector<GridState>> active_states(const GridNfa& nfa, const Word& z);

inline constexpr std::string_view kDfaSchema = "shuffle.dfa/1";
inline constexpr std::string_view kNfaSchema = "shuffle.nfa/1";
inline constexpr std::string_view kSizeReportSchema = "shuffle.size-report/1";
inline constexpr std::string_view kVerifySchema = "shuffle.verify/1";

/// Pretty-printed JSON documents, each tagged with a "schema" field.
std::string to_json(const Dfa& dfa);
std::string to_json(const GridNfa& nfa, bool include_areas = false);
std::string to_json(const SizeReport& report);

/// Inverse of to_json(const Dfa&). Throws ParseError on malformed input.
Dfa dfa_from_json(std::string_view text);

/// Header: n,family,|u|,|v|,nfa,subset_dfa,minimal_dfa,predicted_or_bound,wall_time_ms.
/// Missing sizes are left empty. wall_time_ms is written as 0 unless with_timing.
std::string to_csv(const ExperimentResult& result, bool with_timing = false);

/// Single-row CSV with the same columns for one measured pair.
std::string to_csv(const SizeReport& report);

}  // namespace shuffle
