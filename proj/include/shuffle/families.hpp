#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shuffle/dfa.hpp"
#include "shuffle/grid_nfa.hpp"
#include "shuffle/shuffle.hpp"
#include "shuffle/word.hpp"

namespace shuffle {

/// u_n = (aabb)^n aabbaabb (aabb)^n aaaaa, v_n = (aabb)^n aabababb (aabb)^n bbbbb.
struct ExponentialPair {
  std::size_t n = 0;
  Word u;
  Word v;
};

/// Requires n >= 1.
ExponentialPair gen_exponential_pair(std::size_t n);

/// a (aabb)^n aaa x_1 … x_{n+1} bbbb (aabb)^n aaaaa bbbbb with
/// x_i = bbbabaaa for choice 0 and bbbbaaaa for choice 1.
///
/// The all-ones probe is not in u_n ⧢ v_n: every diagonal gets cut off.
struct ProbeWord {
  std::size_t n = 0;
  std::vector<bool> choices;
  Word word;
};

/// Requires n >= 1 and choices.size() == n + 1.
ProbeWord gen_probe(std::size_t n, const std::vector<bool>& choices);

/// Parses "101" into {true, false, true}.
std::vector<bool> parse_choices(std::string_view bits);

/// 8(n+1) + 13(2^{n+1} - 1) + 10.
BigInt exp_lower_bound(std::size_t n);

/// ((aabb)^{2n+2} aaaaa, (aabb)^{2n+2} bbbbb): the exponential pair with the
/// two swapped letters of v_n put back.
std::pair<Word, Word> gen_quadratic_neighbor(std::size_t n);

/// a (aabb)^n aaa, after which the filtering stage starts.
Word filtering_entry_prefix(std::size_t n);

// The lower-bound argument numbers vertical layers from 1 at the initial
// state (layer = letters read + 1) and states within a layer from 1 by
// letters consumed from v (position = consumed from v + 1). Grid coordinates
// count remaining letters instead. All instrumented checks translate proof
// coordinates through proof_to_grid and then compare in grid coordinates.
struct ProofState {
  std::size_t layer = 0;
  std::size_t position = 0;
};

GridState proof_to_grid(ProofState q, std::size_t u_len, std::size_t v_len);

/// Claimed active set after a(aabb)^i, 1 <= i <= n: {q_{4i+2,j}, q_{4i+2,j+3} | j = 2+4l, l < i}.
std::vector<GridState> claimed_duplication_set(std::size_t n, std::size_t i);

/// Claimed active set after a(aabb)^n aaa: {q_{4n+5,j} | j = 3+4l, 0 <= l <= n}.
std::vector<GridState> claimed_filtering_entry_set(std::size_t n);

struct ExperimentRow {
  std::size_t n = 0;
  std::string family;  // "exponential" or "neighbor"
  std::size_t u_len = 0;
  std::size_t v_len = 0;
  std::optional<std::size_t> nfa_states;
  std::optional<std::size_t> subset_dfa_states;
  std::optional<std::size_t> minimal_dfa_states;
  /// exp_lower_bound(n) for the exponential family, 2(|u|+1)(|v|+1) for the neighbor.
  BigInt predicted_or_bound;
  double wall_time_ms = 0.0;
  bool resource_limited = false;
};

struct ExperimentOptions {
  SubsetOptions subset;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;  // ordered by (family, n)
  bool limit_hit = false;
};

/// Sizes for both families for n = 1 … n_max. A row that exceeds the subset
/// budget keeps its bound and is flagged; later rows of that family are
/// reported with the bound only.
ExperimentResult run_experiment(std::size_t n_max, const ExperimentOptions& options = {});

}  // namespace shuffle
