#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shuffle/dfa.hpp"
#include "shuffle/grid_nfa.hpp"
#include "shuffle/shuffle.hpp"
#include "shuffle/word.hpp"

namespace shuffle {

/// u = w1 w^k and v = w2 w^l over a common base word w, with k >= l and
/// w1, w2 suffixes of w (possibly empty, possibly w itself).
class PeriodicInstance {
 public:
  /// Throws PreconditionError if w is empty, w1 or w2 is not a suffix of w, or k < l.
  PeriodicInstance(Word w, Word w1, std::size_t k, Word w2, std::size_t l);

  const Word& base() const noexcept { return u_form_.base; }
  std::size_t period() const noexcept { return base().size(); }
  const PeriodicForm& u_form() const noexcept { return u_form_; }
  const PeriodicForm& v_form() const noexcept { return v_form_; }
  Word u() const { return u_form_.expand(); }
  Word v() const { return v_form_.expand(); }

  /// "w=abc w1=bc k=2 w2=abc l=0"
  std::string describe() const;

  bool operator==(const PeriodicInstance&) const = default;

 private:
  PeriodicForm u_form_;
  PeriodicForm v_form_;
};

/// Instances for (u, v) over every base word of length 2 … max_base taken
/// from the tails of u and v. Prefixes are normalized to be non-empty when the
/// exponent allows it; u and v are swapped when needed so that k >= l.
std::vector<PeriodicInstance> recognize_periodic(const Word& u, const Word& v,
                                                 std::size_t max_base = 8);

/// Outcome of checking u ⧢ v ⊊ u' ⧢ v' by enumeration.
struct InclusionVerdict {
  Word u, v, u_prime, v_prime;
  bool subset = false;
  bool proper = false;
  /// Least word of u' ⧢ v' outside u ⧢ v.
  std::optional<Word> witness;
  /// Witness built from the explicit trajectory (period-change case only).
  std::optional<Word> proof_witness;
  bool proof_witness_in_difference = true;

  bool passed() const noexcept { return subset && proper && proof_witness_in_difference; }
};

/// Moving periods between the words: u' = w1 w^k', v' = w2 w^l'.
/// Requires |w| >= 2, at least two distinct letters in w, l < k' < k,
/// l < l' < k, k + l = k' + l', and w1, w2 both empty or both non-empty proper.
InclusionVerdict check_period_change_inclusion(
    const PeriodicInstance& inst, std::size_t k_prime, std::size_t l_prime,
    const EnumerationLimits& limits = EnumerationLimits::from_environment());

/// Trajectory 0^q (01)^p 0^r (or its mirror when |w2| > |w1|) whose shuffle
/// of u', v' lies outside u ⧢ v. Same preconditions as above.
Trajectory period_change_witness_trajectory(const PeriodicInstance& inst, std::size_t k_prime,
                                            std::size_t l_prime);

/// Swapping the leading suffixes: u' = w2 w^k, v' = w1 w^l.
/// Requires |w| >= 2, two distinct letters, l < k and w2 a proper suffix of w1.
InclusionVerdict check_period_nonchange_inclusion(
    const PeriodicInstance& inst,
    const EnumerationLimits& limits = EnumerationLimits::from_environment());

struct ResidualVerdict {
  bool subset = false;          // L(i,j) ⊆ L(i',j')
  bool reverse_subset = false;  // L(i',j') ⊆ L(i,j)
  bool equal = false;
  bool expected_equal = false;  // {i,j} = {i',j'}

  bool passed() const noexcept { return subset && equal == expected_equal; }
};

/// Compares residuals of the naive NFA of the instance at (i,j) and (i',j').
/// Preconditions, reported by number: (1) 1 <= i,i' <= |u|, 1 <= j,j' <= |v|;
/// (2) i+j = i'+j'; (3) {i mod n, j mod n} = {i' mod n, j' mod n};
/// (4) |i-j| >= |i'-j'|. Also requires two distinct letters in w.
ResidualVerdict residual_inclusion(
    const PeriodicInstance& inst, std::size_t i, std::size_t j, std::size_t i_prime,
    std::size_t j_prime, const EnumerationLimits& limits = EnumerationLimits::from_environment());

/// Residual languages of one instance's naive NFA, enumerated on first use.
class ResidualTable {
 public:
  explicit ResidualTable(const PeriodicInstance& inst,
                         const EnumerationLimits& limits = EnumerationLimits::from_environment());

  const PeriodicInstance& instance() const noexcept { return inst_; }
  const GridNfa& grid() const noexcept { return nfa_; }
  const WordSet& at(std::size_t i, std::size_t j) const;

 private:
  PeriodicInstance inst_;
  GridNfa nfa_;
  EnumerationLimits limits_;
  mutable std::vector<std::optional<WordSet>> cache_;
};

/// Same check against a shared table.
ResidualVerdict residual_inclusion(const ResidualTable& table, std::size_t i, std::size_t j,
                                   std::size_t i_prime, std::size_t j_prime);

/// Throws PreconditionError naming the first violated condition, as residual_inclusion does.
void check_residual_conditions(const PeriodicInstance& inst, std::size_t i, std::size_t j,
                               std::size_t i_prime, std::size_t j_prime);

/// Largest m <= |v| with (|u| - m) divisible by n, if any.
std::optional<std::size_t> formula_m(std::size_t u_len, std::size_t v_len, std::size_t n);

/// Closed-form minimal DFA size for a non-repeating base word with non-empty
/// prefixes. k > l uses the m-formula (absent m contributes nothing);
/// k = l >= 1 requires |w1| >= |w2|. k = l = 0 is rejected.
std::uint64_t formula_size(const PeriodicInstance& inst);

/// Empty string if the instance is in scope for formula_size, otherwise the failed clause.
std::string formula_precondition_failure(const PeriodicInstance& inst);

struct GridEdge {
  Symbol letter;
  GridState target;

  bool operator==(const GridEdge&) const = default;
};

/// The grid NFA with an editable transition relation, used by the direct
/// construction. States are removed only by remove_unreachable.
class GridAutomaton {
 public:
  explicit GridAutomaton(GridNfa nfa);

  const GridNfa& grid() const noexcept { return nfa_; }
  bool alive(GridState s) const { return alive_.at(nfa_.index(s)) != 0; }
  std::span<const GridEdge> edges(GridState s) const { return edges_.at(nfa_.index(s)); }
  std::size_t state_count() const noexcept;

  /// Keeps only the edge on a from `from` to `to`; throws if no such edge.
  void redirect(GridState from, Symbol a, GridState to);
  /// Drops states not reachable from the initial state; returns how many.
  std::size_t remove_unreachable();

  bool is_nondeterministic(GridState s) const;
  bool is_deterministic() const;
  WordSet language(const EnumerationLimits& limits = EnumerationLimits::from_environment()) const;
  /// One DFA state per live grid state, labelled with it. Requires determinism.
  Dfa to_dfa() const;

 private:
  GridNfa nfa_;
  std::vector<std::vector<GridEdge>> edges_;
  std::vector<char> alive_;
};

/// Stage 1: on h-layer 0, keep the step to (i, i-1); drops h-layers below 0.
GridAutomaton prune_below_diagonal(GridAutomaton a, const PeriodicInstance& inst);
/// Stage 2: on h-layer |u|-m, keep the step to (i-1, j); drops h-layers above it.
GridAutomaton prune_above_m_layer(GridAutomaton a, const PeriodicInstance& inst);
/// Stage 3: every remaining nondeterministic state (i, j), i > j, keeps (i-1, j).
GridAutomaton determinize_interior(GridAutomaton a, const PeriodicInstance& inst);

/// Minimal DFA built directly from the grid by the three stages above.
/// Same preconditions as formula_size plus k > l.
Dfa build_periodic_dfa(const PeriodicInstance& inst);

struct QuadraticBoundReport {
  SizeReport sizes;
  std::uint64_t bound = 0;  // 2 (|u|+1)(|v|+1)
  double ratio = 0.0;       // minimal / ((|u|+1)(|v|+1))

  bool within_bound() const noexcept { return sizes.minimal_dfa_states <= bound; }
};

/// Runs the full pipeline for a base word whose skeleton is non-repeating
/// and compares the minimal size against 2 (|u|+1)(|v|+1). Fills
/// formula_prediction when formula_size applies.
QuadraticBoundReport check_quadratic_bound(const PeriodicInstance& inst,
                                           const SubsetOptions& options = {});

}  // namespace shuffle
