#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "shuffle/grid_nfa.hpp"
#include "shuffle/shuffle.hpp"
#include "shuffle/word.hpp"

namespace shuffle {

/// Partial deterministic automaton. Missing transitions reject; there is no
/// sink state. States may carry the grid states they were built from.
class Dfa {
 public:
  using State = std::uint32_t;
  static constexpr State kNoState = std::numeric_limits<State>::max();

  Dfa() = default;
  explicit Dfa(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  State add_state(bool final = false);
  void set_initial(State s) { initial_ = s; }
  void set_final(State s, bool final = true) { final_.at(s) = final; }
  void set_transition(State from, std::size_t symbol_index, State to);
  void set_transition(State from, Symbol a, State to);
  void set_labels(State s, std::vector<GridState> labels);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return final_.size(); }
  std::size_t transition_count() const noexcept;
  State initial() const noexcept { return initial_; }
  bool is_final(State s) const { return final_.at(s) != 0; }

  /// kNoState when undefined.
  State target(State s, std::size_t symbol_index) const {
    return delta_[s * alphabet_.size() + symbol_index];
  }
  State target(State s, Symbol a) const;

  bool has_labels() const noexcept { return !labels_.empty(); }
  /// Grid states merged into s (empty when the automaton carries no labels).
  const std::vector<GridState>& labels(State s) const;

 private:
  Alphabet alphabet_;
  std::vector<State> delta_;
  std::vector<char> final_;
  State initial_ = 0;
  std::vector<std::vector<GridState>> labels_;
};

struct SubsetOptions {
  /// Cap on the number of materialized subsets; ResourceLimitError beyond it.
  std::size_t max_states = 1'000'000;
};

/// Accessible-subset determinization of the grid NFA. The empty subset is
/// never materialized. Each state carries its sorted subset as labels.
/// Throws std::logic_error if a subset mixes vertical layers or consumed
/// Parikh vectors.
Dfa subset_construction(const GridNfa& nfa, const SubsetOptions& options = {});

struct DisciplineReport {
  std::size_t layer_violations = 0;
  std::size_t parikh_violations = 0;

  bool ok() const noexcept { return layer_violations == 0 && parikh_violations == 0; }
};

/// Counts states whose labels span several vertical layers or several
/// consumed-letter Parikh vectors.
DisciplineReport check_subset_discipline(const Dfa& dfa, const GridNfa& nfa);

/// Restricts to states that are accessible and co-accessible. The initial
/// state is always kept.
Dfa trim(const Dfa& dfa);

/// Minimal partial DFA for a finite language: trims, then merges states
/// bottom-up by (finality, successor classes) signatures in reverse
/// topological order. Throws PreconditionError on a cycle.
Dfa minimize(const Dfa& dfa);

/// Same result as minimize, computed with a pairwise distinguishability table.
/// Quadratic in the number of states; used to cross-check minimize.
Dfa minimize_by_table(const Dfa& dfa);

/// True iff both automata accept the same language (finite languages only).
bool equivalent(const Dfa& lhs, const Dfa& rhs);

/// State reached after reading z, or nullopt if a transition is undefined.
std::optional<Dfa::State> run(const Dfa& dfa, const Word& z);

bool accepts(const Dfa& dfa, const Word& z);

/// All accepted words. Throws ResourceLimitError if a live path longer than
/// the cap exists, which includes any cycle.
WordSet dfa_language(const Dfa& dfa,
                     const EnumerationLimits& limits = EnumerationLimits::from_environment());

/// Upper bound 2^{n+1}(m-n+3) - m - n - 4 on the subset-construction size
/// of the grid NFA for |u| = m >= n = |v|. It counts one shared empty set,
/// which subset_construction never builds.
BigInt eq1_bound(std::size_t m, std::size_t n);

struct SizeReport {
  Word u;
  Word v;
  std::size_t nfa_states = 0;
  std::size_t subset_dfa_states = 0;
  std::size_t minimal_dfa_states = 0;
  std::optional<BigInt> formula_prediction;
  /// Evaluated with m = max(|u|, |v|), n = min(|u|, |v|).
  BigInt eq1_bound;
};

/// Runs naive NFA -> subset construction -> minimization and records sizes.
SizeReport measure(const Word& u, const Word& v, const SubsetOptions& options = {});

}  // namespace shuffle
