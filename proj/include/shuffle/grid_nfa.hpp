#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "shuffle/shuffle.hpp"
#include "shuffle/word.hpp"

namespace shuffle {

/// A state of the naive shuffle NFA. Coordinates are the lengths of the
/// remaining suffixes of u and v: the initial state is (|u|, |v|) and the
/// only final state is (0, 0).
struct GridState {
  std::size_t i = 0;
  std::size_t j = 0;

  auto operator<=>(const GridState&) const = default;
};

/// Vertical layer i + j (letters still to read) and horizontal layer i - j.
struct LayerIndex {
  std::size_t vertical = 0;
  std::ptrdiff_t horizontal = 0;

  bool operator==(const LayerIndex&) const = default;
};

inline LayerIndex layer_of(GridState s) {
  return {s.i + s.j, static_cast<std::ptrdiff_t>(s.i) - static_cast<std::ptrdiff_t>(s.j)};
}

/// Up to two successor states on one letter.
struct GridTargets {
  std::array<GridState, 2> states{};
  std::size_t count = 0;

  const GridState* begin() const { return states.data(); }
  const GridState* end() const { return states.data() + count; }
  bool empty() const { return count == 0; }
};

/// The naive shuffle NFA: an (|u|+1) x (|v|+1) grid. From (i, j) a u-step reads
/// u[|u|-i] and goes to (i-1, j); a v-step reads v[|v|-j] and goes to (i, j-1).
/// Partial: there is no sink state.
class GridNfa {
 public:
  /// Throws PreconditionError if u or v is empty.
  GridNfa(Word u, Word v);

  const Word& u() const noexcept { return u_; }
  const Word& v() const noexcept { return v_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }

  std::size_t rows() const noexcept { return u_.size() + 1; }
  std::size_t columns() const noexcept { return v_.size() + 1; }
  std::size_t state_count() const noexcept { return rows() * columns(); }
  std::size_t transition_count() const noexcept;

  GridState initial() const noexcept { return {u_.size(), v_.size()}; }
  static constexpr GridState final_state() noexcept { return {0, 0}; }

  bool contains(GridState s) const noexcept { return s.i <= u_.size() && s.j <= v_.size(); }
  std::size_t index(GridState s) const noexcept { return s.i * columns() + s.j; }
  GridState state_at(std::size_t index) const noexcept {
    return {index / columns(), index % columns()};
  }

  /// Letter on the u-step out of a state with i letters of u remaining.
  std::optional<Symbol> u_letter(std::size_t i) const noexcept {
    if (i == 0) return std::nullopt;
    return u_[u_.size() - i];
  }
  std::optional<Symbol> v_letter(std::size_t j) const noexcept {
    if (j == 0) return std::nullopt;
    return v_[v_.size() - j];
  }

  GridTargets successors(GridState s, Symbol a) const noexcept;

  /// Two outgoing transitions on a.
  bool is_nondeterministic(GridState s, Symbol a) const noexcept {
    return successors(s, a).count == 2;
  }

 private:
  Word u_;
  Word v_;
  Alphabet alphabet_;
};

GridNfa build_naive_nfa(const Word& u, const Word& v);

/// A rectangle of states all nondeterministic on one letter. `top` is the
/// corner nearest the initial state, `bottom` the exit corner on which the
/// letter is undefined. The interior is i in (bottom.i, top.i], j in (bottom.j, top.j].
struct NondetArea {
  Symbol letter = 'a';
  GridState top;
  GridState bottom;

  std::vector<GridState> states() const;
  std::vector<GridState> entrance() const;
  std::vector<GridState> exit() const;

  auto operator<=>(const NondetArea&) const = default;
};

/// True iff the tuple satisfies all three defining conditions and has a
/// non-empty interior.
bool is_nondeterministic_area(const GridNfa& nfa, const NondetArea& area);

/// All nondeterministic areas, sorted. Built from maximal runs of each
/// letter in the remaining suffixes of u and v; each is re-validated against
/// the definition before being returned.
std::vector<NondetArea> find_areas(const GridNfa& nfa);

/// Language of the NFA started at (i, j), obtained by walking its transitions.
WordSet residual_language(const GridNfa& nfa, std::size_t i, std::size_t j,
                          const EnumerationLimits& limits = EnumerationLimits::from_environment());

/// Language of the whole NFA, by walking its transitions.
WordSet nfa_language(const GridNfa& nfa,
                     const EnumerationLimits& limits = EnumerationLimits::from_environment());

/// A monotone path from the initial state to (0, 0).
struct Walk {
  std::vector<GridState> states;

  /// 0 for a u-step, 1 for a v-step.
  Trajectory trajectory() const;
  static Walk from_trajectory(const GridNfa& nfa, const Trajectory& t);

  bool operator==(const Walk&) const = default;
};

struct WalkLimits {
  std::size_t max_total_letters = 20;
};

std::vector<Walk> enumerate_walks(const GridNfa& nfa, const WalkLimits& limits = {});

struct LayerVisitReport {
  /// Indexed by vertical layer 0 … |u|+|v|.
  std::vector<std::size_t> vertical;
  /// Indexed by horizontal layer + |v|, i.e. layers −|v| … |u|.
  std::vector<std::size_t> horizontal;
  std::ptrdiff_t horizontal_offset = 0;

  bool vertical_exactly_once = false;
  bool mandatory_horizontal_visited = false;

  std::size_t horizontal_count(std::ptrdiff_t layer) const {
    return horizontal.at(static_cast<std::size_t>(layer + horizontal_offset));
  }
  bool ok() const { return vertical_exactly_once && mandatory_horizontal_visited; }
};

/// Counts layer visits. Every v-layer must be visited exactly once; h-layers
/// between 0 and |u|−|v| (inclusive, either sign) at least once.
LayerVisitReport check_layer_visits(const Walk& walk, const GridNfa& nfa);

}  // namespace shuffle
