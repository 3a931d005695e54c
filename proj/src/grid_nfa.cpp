#include "shuffle/grid_nfa.hpp"

#include <algorithm>

#include "shuffle/errors.hpp"

namespace shuffle {

GridNfa::GridNfa(Word u, Word v) : u_(std::move(u)), v_(std::move(v)) {
  if (u_.empty() || v_.empty())
    throw PreconditionError("naive shuffle NFA requires non-empty u and v");
  alphabet_ = Alphabet::of(u_, v_);
}

std::size_t GridNfa::transition_count() const noexcept {
  // u-steps from every state with i >= 1, v-steps from every state with j >= 1.
  return u_.size() * columns() + v_.size() * rows();
}

GridTargets GridNfa::successors(GridState s, Symbol a) const noexcept {
  GridTargets out;
  if (auto x = u_letter(s.i); x && *x == a) out.states[out.count++] = {s.i - 1, s.j};
  if (auto y = v_letter(s.j); y && *y == a) out.states[out.count++] = {s.i, s.j - 1};
  return out;
}

GridNfa build_naive_nfa(const Word& u, const Word& v) { return GridNfa(u, v); }

std::vector<GridState> NondetArea::states() const {
  std::vector<GridState> out;
  for (std::size_t i = top.i; i > bottom.i; --i)
    for (std::size_t j = top.j; j > bottom.j; --j) out.push_back({i, j});
  return out;
}

std::vector<GridState> NondetArea::entrance() const {
  std::vector<GridState> out;
  for (std::size_t j = bottom.j; j <= top.j; ++j) out.push_back({top.i, j});
  for (std::size_t i = bottom.i; i <= top.i; ++i) out.push_back({i, top.j});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<GridState> NondetArea::exit() const {
  std::vector<GridState> out;
  for (std::size_t j = bottom.j; j <= top.j; ++j) out.push_back({bottom.i, j});
  for (std::size_t i = bottom.i; i <= top.i; ++i) out.push_back({i, bottom.j});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_nondeterministic_area(const GridNfa& nfa, const NondetArea& r) {
  const auto& [a, top, bottom] = r;
  if (!(nfa.u().size() >= top.i && top.i > bottom.i)) return false;
  if (!(nfa.v().size() >= top.j && top.j > bottom.j)) return false;
  for (const GridState& s : r.states())
    if (!nfa.is_nondeterministic(s, a)) return false;
  const GridState above_i{top.i + 1, top.j};
  const GridState above_j{top.i, top.j + 1};
  if (nfa.contains(above_i) && nfa.is_nondeterministic(above_i, a)) return false;
  if (nfa.contains(above_j) && nfa.is_nondeterministic(above_j, a)) return false;
  return nfa.successors(bottom, a).empty();
}

namespace {

// Maximal runs (lo, hi] of remaining-suffix lengths whose next letter is a.
std::vector<std::pair<std::size_t, std::size_t>> runs_of(const Word& w, Symbol a) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t len = 1;
  while (len <= w.size()) {
    if (w[w.size() - len] != a) {
      ++len;
      continue;
    }
    const std::size_t lo = len - 1;
    while (len <= w.size() && w[w.size() - len] == a) ++len;
    out.emplace_back(lo, len - 1);
  }
  return out;
}

}  // namespace

std::vector<NondetArea> find_areas(const GridNfa& nfa) {
  std::vector<NondetArea> out;
  for (Symbol a : nfa.alphabet()) {
    const auto u_runs = runs_of(nfa.u(), a);
    const auto v_runs = runs_of(nfa.v(), a);
    for (auto [ilo, ihi] : u_runs) {
      for (auto [jlo, jhi] : v_runs) {
        NondetArea area{a, {ihi, jhi}, {ilo, jlo}};
        if (is_nondeterministic_area(nfa, area)) out.push_back(area);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct NfaWalker {
  const GridNfa& nfa;
  WordBuilder buffer;
  WordSet out;

  void run(GridState s) {
    if (s == GridNfa::final_state()) {
      out.insert(buffer.build());
      return;
    }
    if (auto a = nfa.u_letter(s.i)) {
      buffer.push_back(*a);
      run({s.i - 1, s.j});
      buffer.pop_back();
    }
    if (auto b = nfa.v_letter(s.j)) {
      buffer.push_back(*b);
      run({s.i, s.j - 1});
      buffer.pop_back();
    }
  }
};

}  // namespace

WordSet residual_language(const GridNfa& nfa, std::size_t i, std::size_t j,
                          const EnumerationLimits& limits) {
  if (!nfa.contains({i, j}))
    throw PreconditionError("residual_language: state (" + std::to_string(i) + "," +
                            std::to_string(j) + ") outside the grid");
  if (i + j > limits.max_total_letters)
    throw ResourceLimitError("residual_language: " + std::to_string(i + j) +
                             " letters exceed enumeration cap " +
                             std::to_string(limits.max_total_letters));
  NfaWalker walker{nfa, {}, {}};
  walker.run({i, j});
  return std::move(walker.out);
}

WordSet nfa_language(const GridNfa& nfa, const EnumerationLimits& limits) {
  return residual_language(nfa, nfa.u().size(), nfa.v().size(), limits);
}

Trajectory Walk::trajectory() const {
  std::vector<bool> bits;
  for (std::size_t p = 1; p < states.size(); ++p) bits.push_back(states[p].j != states[p - 1].j);
  return Trajectory(std::move(bits));
}

Walk Walk::from_trajectory(const GridNfa& nfa, const Trajectory& t) {
  if (t.zeros() != nfa.u().size() || t.ones() != nfa.v().size())
    throw PreconditionError("trajectory does not match the NFA's word lengths");
  Walk w;
  GridState s = nfa.initial();
  w.states.push_back(s);
  for (std::size_t p = 0; p < t.size(); ++p) {
    if (t[p]) --s.j;
    else --s.i;
    w.states.push_back(s);
  }
  return w;
}

std::vector<Walk> enumerate_walks(const GridNfa& nfa, const WalkLimits& limits) {
  const std::size_t total = nfa.u().size() + nfa.v().size();
  if (total > limits.max_total_letters)
    throw ResourceLimitError("enumerate_walks: " + std::to_string(total) +
                             " letters exceed walk cap " +
                             std::to_string(limits.max_total_letters));
  std::vector<Walk> out;
  Walk current;
  auto extend = [&](auto& self, GridState s) -> void {
    current.states.push_back(s);
    if (s == GridNfa::final_state()) out.push_back(current);
    if (s.i > 0) self(self, GridState{s.i - 1, s.j});
    if (s.j > 0) self(self, GridState{s.i, s.j - 1});
    current.states.pop_back();
  };
  extend(extend, nfa.initial());
  return out;
}

LayerVisitReport check_layer_visits(const Walk& walk, const GridNfa& nfa) {
  const std::size_t m = nfa.u().size(), n = nfa.v().size();
  LayerVisitReport r;
  r.vertical.assign(m + n + 1, 0);
  r.horizontal.assign(m + n + 1, 0);
  r.horizontal_offset = static_cast<std::ptrdiff_t>(n);
  for (const GridState& s : walk.states) {
    const LayerIndex layer = layer_of(s);
    ++r.vertical.at(layer.vertical);
    ++r.horizontal.at(static_cast<std::size_t>(layer.horizontal + r.horizontal_offset));
  }
  r.vertical_exactly_once =
      std::all_of(r.vertical.begin(), r.vertical.end(), [](std::size_t c) { return c == 1; });
  const auto diff = static_cast<std::ptrdiff_t>(m) - static_cast<std::ptrdiff_t>(n);
  r.mandatory_horizontal_visited = true;
  for (std::ptrdiff_t h = std::min<std::ptrdiff_t>(0, diff); h <= std::max<std::ptrdiff_t>(0, diff);
       ++h)
    r.mandatory_horizontal_visited = r.mandatory_horizontal_visited && r.horizontal_count(h) >= 1;
  return r;
}

}  // namespace shuffle
