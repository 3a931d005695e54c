#include "shuffle/periodic.hpp"

#include <algorithm>
#include <deque>
#include <iterator>
#include <stdexcept>

#include "shuffle/errors.hpp"

namespace shuffle {

PeriodicInstance::PeriodicInstance(Word w, Word w1, std::size_t k, Word w2, std::size_t l) {
  if (w.empty()) throw PreconditionError("periodic instance: base word w must be non-empty");
  if (!is_suffix(w1, w)) throw PreconditionError("periodic instance: w1 is not a suffix of w");
  if (!is_suffix(w2, w)) throw PreconditionError("periodic instance: w2 is not a suffix of w");
  if (k < l) throw PreconditionError("periodic instance: requires k >= l");
  u_form_ = PeriodicForm{w, std::move(w1), k};
  v_form_ = PeriodicForm{std::move(w), std::move(w2), l};
}

std::string PeriodicInstance::describe() const {
  return "w=" + std::string(base().str()) + " w1=" + std::string(u_form_.prefix.str()) +
         " k=" + std::to_string(u_form_.exponent) + " w2=" + std::string(v_form_.prefix.str()) +
         " l=" + std::to_string(v_form_.exponent);
}

namespace {

PeriodicForm with_nonempty_prefix(PeriodicForm f) {
  if (f.prefix.empty() && f.exponent > 0) {
    f.prefix = f.base;
    --f.exponent;
  }
  return f;
}

}  // namespace

std::vector<PeriodicInstance> recognize_periodic(const Word& u, const Word& v,
                                                 std::size_t max_base) {
  std::vector<Word> bases;
  for (std::size_t len = 2; len <= max_base; ++len) {
    if (u.size() >= len) bases.push_back(u.suffix(len));
    if (v.size() >= len) bases.push_back(v.suffix(len));
  }
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());

  std::vector<PeriodicInstance> out;
  for (const Word& w : bases) {
    auto du = periodic_decompose(u, w);
    auto dv = periodic_decompose(v, w);
    if (!du || !dv) continue;
    PeriodicForm fu = with_nonempty_prefix(*du), fv = with_nonempty_prefix(*dv);
    if (fu.exponent < fv.exponent) std::swap(fu, fv);
    out.emplace_back(w, fu.prefix, fu.exponent, fv.prefix, fv.exponent);
  }
  return out;
}

namespace {

void require(bool condition, const std::string& clause) {
  if (!condition) throw PreconditionError("hypothesis violated: " + clause);
}

void require_two_letter_base(const PeriodicInstance& inst) {
  require(inst.period() >= 2, "|w| >= 2");
  require(distinct_letters(inst.base()) >= 2, "w has at least two distinct letters");
}

void require_period_change(const PeriodicInstance& inst, std::size_t k2, std::size_t l2) {
  require_two_letter_base(inst);
  const std::size_t k = inst.u_form().exponent, l = inst.v_form().exponent;
  const std::size_t n = inst.period();
  const Word& w1 = inst.u_form().prefix;
  const Word& w2 = inst.v_form().prefix;
  require(l < k2, "l < k'");
  require(k2 < k, "k' < k");
  require(l < l2, "l < l'");
  require(l2 < k, "l' < k");
  require(k + l == k2 + l2, "k + l = k' + l'");
  const bool both_empty = w1.empty() && w2.empty();
  const bool both_proper = !w1.empty() && !w2.empty() && w1.size() < n && w2.size() < n;
  require(both_empty || both_proper, "w1, w2 both empty or both non-empty proper suffixes of w");
}

// Least element of `bigger` not in `smaller`, plus the subset test.
void compare_sets(const WordSet& smaller, const WordSet& bigger, InclusionVerdict& verdict) {
  verdict.subset = std::includes(bigger.begin(), bigger.end(), smaller.begin(), smaller.end());
  std::vector<Word> difference;
  std::set_difference(bigger.begin(), bigger.end(), smaller.begin(), smaller.end(),
                      std::back_inserter(difference));
  verdict.proper = !difference.empty();
  if (verdict.proper) verdict.witness = difference.front();
}

}  // namespace

Trajectory period_change_witness_trajectory(const PeriodicInstance& inst, std::size_t k2,
                                            std::size_t l2) {
  require_period_change(inst, k2, l2);
  const std::size_t n = inst.period();
  const std::size_t w1 = inst.u_form().prefix.size(), w2 = inst.v_form().prefix.size();
  const std::size_t u_len = w1 + k2 * n, v_len = w2 + l2 * n;
  const std::size_t shared = std::min(k2, l2) * n;
  std::string bits;
  if (w1 >= w2) {
    bits.append(w1 - w2, '0');
    for (std::size_t p = 0; p < w2 + shared; ++p) bits += "01";
  } else {
    bits.append(w2 - w1, '1');
    for (std::size_t p = 0; p < w1 + shared; ++p) bits += "01";
  }
  const auto zeros = static_cast<std::size_t>(std::count(bits.begin(), bits.end(), '0'));
  const std::size_t ones = bits.size() - zeros;
  bits.append(u_len - zeros, '0');
  bits.append(v_len - ones, '1');
  return Trajectory(bits);
}

InclusionVerdict check_period_change_inclusion(const PeriodicInstance& inst, std::size_t k2,
                                               std::size_t l2, const EnumerationLimits& limits) {
  require_period_change(inst, k2, l2);
  const Word& w = inst.base();
  InclusionVerdict verdict;
  verdict.u = inst.u();
  verdict.v = inst.v();
  verdict.u_prime = inst.u_form().prefix + w.repeated(k2);
  verdict.v_prime = inst.v_form().prefix + w.repeated(l2);
  const WordSet original = enumerate_shuffle(verdict.u, verdict.v, limits);
  const WordSet moved = enumerate_shuffle(verdict.u_prime, verdict.v_prime, limits);
  compare_sets(original, moved, verdict);

  const Trajectory t = period_change_witness_trajectory(inst, k2, l2);
  Word z = shuffle_on_trajectory(verdict.u_prime, verdict.v_prime, t);
  verdict.proof_witness_in_difference = moved.contains(z) && !original.contains(z);
  verdict.proof_witness = std::move(z);
  return verdict;
}

InclusionVerdict check_period_nonchange_inclusion(const PeriodicInstance& inst,
                                                  const EnumerationLimits& limits) {
  require_two_letter_base(inst);
  const Word& w1 = inst.u_form().prefix;
  const Word& w2 = inst.v_form().prefix;
  const std::size_t k = inst.u_form().exponent, l = inst.v_form().exponent;
  require(l < k, "l < k");
  require(is_suffix(w2, w1) && w2.size() < w1.size(), "w2 is a proper suffix of w1");

  InclusionVerdict verdict;
  verdict.u = inst.u();
  verdict.v = inst.v();
  verdict.u_prime = w2 + inst.base().repeated(k);
  verdict.v_prime = w1 + inst.base().repeated(l);
  compare_sets(enumerate_shuffle(verdict.u, verdict.v, limits),
               enumerate_shuffle(verdict.u_prime, verdict.v_prime, limits), verdict);
  return verdict;
}

void check_residual_conditions(const PeriodicInstance& inst, std::size_t i, std::size_t j,
                               std::size_t i2, std::size_t j2) {
  require_two_letter_base(inst);
  const std::size_t u_len = inst.u().size(), v_len = inst.v().size();
  const std::size_t n = inst.period();
  auto in_range = [](std::size_t x, std::size_t hi) { return x >= 1 && x <= hi; };
  require(in_range(i, u_len) && in_range(i2, u_len) && in_range(j, v_len) && in_range(j2, v_len),
          "condition 1 (index bounds)");
  require(i + j == i2 + j2, "condition 2 (i+j = i'+j')");
  auto residues = [n](std::size_t a, std::size_t b) {
    return std::pair{std::min(a % n, b % n), std::max(a % n, b % n)};
  };
  require(residues(i, j) == residues(i2, j2), "condition 3 (equal residues mod n)");
  auto gap = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };
  require(gap(i, j) >= gap(i2, j2), "condition 4 (|i-j| >= |i'-j'|)");
}

ResidualTable::ResidualTable(const PeriodicInstance& inst, const EnumerationLimits& limits)
    : inst_(inst), nfa_(inst.u(), inst.v()), limits_(limits), cache_(nfa_.state_count()) {}

const WordSet& ResidualTable::at(std::size_t i, std::size_t j) const {
  auto& slot = cache_.at(nfa_.index({i, j}));
  if (!slot) slot = residual_language(nfa_, i, j, limits_);
  return *slot;
}

ResidualVerdict residual_inclusion(const ResidualTable& table, std::size_t i, std::size_t j,
                                   std::size_t i2, std::size_t j2) {
  check_residual_conditions(table.instance(), i, j, i2, j2);
  const WordSet& lhs = table.at(i, j);
  const WordSet& rhs = table.at(i2, j2);
  ResidualVerdict verdict;
  verdict.subset = std::includes(rhs.begin(), rhs.end(), lhs.begin(), lhs.end());
  verdict.reverse_subset = std::includes(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
  verdict.equal = verdict.subset && verdict.reverse_subset;
  verdict.expected_equal = std::minmax(i, j) == std::minmax(i2, j2);
  return verdict;
}

ResidualVerdict residual_inclusion(const PeriodicInstance& inst, std::size_t i, std::size_t j,
                                   std::size_t i2, std::size_t j2,
                                   const EnumerationLimits& limits) {
  check_residual_conditions(inst, i, j, i2, j2);
  return residual_inclusion(ResidualTable(inst, limits), i, j, i2, j2);
}

std::optional<std::size_t> formula_m(std::size_t u_len, std::size_t v_len, std::size_t n) {
  for (std::size_t m = std::min(v_len, u_len) + 1; m-- > 0;)
    if ((u_len - m) % n == 0) return m;
  return std::nullopt;
}

std::string formula_precondition_failure(const PeriodicInstance& inst) {
  const Word& w1 = inst.u_form().prefix;
  const Word& w2 = inst.v_form().prefix;
  const std::size_t k = inst.u_form().exponent, l = inst.v_form().exponent;
  if (inst.period() < 2) return "|w| >= 2";
  if (!is_non_repeating(inst.base())) return "w is non-repeating";
  if (w1.empty() || w2.empty()) return "w1 and w2 are non-empty";
  if (k == l) {
    if (k == 0) return "k = l = 0 is outside the closed form";
    if (w1.size() < w2.size()) return "k = l requires |w1| >= |w2|";
  }
  return {};
}

std::uint64_t formula_size(const PeriodicInstance& inst) {
  if (auto failure = formula_precondition_failure(inst); !failure.empty())
    throw PreconditionError("formula_size: requires " + failure);
  const std::uint64_t U = inst.u().size(), V = inst.v().size(), n = inst.period();
  const std::uint64_t grid = (U + 1) * (V + 1) - V * (V + 1) / 2;
  if (inst.u_form().exponent > inst.v_form().exponent) {
    const std::uint64_t m = formula_m(U, V, n).value_or(0);
    return grid - m * (m + 1) / 2;
  }
  return grid - (U - n) * (U - n + 1) / 2;
}

GridAutomaton::GridAutomaton(GridNfa nfa)
    : nfa_(std::move(nfa)), edges_(nfa_.state_count()), alive_(nfa_.state_count(), 1) {
  for (std::size_t x = 0; x < nfa_.state_count(); ++x) {
    const GridState s = nfa_.state_at(x);
    if (auto a = nfa_.u_letter(s.i)) edges_[x].push_back({*a, {s.i - 1, s.j}});
    if (auto b = nfa_.v_letter(s.j)) edges_[x].push_back({*b, {s.i, s.j - 1}});
  }
}

std::size_t GridAutomaton::state_count() const noexcept {
  return static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), 1));
}

void GridAutomaton::redirect(GridState from, Symbol a, GridState to) {
  auto& edges = edges_.at(nfa_.index(from));
  const GridEdge keep{a, to};
  if (std::find(edges.begin(), edges.end(), keep) == edges.end())
    throw std::logic_error("redirect: no such transition");
  std::erase_if(edges, [&](const GridEdge& e) { return e.letter == a && !(e == keep); });
}

std::size_t GridAutomaton::remove_unreachable() {
  std::vector<char> seen(alive_.size(), 0);
  std::vector<GridState> stack{nfa_.initial()};
  seen[nfa_.index(nfa_.initial())] = 1;
  while (!stack.empty()) {
    const GridState s = stack.back();
    stack.pop_back();
    for (const GridEdge& e : edges_[nfa_.index(s)]) {
      auto& flag = seen[nfa_.index(e.target)];
      if (!flag) {
        flag = 1;
        stack.push_back(e.target);
      }
    }
  }
  std::size_t removed = 0;
  for (std::size_t x = 0; x < alive_.size(); ++x) {
    if (alive_[x] && !seen[x]) {
      alive_[x] = 0;
      edges_[x].clear();
      ++removed;
    }
  }
  return removed;
}

bool GridAutomaton::is_nondeterministic(GridState s) const {
  const auto e = edges(s);
  return e.size() == 2 && e[0].letter == e[1].letter;
}

bool GridAutomaton::is_deterministic() const {
  for (std::size_t x = 0; x < alive_.size(); ++x)
    if (alive_[x] && is_nondeterministic(nfa_.state_at(x))) return false;
  return true;
}

WordSet GridAutomaton::language(const EnumerationLimits& limits) const {
  const std::size_t total = nfa_.u().size() + nfa_.v().size();
  if (total > limits.max_total_letters)
    throw ResourceLimitError("GridAutomaton::language: " + std::to_string(total) +
                             " letters exceed enumeration cap");
  WordSet out;
  WordBuilder buffer;
  auto visit = [&](auto& self, GridState s) -> void {
    if (s == GridNfa::final_state()) out.insert(buffer.build());
    for (const GridEdge& e : edges(s)) {
      buffer.push_back(e.letter);
      self(self, e.target);
      buffer.pop_back();
    }
  };
  visit(visit, nfa_.initial());
  return out;
}

Dfa GridAutomaton::to_dfa() const {
  if (!is_deterministic()) throw std::logic_error("to_dfa: automaton is still nondeterministic");
  Dfa dfa(nfa_.alphabet());
  std::vector<Dfa::State> id(alive_.size(), Dfa::kNoState);
  std::deque<GridState> queue;
  auto intern = [&](GridState s) {
    auto& slot = id[nfa_.index(s)];
    if (slot == Dfa::kNoState) {
      slot = dfa.add_state(s == GridNfa::final_state());
      dfa.set_labels(slot, {s});
      queue.push_back(s);
    }
    return slot;
  };
  dfa.set_initial(intern(nfa_.initial()));
  while (!queue.empty()) {
    const GridState s = queue.front();
    queue.pop_front();
    const Dfa::State from = id[nfa_.index(s)];
    for (const GridEdge& e : edges(s)) dfa.set_transition(from, e.letter, intern(e.target));
  }
  return dfa;
}

GridAutomaton prune_below_diagonal(GridAutomaton a, const PeriodicInstance& inst) {
  const std::size_t v_len = inst.v().size();
  for (std::size_t i = 1; i <= v_len; ++i) {
    const GridState s{i, i};
    if (!a.alive(s)) continue;
    if (!a.is_nondeterministic(s))
      throw std::logic_error("prune_below_diagonal: diagonal state is deterministic");
    a.redirect(s, a.edges(s).front().letter, {i, i - 1});
  }
  a.remove_unreachable();
  return a;
}

GridAutomaton prune_above_m_layer(GridAutomaton a, const PeriodicInstance& inst) {
  const std::size_t u_len = inst.u().size(), v_len = inst.v().size();
  const std::size_t m = formula_m(u_len, v_len, inst.period()).value_or(0);
  for (std::size_t p = 0; p < m; ++p) {
    const GridState s{u_len - p, m - p};
    if (!a.alive(s)) continue;
    if (!a.is_nondeterministic(s))
      throw std::logic_error("prune_above_m_layer: state on layer |u|-m is deterministic");
    a.redirect(s, a.edges(s).front().letter, {s.i - 1, s.j});
  }
  a.remove_unreachable();
  return a;
}

GridAutomaton determinize_interior(GridAutomaton a, const PeriodicInstance&) {
  const GridNfa& grid = a.grid();
  for (std::size_t x = 0; x < grid.state_count(); ++x) {
    const GridState s = grid.state_at(x);
    if (!a.alive(s) || !a.is_nondeterministic(s)) continue;
    if (s.i <= s.j) throw std::logic_error("determinize_interior: nondeterminism at i <= j");
    a.redirect(s, a.edges(s).front().letter, {s.i - 1, s.j});
  }
  a.remove_unreachable();
  return a;
}

Dfa build_periodic_dfa(const PeriodicInstance& inst) {
  if (auto failure = formula_precondition_failure(inst); !failure.empty())
    throw PreconditionError("build_periodic_dfa: requires " + failure);
  if (inst.u_form().exponent <= inst.v_form().exponent)
    throw PreconditionError("build_periodic_dfa: requires k > l");
  GridAutomaton a{GridNfa(inst.u(), inst.v())};
  a = prune_below_diagonal(std::move(a), inst);
  a = prune_above_m_layer(std::move(a), inst);
  a = determinize_interior(std::move(a), inst);
  return a.to_dfa();
}

QuadraticBoundReport check_quadratic_bound(const PeriodicInstance& inst,
                                           const SubsetOptions& options) {
  require(inst.period() >= 2, "|w| >= 2");
  require(has_one_section_per_letter(inst.base()), "skeleton of w is non-repeating");
  QuadraticBoundReport report;
  report.sizes = measure(inst.u(), inst.v(), options);
  const std::uint64_t grid = (inst.u().size() + 1) * (inst.v().size() + 1);
  report.bound = 2 * grid;
  report.ratio = static_cast<double>(report.sizes.minimal_dfa_states) / static_cast<double>(grid);
  if (formula_precondition_failure(inst).empty())
    report.sizes.formula_prediction = BigInt(formula_size(inst));
  return report;
}

}  // namespace shuffle
