#include "shuffle/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "shuffle/errors.hpp"

namespace shuffle {

Dfa::State Dfa::add_state(bool final) {
  const auto s = static_cast<State>(final_.size());
  final_.push_back(final ? 1 : 0);
  delta_.resize(delta_.size() + alphabet_.size(), kNoState);
  if (!labels_.empty()) labels_.emplace_back();
  return s;
}

void Dfa::set_transition(State from, std::size_t symbol_index, State to) {
  if (from >= size() || (to != kNoState && to >= size()) || symbol_index >= alphabet_.size())
    throw std::out_of_range("Dfa::set_transition: index out of range");
  delta_[from * alphabet_.size() + symbol_index] = to;
}

void Dfa::set_transition(State from, Symbol a, State to) {
  auto index = alphabet_.index_of(a);
  if (!index) throw PreconditionError(std::string("letter '") + a + "' not in the DFA alphabet");
  set_transition(from, *index, to);
}

void Dfa::set_labels(State s, std::vector<GridState> labels) {
  if (labels_.empty()) labels_.resize(size());
  labels_.at(s) = std::move(labels);
}

std::size_t Dfa::transition_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(delta_.begin(), delta_.end(), [](State t) { return t != kNoState; }));
}

Dfa::State Dfa::target(State s, Symbol a) const {
  auto index = alphabet_.index_of(a);
  return index ? target(s, *index) : kNoState;
}

const std::vector<GridState>& Dfa::labels(State s) const {
  static const std::vector<GridState> kEmpty;
  return labels_.empty() ? kEmpty : labels_.at(s);
}

namespace {

struct IndexVectorHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = v.size();
    for (std::uint32_t x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Per-letter counts of the first x letters of a word, for x = 0 … |w|.
class PrefixParikh {
 public:
  PrefixParikh(const Word& w, const Alphabet& alphabet) : width_(alphabet.size()) {
    counts_.assign((w.size() + 1) * width_, 0);
    for (std::size_t x = 0; x < w.size(); ++x) {
      std::copy_n(counts_.begin() + static_cast<std::ptrdiff_t>(x * width_), width_,
                  counts_.begin() + static_cast<std::ptrdiff_t>((x + 1) * width_));
      ++counts_[(x + 1) * width_ + *alphabet.index_of(w[x])];
    }
  }
  std::uint32_t at(std::size_t consumed, std::size_t letter) const {
    return counts_[consumed * width_ + letter];
  }

 private:
  std::size_t width_;
  std::vector<std::uint32_t> counts_;
};

class DisciplineChecker {
 public:
  explicit DisciplineChecker(const GridNfa& nfa)
      : nfa_(nfa), pu_(nfa.u(), nfa.alphabet()), pv_(nfa.v(), nfa.alphabet()) {}

  bool same_layer(const std::vector<GridState>& labels) const {
    return std::all_of(labels.begin(), labels.end(), [&](GridState s) {
      return s.i + s.j == labels.front().i + labels.front().j;
    });
  }

  bool same_parikh(const std::vector<GridState>& labels) const {
    const std::size_t m = nfa_.u().size(), n = nfa_.v().size();
    const GridState f = labels.front();
    for (const GridState& s : labels) {
      for (std::size_t a = 0; a < nfa_.alphabet().size(); ++a) {
        if (pu_.at(m - s.i, a) + pv_.at(n - s.j, a) != pu_.at(m - f.i, a) + pv_.at(n - f.j, a))
          return false;
      }
    }
    return true;
  }

 private:
  const GridNfa& nfa_;
  PrefixParikh pu_;
  PrefixParikh pv_;
};

}  // namespace

Dfa subset_construction(const GridNfa& nfa, const SubsetOptions& options) {
  const Alphabet& alphabet = nfa.alphabet();
  Dfa dfa(alphabet);
  DisciplineChecker checker(nfa);
  std::unordered_map<std::vector<std::uint32_t>, Dfa::State, IndexVectorHash> ids;
  std::vector<std::vector<std::uint32_t>> subsets;
  const auto final_index = static_cast<std::uint32_t>(nfa.index(GridNfa::final_state()));

  auto intern = [&](std::vector<std::uint32_t> subset) -> Dfa::State {
    if (auto it = ids.find(subset); it != ids.end()) return it->second;
    if (subsets.size() >= options.max_states)
      throw ResourceLimitError("subset construction exceeded " +
                               std::to_string(options.max_states) + " states");
    const bool final = std::binary_search(subset.begin(), subset.end(), final_index);
    const Dfa::State s = dfa.add_state(final);
    std::vector<GridState> labels;
    labels.reserve(subset.size());
    for (std::uint32_t x : subset) labels.push_back(nfa.state_at(x));
    if (!checker.same_layer(labels))
      throw std::logic_error("subset construction produced a state spanning several v-layers");
    if (!checker.same_parikh(labels))
      throw std::logic_error("subset construction produced a state with mixed Parikh vectors");
    dfa.set_labels(s, std::move(labels));
    ids.emplace(subset, s);
    subsets.push_back(std::move(subset));
    return s;
  };

  dfa.set_initial(intern({static_cast<std::uint32_t>(nfa.index(nfa.initial()))}));
  std::vector<std::uint32_t> next;
  for (std::size_t current = 0; current < subsets.size(); ++current) {
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
      next.clear();
      for (std::uint32_t x : subsets[current])
        for (GridState t : nfa.successors(nfa.state_at(x), alphabet[a]))
          next.push_back(static_cast<std::uint32_t>(nfa.index(t)));
      if (next.empty()) continue;
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      const Dfa::State to = intern(next);
      dfa.set_transition(static_cast<Dfa::State>(current), a, to);
    }
  }
  return dfa;
}

DisciplineReport check_subset_discipline(const Dfa& dfa, const GridNfa& nfa) {
  DisciplineChecker checker(nfa);
  DisciplineReport report;
  for (Dfa::State s = 0; s < dfa.size(); ++s) {
    const auto& labels = dfa.labels(s);
    if (labels.empty()) continue;
    report.layer_violations += !checker.same_layer(labels);
    report.parikh_violations += !checker.same_parikh(labels);
  }
  return report;
}

namespace {

// Builds the quotient of `dfa` by `class_of`, numbering classes in BFS order
// from the initial state. Labels of merged states are unioned.
Dfa quotient(const Dfa& dfa, const std::vector<std::uint32_t>& class_of) {
  const std::size_t k = dfa.alphabet().size();
  const std::uint32_t classes = class_of.empty()
                                    ? 0
                                    : *std::max_element(class_of.begin(), class_of.end()) + 1;
  std::vector<Dfa::State> representative(classes, Dfa::kNoState);
  for (Dfa::State s = 0; s < dfa.size(); ++s)
    if (representative[class_of[s]] == Dfa::kNoState) representative[class_of[s]] = s;

  std::vector<Dfa::State> renumber(classes, Dfa::kNoState);
  std::vector<std::uint32_t> order;
  renumber[class_of[dfa.initial()]] = 0;
  order.push_back(class_of[dfa.initial()]);
  for (std::size_t p = 0; p < order.size(); ++p) {
    const Dfa::State rep = representative[order[p]];
    for (std::size_t a = 0; a < k; ++a) {
      const Dfa::State t = dfa.target(rep, a);
      if (t == Dfa::kNoState) continue;
      const std::uint32_t c = class_of[t];
      if (renumber[c] == Dfa::kNoState) {
        renumber[c] = static_cast<Dfa::State>(order.size());
        order.push_back(c);
      }
    }
  }

  Dfa out(dfa.alphabet());
  for (std::uint32_t c : order) out.add_state(dfa.is_final(representative[c]));
  out.set_initial(0);
  for (std::size_t p = 0; p < order.size(); ++p) {
    const Dfa::State rep = representative[order[p]];
    for (std::size_t a = 0; a < k; ++a) {
      const Dfa::State t = dfa.target(rep, a);
      if (t != Dfa::kNoState) out.set_transition(static_cast<Dfa::State>(p), a, renumber[class_of[t]]);
    }
  }
  if (dfa.has_labels()) {
    std::vector<std::vector<GridState>> merged(order.size());
    for (Dfa::State s = 0; s < dfa.size(); ++s) {
      const Dfa::State q = renumber[class_of[s]];
      if (q == Dfa::kNoState) continue;
      merged[q].insert(merged[q].end(), dfa.labels(s).begin(), dfa.labels(s).end());
    }
    for (std::size_t q = 0; q < merged.size(); ++q) {
      std::sort(merged[q].begin(), merged[q].end());
      merged[q].erase(std::unique(merged[q].begin(), merged[q].end()), merged[q].end());
      out.set_labels(static_cast<Dfa::State>(q), std::move(merged[q]));
    }
  }
  return out;
}

}  // namespace

Dfa trim(const Dfa& dfa) {
  const std::size_t n = dfa.size(), k = dfa.alphabet().size();
  if (n == 0) throw PreconditionError("trim: automaton has no states");
  std::vector<char> forward(n, 0), backward(n, 0);
  std::vector<std::vector<Dfa::State>> reverse(n);
  for (Dfa::State s = 0; s < n; ++s)
    for (std::size_t a = 0; a < k; ++a)
      if (auto t = dfa.target(s, a); t != Dfa::kNoState) reverse[t].push_back(s);

  std::vector<Dfa::State> stack{dfa.initial()};
  forward[dfa.initial()] = 1;
  while (!stack.empty()) {
    const Dfa::State s = stack.back();
    stack.pop_back();
    for (std::size_t a = 0; a < k; ++a) {
      const Dfa::State t = dfa.target(s, a);
      if (t != Dfa::kNoState && !forward[t]) {
        forward[t] = 1;
        stack.push_back(t);
      }
    }
  }
  for (Dfa::State s = 0; s < n; ++s)
    if (dfa.is_final(s)) {
      backward[s] = 1;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    const Dfa::State s = stack.back();
    stack.pop_back();
    for (Dfa::State p : reverse[s])
      if (!backward[p]) {
        backward[p] = 1;
        stack.push_back(p);
      }
  }

  std::vector<Dfa::State> keep(n, Dfa::kNoState);
  Dfa out(dfa.alphabet());
  for (Dfa::State s = 0; s < n; ++s)
    if ((forward[s] && backward[s]) || s == dfa.initial()) keep[s] = out.add_state(dfa.is_final(s));
  out.set_initial(keep[dfa.initial()]);
  for (Dfa::State s = 0; s < n; ++s) {
    if (keep[s] == Dfa::kNoState) continue;
    for (std::size_t a = 0; a < k; ++a) {
      const Dfa::State t = dfa.target(s, a);
      if (t != Dfa::kNoState && keep[t] != Dfa::kNoState && backward[t])
        out.set_transition(keep[s], a, keep[t]);
    }
    if (dfa.has_labels()) out.set_labels(keep[s], dfa.labels(s));
  }
  return out;
}

namespace {

// States in an order where every successor precedes its predecessors.
std::vector<Dfa::State> reverse_topological_order(const Dfa& dfa) {
  const std::size_t n = dfa.size(), k = dfa.alphabet().size();
  enum : char { kWhite, kGray, kBlack };
  std::vector<char> color(n, kWhite);
  std::vector<Dfa::State> order;
  order.reserve(n);
  std::vector<std::pair<Dfa::State, std::size_t>> stack;
  for (Dfa::State root = 0; root < n; ++root) {
    if (color[root] != kWhite) continue;
    stack.emplace_back(root, 0);
    color[root] = kGray;
    while (!stack.empty()) {
      auto& [s, a] = stack.back();
      if (a == k) {
        color[s] = kBlack;
        order.push_back(s);
        stack.pop_back();
        continue;
      }
      const Dfa::State t = dfa.target(s, a++);
      if (t == Dfa::kNoState) continue;
      if (color[t] == kGray) throw PreconditionError("minimize: automaton has a cycle");
      if (color[t] == kWhite) {
        color[t] = kGray;
        stack.emplace_back(t, 0);
      }
    }
  }
  return order;
}

}  // namespace

Dfa minimize(const Dfa& dfa) {
  const Dfa t = trim(dfa);
  const std::size_t k = t.alphabet().size();
  std::vector<std::uint32_t> class_of(t.size(), 0);
  std::map<std::vector<std::uint32_t>, std::uint32_t> signatures;
  std::vector<std::uint32_t> signature(k + 1);
  for (Dfa::State s : reverse_topological_order(t)) {
    signature[0] = t.is_final(s) ? 1 : 0;
    for (std::size_t a = 0; a < k; ++a) {
      const Dfa::State target = t.target(s, a);
      signature[a + 1] = target == Dfa::kNoState ? Dfa::kNoState : class_of[target];
    }
    auto [it, inserted] =
        signatures.emplace(signature, static_cast<std::uint32_t>(signatures.size()));
    class_of[s] = it->second;
  }
  return quotient(t, class_of);
}

Dfa minimize_by_table(const Dfa& dfa) {
  const Dfa t = trim(dfa);
  reverse_topological_order(t);  // rejects cycles
  const std::size_t n = t.size(), k = t.alphabet().size();
  std::vector<char> distinct(n * n, 0);
  auto mark = [&](std::size_t p, std::size_t q) { distinct[p * n + q] = distinct[q * n + p] = 1; };
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      bool differ = t.is_final(p) != t.is_final(q);
      for (std::size_t a = 0; a < k && !differ; ++a)
        differ = (t.target(p, a) == Dfa::kNoState) != (t.target(q, a) == Dfa::kNoState);
      if (differ) mark(p, q);
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (distinct[p * n + q]) continue;
        for (std::size_t a = 0; a < k; ++a) {
          const Dfa::State tp = t.target(p, a), tq = t.target(q, a);
          if (tp != Dfa::kNoState && distinct[tp * n + tq]) {
            mark(p, q);
            changed = true;
            break;
          }
        }
      }
    }
  }
  std::vector<std::uint32_t> class_of(n, Dfa::kNoState);
  std::uint32_t classes = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (class_of[p] != Dfa::kNoState) continue;
    class_of[p] = classes;
    for (std::size_t q = p + 1; q < n; ++q)
      if (!distinct[p * n + q]) class_of[q] = classes;
    ++classes;
  }
  return quotient(t, class_of);
}

bool equivalent(const Dfa& lhs, const Dfa& rhs) {
  const Dfa a = minimize(lhs), b = minimize(rhs);
  if (a.size() != b.size()) return false;
  const Alphabet letters = Alphabet::of(Word(a.alphabet().letters()), Word(b.alphabet().letters()));
  std::vector<Dfa::State> a_to_b(a.size(), Dfa::kNoState), b_to_a(b.size(), Dfa::kNoState);
  std::deque<std::pair<Dfa::State, Dfa::State>> queue{{a.initial(), b.initial()}};
  a_to_b[a.initial()] = b.initial();
  b_to_a[b.initial()] = a.initial();
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    if (a.is_final(p) != b.is_final(q)) return false;
    for (Symbol c : letters) {
      const Dfa::State tp = a.target(p, c), tq = b.target(q, c);
      if ((tp == Dfa::kNoState) != (tq == Dfa::kNoState)) return false;
      if (tp == Dfa::kNoState) continue;
      if (a_to_b[tp] == Dfa::kNoState && b_to_a[tq] == Dfa::kNoState) {
        a_to_b[tp] = tq;
        b_to_a[tq] = tp;
        queue.emplace_back(tp, tq);
      } else if (a_to_b[tp] != tq || b_to_a[tq] != tp) {
        return false;
      }
    }
  }
  return true;
}

std::optional<Dfa::State> run(const Dfa& dfa, const Word& z) {
  if (dfa.size() == 0) return std::nullopt;
  Dfa::State s = dfa.initial();
  for (Symbol c : z) {
    s = dfa.target(s, c);
    if (s == Dfa::kNoState) return std::nullopt;
  }
  return s;
}

bool accepts(const Dfa& dfa, const Word& z) {
  auto s = run(dfa, z);
  return s && dfa.is_final(*s);
}

WordSet dfa_language(const Dfa& dfa, const EnumerationLimits& limits) {
  const Dfa t = trim(dfa);
  WordSet out;
  WordBuilder buffer;
  auto visit = [&](auto& self, Dfa::State s) -> void {
    if (t.is_final(s)) out.insert(buffer.build());
    for (std::size_t a = 0; a < t.alphabet().size(); ++a) {
      const Dfa::State next = t.target(s, a);
      if (next == Dfa::kNoState) continue;
      if (buffer.size() == limits.max_total_letters)
        throw ResourceLimitError("dfa_language: accepted words longer than enumeration cap " +
                                 std::to_string(limits.max_total_letters));
      buffer.push_back(t.alphabet()[a]);
      self(self, next);
      buffer.pop_back();
    }
  };
  visit(visit, t.initial());
  return out;
}

BigInt eq1_bound(std::size_t m, std::size_t n) {
  if (n > m)
    throw PreconditionError("eq1_bound: expects m >= n, got m=" + std::to_string(m) +
                            ", n=" + std::to_string(n));
  BigInt power = 1;
  power <<= n + 1;
  return power * (m - n + 3) - m - n - 4;
}

SizeReport measure(const Word& u, const Word& v, const SubsetOptions& options) {
  const GridNfa nfa(u, v);
  const Dfa subset = subset_construction(nfa, options);
  const Dfa minimal = minimize(subset);
  SizeReport report;
  report.u = u;
  report.v = v;
  report.nfa_states = nfa.state_count();
  report.subset_dfa_states = subset.size();
  report.minimal_dfa_states = minimal.size();
  report.eq1_bound = eq1_bound(std::max(u.size(), v.size()), std::min(u.size(), v.size()));
  return report;
}

}  // namespace shuffle
