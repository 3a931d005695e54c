// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "shuffle/dfa.hpp"
#include "shuffle/errors.hpp"
#include "shuffle/families.hpp"
#include "shuffle/grid_nfa.hpp"
#include "shuffle/periodic.hpp"
#include "shuffle/verify.hpp"

using namespace shuffle;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

// Layer and Parikh discipline, recomputed from the labels without the library check.
struct DisciplineTally {
  std::size_t constructions = 0;
  std::size_t states = 0;
  std::size_t violations = 0;
};

DisciplineTally g_discipline;

std::map<char, std::size_t> consumed(const std::string& u, const std::string& v, GridState s) {
  std::map<char, std::size_t> counts;
  for (std::size_t x = 0; x < u.size() - s.i; ++x) ++counts[u[x]];
  for (std::size_t x = 0; x < v.size() - s.j; ++x) ++counts[v[x]];
  return counts;
}

Dfa determinize(const Word& u, const Word& v, const SubsetOptions& options = {}) {
  const GridNfa nfa(u, v);
  Dfa d = subset_construction(nfa, options);
  const std::string us(u.str()), vs(v.str());
  ++g_discipline.constructions;
  for (Dfa::State s = 0; s < d.size(); ++s) {
    const auto& labels = d.labels(s);
    ++g_discipline.states;
    bool ok = !labels.empty();
    for (GridState g : labels) {
      ok = ok && g.i + g.j == labels.front().i + labels.front().j &&
           consumed(us, vs, g) == consumed(us, vs, labels.front());
    }
    if (!ok) ++g_discipline.violations;
  }
  if (!check_subset_discipline(d, nfa).ok()) ++g_discipline.violations;
  return d;
}

std::size_t minimal_size(const Word& u, const Word& v) { return minimize(determinize(u, v)).size(); }

void all_words(std::size_t length, const std::string& letters, const std::function<void(const std::string&)>& visit) {
  std::string w(length, letters[0]);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == length) return visit(w);
    for (char c : letters) {
      w[pos] = c;
      rec(pos + 1);
    }
  };
  rec(0);
}

std::set<std::string> as_strings(const WordSet& words) {
  std::set<std::string> out;
  for (const Word& w : words) out.emplace(w.str());
  return out;
}

// Closed form evaluated by hand.
std::uint64_t expected_formula(std::uint64_t U, std::uint64_t V, std::uint64_t n) {
  const std::uint64_t grid = (U + 1) * (V + 1) - V * (V + 1) / 2;
  for (std::uint64_t m = V + 1; m-- > 0;)
    if (m <= U && (U - m) % n == 0) return grid - m * (m + 1) / 2;
  return grid;
}

Outcome criterion1() {
  Outcome o;
  const GridNfa nfa(Word("bbaa"), Word("aab"));
  std::set<std::tuple<char, std::size_t, std::size_t, std::size_t, std::size_t>> got;
  for (const NondetArea& a : find_areas(nfa)) got.insert({a.letter, a.top.i, a.top.j, a.bottom.i, a.bottom.j});
  const decltype(got) expected{{'a', 2, 3, 0, 1}, {'b', 4, 1, 2, 0}};
  if (got != expected) o.fail("areas differ from the expected pair");
  if (oracle::areas("bbaa", "aab") != expected) o.fail("definition scan disagrees");
  o.detail = o.passed ? "{(a,(2,3),(0,1)), (b,(4,1),(2,0))}" : o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::size_t pairs = 0;
  for (std::size_t m = 1; m <= 5; ++m)
    for (std::size_t n = 1; n <= 5; ++n)
      all_words(m, "ab", [&](const std::string& u) {
        all_words(n, "cd", [&](const std::string& v) {
          ++pairs;
          const std::size_t got = minimal_size(Word(u), Word(v));
          if (got != (m + 1) * (n + 1)) o.fail(u + "," + v + " minimal=" + std::to_string(got));
        });
      });
  if (o.passed) o.detail = std::to_string(pairs) + " pairs";
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::mt19937 rng(20261015);
  for (int trial = 0; trial < 200; ++trial) {
    const std::string u = oracle::random_word(rng, 1, 6, "ab");
    const std::string v = oracle::random_word(rng, 1, 6, "ab");
    const Dfa d = minimize(determinize(Word(u), Word(v)));
    const auto expected = oracle::shuffle(u, v);
    if (as_strings(dfa_language(d)) != expected) o.fail(u + "," + v + ": language differs from oracle");
    if (as_strings(enumerate_shuffle(Word(u), Word(v))) != expected) o.fail(u + "," + v + ": enumeration differs");
  }
  if (o.passed) o.detail = "200 pairs";
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::size_t instances = 0;
  for (const char* base : {"ab", "abc", "abcd"}) {
    const Word w(base);
    const std::size_t n = w.size();
    for (std::size_t k = 1; k <= 4; ++k)
      for (std::size_t l = 0; l < k; ++l)
        for (std::size_t a = 1; a <= n; ++a)
          for (std::size_t b = 1; b <= n; ++b) {
            if (a + b + n * (k + l) > 24) continue;
            const PeriodicInstance p(w, w.suffix(a), k, w.suffix(b), l);
            if (!formula_precondition_failure(p).empty()) continue;
            ++instances;
            const std::uint64_t hand = expected_formula(p.u().size(), p.v().size(), n);
            const std::uint64_t formula = formula_size(p);
            const Dfa minimal = minimize(determinize(p.u(), p.v()));
            const Dfa direct = build_periodic_dfa(p);
            if (formula != hand || minimal.size() != hand || direct.size() != hand || !equivalent(direct, minimal))
              o.fail(p.describe() + " formula=" + std::to_string(formula) + " pipeline=" +
                     std::to_string(minimal.size()) + " direct=" + std::to_string(direct.size()) +
                     " hand=" + std::to_string(hand));
          }
  }
  const PeriodicInstance example(Word("abc"), Word("bc"), 2, Word("abc"), 0);
  const std::size_t pipeline = minimal_size(example.u(), example.v());
  if (formula_size(example) != 27 || pipeline != 27 || build_periodic_dfa(example).size() != 27)
    o.fail("bc(abc)^2, abc does not give 27");
  if (o.passed) o.detail = std::to_string(instances) + " instances; bc(abc)^2,abc -> 27";
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::size_t instances = 0;
  double worst = 0;
  for (const char* base : {"aabb", "aabbb", "aabbcc"}) {
    const Word w(base);
    for (std::size_t k = 0; k <= 3; ++k)
      for (std::size_t l = 0; l <= 3; ++l)
        for (std::size_t a = 0; a <= w.size(); ++a)
          for (std::size_t b = 0; b <= w.size(); ++b) {
            const Word u = w.suffix(a) + w.repeated(k), v = w.suffix(b) + w.repeated(l);
            if (u.empty() || v.empty()) continue;
            ++instances;
            const std::size_t grid = (u.size() + 1) * (v.size() + 1);
            const std::size_t got = minimal_size(u, v);
            worst = std::max(worst, double(got) / double(grid));
            if (got > 2 * grid) o.fail(std::string(u.str()) + "," + std::string(v.str()) + " minimal=" + std::to_string(got));
          }
  }
  if (o.passed) {
    std::ostringstream s;
    s << instances << " instances, max minimal/grid = " << worst;
    o.detail = s.str();
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::ostringstream s;
  for (const char* scope : {"lemma2", "lemma3", "lemma4"}) {
    const VerifyReport r = verify_scope(scope);
    if (r.verdicts.empty()) o.fail(std::string(scope) + ": no instances");
    for (const auto& v : r.verdicts)
      if (!v.passed) o.fail(std::string(scope) + ": " + v.instance + " " + v.detail);
    s << scope << " " << r.verdicts.size() - r.failures() << "/" << r.verdicts.size() << "; ";
  }
  // Proof witnesses rechecked with the membership table.
  std::size_t witnesses = 0;
  for (std::size_t len = 2; len <= 3; ++len)
    for (const Word& w : canonical_words(len, "abc"))
      for (std::size_t k = 0; k <= 4; ++k)
        for (std::size_t l = 0; l <= k; ++l)
          for (std::size_t a = 0; a < len; ++a)
            for (std::size_t b = 0; b < len; ++b) {
              if ((a == 0) != (b == 0) || a + b + len * (k + l) > 22) continue;
              const PeriodicInstance p(w, w.suffix(a), k, w.suffix(b), l);
              for (std::size_t k2 = l + 1; k2 < k; ++k2) {
                const std::size_t l2 = k + l - k2;
                if (l2 <= l || l2 >= k) continue;
                const InclusionVerdict v = check_period_change_inclusion(p, k2, l2);
                ++witnesses;
                if (!v.proof_witness || !oracle::member(v.proof_witness->str(), v.u_prime.str(), v.v_prime.str()) ||
                    oracle::member(v.proof_witness->str(), v.u.str(), v.v.str()))
                  o.fail(p.describe() + ": proof witness outside the difference");
              }
            }
  s << witnesses << " proof witnesses";
  if (o.passed) o.detail = s.str();
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::size_t pairs = 0;
  for (std::size_t m = 1; m <= 6; ++m)
    for (std::size_t n = 1; n <= m; ++n) {
      const std::uint64_t bound = oracle::eq1_sum(m, n);
      if (eq1_bound(m, n) != bound) o.fail("closed form differs at " + std::to_string(m) + "," + std::to_string(n));
      all_words(m, "ab", [&](const std::string& u) {
        all_words(n, "ab", [&](const std::string& v) {
          ++pairs;
          // The bound counts the empty subset; the construction never builds it.
          const std::size_t counted = determinize(Word(u), Word(v)).size() + 1;
          if (counted > bound) o.fail(u + "," + v + " subsets+1=" + std::to_string(counted));
        });
      });
    }
  if (o.passed) o.detail = std::to_string(pairs) + " pairs, subset count + 1 (empty set) <= bound";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::ostringstream s;
  for (std::size_t n = 1; n <= 3; ++n) {
    const ExponentialPair pair = gen_exponential_pair(n);
    const BigInt bound = exp_lower_bound(n);
    if (bound != oracle::exp_bound_by_stages(n)) o.fail("bound expression differs at n=" + std::to_string(n));
    const Dfa subset = determinize(pair.u, pair.v);
    const auto entry = run(subset, filtering_entry_prefix(n));
    const std::size_t labels = entry ? subset.labels(*entry).size() : 0;
    if (labels != n + 1) o.fail("n=" + std::to_string(n) + ": " + std::to_string(labels) + " labels after duplication");
    const std::size_t minimal = minimize(subset).size();
    if (BigInt(minimal) < bound) o.fail("n=" + std::to_string(n) + ": minimal below bound");
    s << "n=" << n << " minimal=" << minimal << ">=" << bound << " labels=" << labels << "; ";
  }
  if (exp_lower_bound(1) != 65 || exp_lower_bound(2) != 125) o.fail("bound values are not 65 and 125");
  if (o.passed) o.detail = s.str();
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::ostringstream s;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto [nu, nv] = gen_quadratic_neighbor(n);
    const std::size_t quad = 2 * (nu.size() + 1) * (nv.size() + 1);
    const std::size_t neighbor = minimal_size(nu, nv);
    const ExponentialPair pair = gen_exponential_pair(n);
    const std::size_t exponential = minimal_size(pair.u, pair.v);
    if (neighbor > quad) o.fail("n=" + std::to_string(n) + ": neighbor above quadratic bound");
    if (BigInt(exponential) <= exp_lower_bound(n)) o.fail("n=" + std::to_string(n) + ": exponential not above bound");
    s << "n=" << n << " neighbor=" << neighbor << "<=" << quad << " exponential=" << exponential << "; ";
  }
  if (o.passed) o.detail = s.str();
  return o;
}

Outcome criterion10() {
  Outcome o;
  if (g_discipline.violations != 0) o.fail(std::to_string(g_discipline.violations) + " violations");
  o.detail = std::to_string(g_discipline.constructions) + " constructions, " + std::to_string(g_discipline.states) +
             " states, " + std::to_string(g_discipline.violations) + " violations";
  return o;
}

Outcome criterion11() {
  Outcome o;
  std::size_t pairs = 0, walks = 0;
  for (std::size_t m = 1; m <= 9; ++m)
    for (std::size_t n = 1; m + n <= 10; ++n)
      all_words(m, "ab", [&](const std::string& u) {
        all_words(n, "ab", [&](const std::string& v) {
          ++pairs;
          const GridNfa nfa{Word(u), Word(v)};
          const auto all = enumerate_walks(nfa);
          walks += all.size();
          if (all.size() != oracle::binomial(m + n, m)) o.fail(u + "," + v + ": walk count");
          const long lo = std::min<long>(0, long(m) - long(n)), hi = std::max<long>(0, long(m) - long(n));
          for (const Walk& w : all) {
            std::vector<std::size_t> vertical(m + n + 1, 0);
            std::set<long> horizontal;
            for (GridState s : w.states) {
              ++vertical[s.i + s.j];
              horizontal.insert(long(s.i) - long(s.j));
            }
            bool ok = check_layer_visits(w, nfa).ok();
            for (std::size_t c : vertical) ok = ok && c == 1;
            for (long h = lo; h <= hi; ++h) ok = ok && horizontal.contains(h);
            if (!ok) o.fail(u + "," + v + ": layer visits");
          }
        });
      });
  if (o.passed) o.detail = std::to_string(pairs) + " pairs, " + std::to_string(walks) + " walks";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;  // 0: no limit
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "areas of (bbaa, aab)", 1, criterion1},
      {2, "disjoint-alphabet minimality", 10, criterion2},
      {3, "oracle equivalence on random pairs", 60, criterion3},
      {4, "periodic formula, pipeline and direct construction", 300, criterion4},
      {5, "quadratic bound for one section per letter", 120, criterion5},
      {6, "period change, period nonchange and residual sweeps", 300, criterion6},
      {7, "subset-count bound", 120, criterion7},
      {8, "exponential family lower bound", 300, criterion8},
      {9, "quadratic neighbor versus exponential pair", 600, criterion9},
      {10, "layer and Parikh discipline", 0, criterion10},
      {11, "walk bijection and layer visits", 30, criterion11},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds > c.limit_seconds) {
      std::ostringstream s;
      s << "took " << seconds << " s, limit " << c.limit_seconds << " s";
      o.fail(s.str());
    }
    if (!o.passed) ++failures;
    std::printf("%s criterion %d (%s) [%.2f s]: %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name, seconds,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", int(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
