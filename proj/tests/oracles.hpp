#pragma once

// Reference implementations used only by tests. They work on plain strings
// and do not call into the library.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace oracle {

// All interleavings, by permuting a sorted trajectory.
inline std::set<std::string> shuffle(const std::string& u, const std::string& v) {
  std::string t(u.size(), '0');
  t.append(v.size(), '1');
  std::set<std::string> out;
  do {
    std::string z;
    std::size_t a = 0, b = 0;
    for (char c : t) z += c == '0' ? u[a++] : v[b++];
    out.insert(z);
  } while (std::next_permutation(t.begin(), t.end()));
  return out;
}

// Classic table: ok[x][y] iff z[0..x+y) is a shuffle of u[0..x) and v[0..y).
inline bool member(std::string_view z, std::string_view u, std::string_view v) {
  if (z.size() != u.size() + v.size()) return false;
  std::vector<std::vector<char>> ok(u.size() + 1, std::vector<char>(v.size() + 1, 0));
  ok[0][0] = 1;
  for (std::size_t x = 0; x <= u.size(); ++x)
    for (std::size_t y = 0; y <= v.size(); ++y) {
      if (x > 0 && ok[x - 1][y] && u[x - 1] == z[x + y - 1]) ok[x][y] = 1;
      if (y > 0 && ok[x][y - 1] && v[y - 1] == z[x + y - 1]) ok[x][y] = 1;
    }
  return ok[u.size()][v.size()] != 0;
}

using State = std::pair<std::size_t, std::size_t>;  // remaining (i, j)

// Successors of (i, j) on a in the naive grid automaton.
inline std::vector<State> step(const std::string& u, const std::string& v, State s, char a) {
  std::vector<State> out;
  if (s.first > 0 && u[u.size() - s.first] == a) out.push_back({s.first - 1, s.second});
  if (s.second > 0 && v[v.size() - s.second] == a) out.push_back({s.first, s.second - 1});
  return out;
}

// Nondeterministic areas straight from the definition, by scanning every tuple.
// Tuples with an empty interior are left out.
inline std::set<std::tuple<char, std::size_t, std::size_t, std::size_t, std::size_t>> areas(
    const std::string& u, const std::string& v) {
  std::set<char> letters(u.begin(), u.end());
  letters.insert(v.begin(), v.end());
  const std::size_t U = u.size(), V = v.size();
  auto nondet = [&](std::size_t i, std::size_t j, char a) { return step(u, v, {i, j}, a).size() == 2; };
  std::set<std::tuple<char, std::size_t, std::size_t, std::size_t, std::size_t>> out;
  for (char a : letters)
    for (std::size_t i1 = 0; i1 <= U; ++i1)
      for (std::size_t j1 = 0; j1 <= V; ++j1)
        for (std::size_t i2 = 0; i2 < i1; ++i2)
          for (std::size_t j2 = 0; j2 < j1; ++j2) {
            bool ok = true;
            for (std::size_t i = i2 + 1; i <= i1 && ok; ++i)
              for (std::size_t j = j2 + 1; j <= j1 && ok; ++j) ok = nondet(i, j, a);
            if (!ok) continue;
            if (i1 + 1 <= U && nondet(i1 + 1, j1, a)) continue;
            if (j1 + 1 <= V && nondet(i1, j1 + 1, a)) continue;
            if (!step(u, v, {i2, j2}, a).empty()) continue;
            out.insert({a, i1, j1, i2, j2});
          }
  return out;
}

// Reachable subsets of the grid automaton (empty subset excluded).
inline std::set<std::set<State>> subsets(const std::string& u, const std::string& v) {
  std::set<char> letters(u.begin(), u.end());
  letters.insert(v.begin(), v.end());
  std::set<std::set<State>> seen{{State{u.size(), v.size()}}};
  std::vector<std::set<State>> todo{{State{u.size(), v.size()}}};
  while (!todo.empty()) {
    const auto cur = todo.back();
    todo.pop_back();
    for (char a : letters) {
      std::set<State> next;
      for (State s : cur)
        for (State t : step(u, v, s, a)) next.insert(t);
      if (!next.empty() && seen.insert(next).second) todo.push_back(next);
    }
  }
  return seen;
}

// Subset-count bound in its summation form: 2 sum_{i=1}^{n} (2^i - 1) + (m-n+1)(2^{n+1} - 1) + 1.
inline std::uint64_t eq1_sum(std::uint64_t m, std::uint64_t n) {
  std::uint64_t total = 1;
  for (std::uint64_t i = 1; i <= n; ++i) total += 2 * ((std::uint64_t{1} << i) - 1);
  return total + (m - n + 1) * ((std::uint64_t{1} << (n + 1)) - 1);
}

// Lower bound from per-stage subset counts: 4(n+1) sets on a(aabb)^n aaa,
// 3 + 8*2 + ... + 8*2^n + 5*2^{n+1} during the filtering stage, then the
// 4(n+1) + 10 letters of the tail.
inline std::uint64_t exp_bound_by_stages(std::uint64_t n) {
  std::uint64_t filtering = 3 + 5 * (std::uint64_t{1} << (n + 1));
  for (std::uint64_t i = 1; i <= n; ++i) filtering += 8 * (std::uint64_t{1} << i);
  return 4 * (n + 1) + filtering + 4 * (n + 1) + 10;
}

inline std::string random_word(std::mt19937& rng, std::size_t min_len, std::size_t max_len,
                               const std::string& letters) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::string w(len(rng), 'a');
  for (char& c : w) c = letters[pick(rng)];
  return w;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t x = 1; x <= k; ++x) r = r * (n - k + x) / x;
  return r;
}

}  // namespace oracle
