#include "shuffle/families.hpp"

#include <algorithm>
#include <chrono>

#include "shuffle/errors.hpp"

namespace shuffle {

namespace {

const Word kBlock("aabb");

void require_positive(std::size_t n, const char* what) {
  if (n == 0) throw PreconditionError(std::string(what) + ": requires n >= 1");
}

}  // namespace

ExponentialPair gen_exponential_pair(std::size_t n) {
  require_positive(n, "gen_exponential_pair");
  const Word outer = kBlock.repeated(n);
  ExponentialPair pair{n, outer + Word("aabbaabb") + outer + Word("aaaaa"),
                       outer + Word("aabababb") + outer + Word("bbbbb")};
  if (pair.u.size() != 8 * n + 13 || pair.v.size() != 8 * n + 13)
    throw std::logic_error("gen_exponential_pair: length is not 8n+13");
  return pair;
}

ProbeWord gen_probe(std::size_t n, const std::vector<bool>& choices) {
  require_positive(n, "gen_probe");
  if (choices.size() != n + 1)
    throw PreconditionError("gen_probe: expected " + std::to_string(n + 1) + " choices, got " +
                            std::to_string(choices.size()));
  Word word = filtering_entry_prefix(n);
  for (bool keep_cut : choices) word += Word(keep_cut ? "bbbbaaaa" : "bbbabaaa");
  word += Word("bbbb") + kBlock.repeated(n) + Word("aaaaabbbbb");
  return ProbeWord{n, choices, std::move(word)};
}

std::vector<bool> parse_choices(std::string_view bits) {
  std::vector<bool> out;
  for (char c : bits) {
    if (c != '0' && c != '1') throw PreconditionError("choices must be a string of 0s and 1s");
    out.push_back(c == '1');
  }
  return out;
}

BigInt exp_lower_bound(std::size_t n) {
  require_positive(n, "exp_lower_bound");
  BigInt power = 1;
  power <<= n + 1;
  return BigInt(8 * (n + 1)) + 13 * (power - 1) + 10;
}

std::pair<Word, Word> gen_quadratic_neighbor(std::size_t n) {
  require_positive(n, "gen_quadratic_neighbor");
  const Word body = kBlock.repeated(2 * n + 2);
  return {body + Word("aaaaa"), body + Word("bbbbb")};
}

Word filtering_entry_prefix(std::size_t n) { return Word("a") + kBlock.repeated(n) + Word("aaa"); }

GridState proof_to_grid(ProofState q, std::size_t u_len, std::size_t v_len) {
  if (q.layer == 0 || q.position == 0 || q.position > q.layer)
    throw PreconditionError("proof_to_grid: layer and position are 1-based, position <= layer");
  const std::size_t read = q.layer - 1;
  const std::size_t from_v = q.position - 1;
  const std::size_t from_u = read - from_v;
  if (from_u > u_len || from_v > v_len)
    throw PreconditionError("proof_to_grid: coordinate outside the grid");
  return {u_len - from_u, v_len - from_v};
}

std::vector<GridState> claimed_duplication_set(std::size_t n, std::size_t i) {
  if (i == 0 || i > n) throw PreconditionError("claimed_duplication_set: requires 1 <= i <= n");
  const std::size_t m = 8 * n + 13;
  std::vector<GridState> out;
  for (std::size_t l = 0; l < i; ++l) {
    const std::size_t j = 2 + 4 * l;
    out.push_back(proof_to_grid({4 * i + 2, j}, m, m));
    out.push_back(proof_to_grid({4 * i + 2, j + 3}, m, m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GridState> claimed_filtering_entry_set(std::size_t n) {
  require_positive(n, "claimed_filtering_entry_set");
  const std::size_t m = 8 * n + 13;
  std::vector<GridState> out;
  for (std::size_t l = 0; l <= n; ++l) out.push_back(proof_to_grid({4 * n + 5, 3 + 4 * l}, m, m));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

ExperimentRow measure_row(std::size_t n, std::string family, const Word& u, const Word& v,
                          BigInt bound, const ExperimentOptions& options) {
  ExperimentRow row;
  row.n = n;
  row.family = std::move(family);
  row.u_len = u.size();
  row.v_len = v.size();
  row.predicted_or_bound = std::move(bound);
  const auto start = std::chrono::steady_clock::now();
  const SizeReport sizes = measure(u, v, options.subset);
  row.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  row.nfa_states = sizes.nfa_states;
  row.subset_dfa_states = sizes.subset_dfa_states;
  row.minimal_dfa_states = sizes.minimal_dfa_states;
  return row;
}

}  // namespace

ExperimentResult run_experiment(std::size_t n_max, const ExperimentOptions& options) {
  ExperimentResult result;
  bool exponential_blocked = false;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const ExponentialPair pair = gen_exponential_pair(n);
    ExperimentRow row;
    if (!exponential_blocked) {
      try {
        row = measure_row(n, "exponential", pair.u, pair.v, exp_lower_bound(n), options);
      } catch (const ResourceLimitError&) {
        exponential_blocked = true;
      }
    }
    if (exponential_blocked) {
      row = ExperimentRow{n, "exponential", pair.u.size(), pair.v.size(), {}, {}, {},
                          exp_lower_bound(n), 0.0, true};
      result.limit_hit = true;
    }
    result.rows.push_back(std::move(row));
  }
  bool neighbor_blocked = false;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto [u, v] = gen_quadratic_neighbor(n);
    const BigInt bound = 2 * BigInt(u.size() + 1) * (v.size() + 1);
    ExperimentRow row;
    if (!neighbor_blocked) {
      try {
        row = measure_row(n, "neighbor", u, v, bound, options);
      } catch (const ResourceLimitError&) {
        neighbor_blocked = true;
      }
    }
    if (neighbor_blocked) {
      row = ExperimentRow{n, "neighbor", u.size(), v.size(), {}, {}, {}, bound, 0.0, true};
      result.limit_hit = true;
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace shuffle
