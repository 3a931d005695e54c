#include "shuffle/shuffle.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <unordered_set>

#include "shuffle/errors.hpp"

namespace shuffle {

Trajectory::Trajectory(std::string_view bits) {
  bits_.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1')
      throw PreconditionError("trajectory digit must be 0 or 1 at position " + std::to_string(i));
    bits_.push_back(bits[i] == '1');
    zeros_ += bits[i] == '0';
  }
}

Trajectory::Trajectory(std::vector<bool> bits)
    : bits_(std::move(bits)),
      zeros_(static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), false))) {}

std::string Trajectory::str() const {
  std::string out;
  out.reserve(bits_.size());
  for (bool b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

EnumerationLimits EnumerationLimits::from_environment() {
  EnumerationLimits limits;
  if (const char* env = std::getenv("SHUFFLE_ENUM_CAP")) {
    std::size_t value = 0;
    std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc() && ptr == text.data() + text.size()) limits.max_total_letters = value;
  }
  return limits;
}

Word shuffle_on_trajectory(const Word& u, const Word& v, const Trajectory& t) {
  if (t.zeros() != u.size() || t.ones() != v.size())
    throw PreconditionError("trajectory has " + std::to_string(t.zeros()) + " zeros and " +
                            std::to_string(t.ones()) + " ones, expected " +
                            std::to_string(u.size()) + " and " + std::to_string(v.size()));
  WordBuilder out;
  out.reserve(t.size());
  std::size_t iu = 0, iv = 0;
  for (std::size_t p = 0; p < t.size(); ++p) out.push_back(t[p] ? v[iv++] : u[iu++]);
  return out.build();
}

namespace {

struct ShuffleEnumerator {
  std::string_view u, v;
  std::string buffer;
  std::unordered_set<std::string> seen;

  void run(std::size_t iu, std::size_t iv) {
    if (iu == u.size() && iv == v.size()) {
      seen.insert(buffer);
      return;
    }
    if (iu < u.size()) {
      buffer.push_back(u[iu]);
      run(iu + 1, iv);
      buffer.pop_back();
    }
    if (iv < v.size()) {
      buffer.push_back(v[iv]);
      run(iu, iv + 1);
      buffer.pop_back();
    }
  }
};

}  // namespace

WordSet enumerate_shuffle(const Word& u, const Word& v, const EnumerationLimits& limits) {
  const std::size_t total = u.size() + v.size();
  if (total > limits.max_total_letters)
    throw ResourceLimitError("enumerate_shuffle: |u|+|v| = " + std::to_string(total) +
                             " exceeds enumeration cap " +
                             std::to_string(limits.max_total_letters));
  ShuffleEnumerator e{u.str(), v.str(), {}, {}};
  e.buffer.reserve(total);
  e.run(0, 0);
  WordSet out;
  for (const auto& s : e.seen) out.insert(Word(s));
  return out;
}

bool membership(const Word& z, const Word& u, const Word& v) {
  const std::size_t m = u.size(), n = v.size();
  if (z.size() != m + n) return false;
  // reach[x]: after p letters of z, x from u and p - x from v consumed.
  std::vector<char> reach(m + 1, 0), next(m + 1, 0);
  reach[0] = 1;
  for (std::size_t p = 0; p < z.size(); ++p) {
    std::fill(next.begin(), next.end(), 0);
    bool any = false;
    const std::size_t lo = p > n ? p - n : 0;
    const std::size_t hi = std::min(p, m);
    for (std::size_t x = lo; x <= hi; ++x) {
      if (!reach[x]) continue;
      const std::size_t y = p - x;
      if (x < m && u[x] == z[p]) next[x + 1] = any = true;
      if (y < n && v[y] == z[p]) next[x] = any = true;
    }
    if (!any) return false;
    reach.swap(next);
  }
  return reach[m] != 0;
}

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt trajectory_count(const Word& u, const Word& v) {
  return binomial(u.size() + v.size(), u.size());
}

std::string to_text(const WordSet& words) {
  std::string out;
  for (const Word& w : words) {
    out += w.str();
    out.push_back('\n');
  }
  return out;
}

WordSet word_set_from_text(std::string_view text) {
  WordSet out;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.insert(Word(line));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

}  // namespace shuffle
