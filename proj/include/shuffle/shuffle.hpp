#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "shuffle/word.hpp"

namespace shuffle {

using BigInt = boost::multiprecision::cpp_int;

/// Binary word steering one interleaving: 0 takes the next letter of u, 1 of v.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::string_view bits);
  explicit Trajectory(std::vector<bool> bits);

  std::size_t size() const noexcept { return bits_.size(); }
  std::size_t zeros() const noexcept { return zeros_; }
  std::size_t ones() const noexcept { return bits_.size() - zeros_; }
  bool operator[](std::size_t i) const { return bits_[i]; }
  std::string str() const;

  bool operator==(const Trajectory&) const = default;

 private:
  std::vector<bool> bits_;
  std::size_t zeros_ = 0;
};

/// Sorted, duplicate-free set of words.
using WordSet = std::set<Word>;

/// Caps on exhaustive enumeration. Exceeding a cap raises ResourceLimitError.
struct EnumerationLimits {
  std::size_t max_total_letters = 26;

  /// Default limits, with max_total_letters overridden by SHUFFLE_ENUM_CAP if set.
  static EnumerationLimits from_environment();
};

Word shuffle_on_trajectory(const Word& u, const Word& v, const Trajectory& t);

/// The exact set u ⧢ v, by running every trajectory. This is the ground-truth
/// oracle for everything else in the library.
WordSet enumerate_shuffle(const Word& u, const Word& v,
                          const EnumerationLimits& limits = EnumerationLimits::from_environment());

/// z ∈ u ⧢ v in O(|u|·|v|): propagates the set of reachable (consumed-from-u)
/// counts across positions of z. Position p's frontier is v-layer |u|+|v|-p.
bool membership(const Word& z, const Word& u, const Word& v);

/// binomial(|u|+|v|, |u|).
BigInt trajectory_count(const Word& u, const Word& v);

BigInt binomial(std::size_t n, std::size_t k);

/// Sorted newline-delimited text, one word per line (the empty word is an empty line).
std::string to_text(const WordSet& words);
WordSet word_set_from_text(std::string_view text);

}  // namespace shuffle
