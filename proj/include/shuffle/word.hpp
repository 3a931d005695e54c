#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace shuffle {

/// Letters are the lowercase ASCII characters 'a'..'z'.
using Symbol = char;

inline constexpr bool is_symbol(char c) noexcept { return c >= 'a' && c <= 'z'; }

class Word;

/// Ordered set of distinct letters. Iteration order is ascending.
class Alphabet {
 public:
  Alphabet() = default;

  /// Throws PreconditionError on a non-letter or a duplicate.
  explicit Alphabet(std::string_view letters);

  /// The letters occurring in the given words.
  static Alphabet of(const Word& u);
  static Alphabet of(const Word& u, const Word& v);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Symbol operator[](std::size_t index) const { return letters_[index]; }
  bool contains(Symbol a) const noexcept;
  std::optional<std::size_t> index_of(Symbol a) const noexcept;
  std::string_view letters() const noexcept { return letters_; }

  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  bool operator==(const Alphabet&) const = default;

 private:
  std::string letters_;
};

/// A finite word over 'a'..'z'. Validated on construction; the empty word is allowed.
class Word {
 public:
  Word() = default;

  /// Throws PreconditionError if any character is not a letter.
  explicit Word(std::string_view letters);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Symbol operator[](std::size_t i) const { return letters_[i]; }
  std::string_view str() const noexcept { return letters_; }

  /// Suffix / prefix of the given length (clamped to size()).
  Word suffix(std::size_t length) const;
  Word prefix(std::size_t length) const;
  Word repeated(std::size_t times) const;

  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  Word& operator+=(const Word& other);
  friend Word operator+(Word lhs, const Word& rhs) { return lhs += rhs; }

  auto operator<=>(const Word&) const = default;
  bool operator==(const Word&) const = default;

 private:
  struct Unchecked {};
  Word(std::string letters, Unchecked) : letters_(std::move(letters)) {}

  std::string letters_;

  friend class WordBuilder;
};

/// Appends letters without per-call validation beyond the letter check.
/// Used on hot enumeration paths.
class WordBuilder {
 public:
  void reserve(std::size_t n) { buffer_.reserve(n); }
  void push_back(Symbol a) { buffer_.push_back(a); }
  void pop_back() { buffer_.pop_back(); }
  std::size_t size() const noexcept { return buffer_.size(); }
  std::string_view view() const noexcept { return buffer_; }
  Word build() const { return Word(buffer_, Word::Unchecked{}); }

 private:
  std::string buffer_;
};

std::ostream& operator<<(std::ostream& os, const Word& w);

/// Rendering used in messages: "λ" for the empty word.
std::string display(const Word& w);

/// Collapses each maximal run of equal letters to one letter.
Word skeleton(const Word& u);

std::size_t letter_count(const Word& u, Symbol a);

/// Number of distinct letters occurring in u.
std::size_t distinct_letters(const Word& u);

bool is_non_repeating(const Word& u);

/// True iff the skeleton of w is non-repeating, i.e. each letter occurs in one run.
bool has_one_section_per_letter(const Word& w);

/// True iff v = x u for some word x.
bool is_suffix(const Word& u, const Word& v);

/// u = prefix · base^exponent, with prefix a (possibly empty, possibly full) suffix of base.
struct PeriodicForm {
  Word base;
  Word prefix;
  std::size_t exponent = 0;

  Word expand() const { return prefix + base.repeated(exponent); }
  bool operator==(const PeriodicForm&) const = default;
};

/// Decomposes u over w with maximal exponent. Returns nullopt if u is not of
/// the form w1 w^k with w1 a suffix of w. Requires |w| >= 1.
std::optional<PeriodicForm> periodic_decompose(const Word& u, const Word& w);

}  // namespace shuffle

template <>
struct std::hash<shuffle::Word> {
  std::size_t operator()(const shuffle::Word& w) const noexcept {
    return std::hash<std::string_view>{}(w.str());
  }
};
