#include "shuffle/word.hpp"

#include <algorithm>
#include <array>

#include "shuffle/errors.hpp"

namespace shuffle {

Alphabet::Alphabet(std::string_view letters) : letters_(letters) {
  for (char c : letters_) {
    if (!is_symbol(c))
      throw PreconditionError(std::string("alphabet symbol out of range: '") + c + "'");
  }
  std::sort(letters_.begin(), letters_.end());
  if (std::adjacent_find(letters_.begin(), letters_.end()) != letters_.end())
    throw PreconditionError("alphabet has duplicate symbols: " + std::string(letters));
}

Alphabet Alphabet::of(const Word& u) { return of(u, Word{}); }

Alphabet Alphabet::of(const Word& u, const Word& v) {
  std::array<bool, 26> seen{};
  for (Symbol a : u) seen[a - 'a'] = true;
  for (Symbol a : v) seen[a - 'a'] = true;
  std::string letters;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) letters.push_back(static_cast<char>('a' + i));
  return Alphabet(letters);
}

bool Alphabet::contains(Symbol a) const noexcept { return index_of(a).has_value(); }

std::optional<std::size_t> Alphabet::index_of(Symbol a) const noexcept {
  auto it = std::lower_bound(letters_.begin(), letters_.end(), a);
  if (it == letters_.end() || *it != a) return std::nullopt;
  return static_cast<std::size_t>(it - letters_.begin());
}

Word::Word(std::string_view letters) : letters_(letters) {
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (!is_symbol(letters_[i]))
      throw PreconditionError("invalid letter '" + std::string(1, letters_[i]) +
                              "' at position " + std::to_string(i));
  }
}

Word Word::suffix(std::size_t length) const {
  length = std::min(length, letters_.size());
  return Word(letters_.substr(letters_.size() - length), Unchecked{});
}

Word Word::prefix(std::size_t length) const {
  return Word(letters_.substr(0, std::min(length, letters_.size())), Unchecked{});
}

Word Word::repeated(std::size_t times) const {
  std::string out;
  out.reserve(letters_.size() * times);
  for (std::size_t t = 0; t < times; ++t) out += letters_;
  return Word(std::move(out), Unchecked{});
}

Word& Word::operator+=(const Word& other) {
  letters_ += other.letters_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Word& w) { return os << w.str(); }

std::string display(const Word& w) { return w.empty() ? std::string("λ") : std::string(w.str()); }

Word skeleton(const Word& u) {
  WordBuilder out;
  for (Symbol a : u)
    if (out.size() == 0 || out.view().back() != a) out.push_back(a);
  return out.build();
}

std::size_t letter_count(const Word& u, Symbol a) {
  return static_cast<std::size_t>(std::count(u.begin(), u.end(), a));
}

std::size_t distinct_letters(const Word& u) { return Alphabet::of(u).size(); }

bool is_non_repeating(const Word& u) { return distinct_letters(u) == u.size(); }

bool has_one_section_per_letter(const Word& w) { return is_non_repeating(skeleton(w)); }

bool is_suffix(const Word& u, const Word& v) { return v.str().ends_with(u.str()); }

std::optional<PeriodicForm> periodic_decompose(const Word& u, const Word& w) {
  if (w.empty()) throw PreconditionError("periodic_decompose: base word must be non-empty");
  const std::size_t n = w.size();
  for (std::size_t k = u.size() / n + 1; k-- > 0;) {
    const std::size_t prefix_len = u.size() - k * n;
    if (prefix_len > n) break;
    Word tail = u.suffix(k * n);
    if (tail != w.repeated(k)) continue;
    Word prefix = u.prefix(prefix_len);
    if (!is_suffix(prefix, w)) continue;
    return PeriodicForm{w, std::move(prefix), k};
  }
  return std::nullopt;
}

}  // namespace shuffle
