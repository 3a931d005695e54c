#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shuffle/dfa.hpp"
#include "shuffle/shuffle.hpp"
#include "shuffle/word.hpp"

namespace shuffle {

/// Inclusive range.
struct Range {
  std::size_t lo = 0;
  std::size_t hi = 0;

  bool contains(std::size_t x) const noexcept { return lo <= x && x <= hi; }
};

/// Parses "2..3" or "4".
Range parse_range(std::string_view text);

struct SweepOptions {
  /// Base-word lengths.
  Range wlen{2, 3};
  /// Exponents k and l.
  Range reps{0, 4};
  /// Cap on |u| + |v| for lemma and theorem sweeps; cap on |u| for eq1.
  /// Unset selects the scope default.
  std::optional<std::size_t> maxlen;
  /// Letters available to base words (lemmas, thm1) and to eq1 pairs.
  /// Unset selects the scope default.
  std::optional<std::string> alphabet;
  /// Largest n for the exponential family.
  std::size_t nmax = 2;
  /// Base words for thm2; empty selects aabb, aabbb, aabbcc.
  std::vector<Word> thm2_bases;
  SubsetOptions subset;
  EnumerationLimits limits = EnumerationLimits::from_environment();
};

struct InstanceVerdict {
  std::string instance;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::string scope;
  std::vector<InstanceVerdict> verdicts;
  /// The lemma4 scope counts individual residual comparisons here.
  std::size_t comparisons = 0;

  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
};

/// lemma2, lemma3, lemma4, thm1, thm2, thm3, eq1.
const std::vector<std::string>& verify_scopes();

/// Scope defaults for SweepOptions::maxlen and SweepOptions::alphabet.
std::size_t default_maxlen(std::string_view scope);
std::string default_alphabet(std::string_view scope);

/// Runs one scope (not "all"). Throws PreconditionError on an unknown scope.
VerifyReport verify_scope(std::string_view scope, const SweepOptions& options = {});

/// Base words of the given length over the letters, up to renaming: letters
/// are introduced in alphabet order. Only words with at least min_distinct letters.
std::vector<Word> canonical_words(std::size_t length, std::string_view letters,
                                  std::size_t min_distinct = 2);

/// Suffixes of w from λ to w itself.
std::vector<Word> suffixes(const Word& w);

std::string to_json(const std::vector<VerifyReport>& reports);

}  // namespace shuffle
