#include <gtest/gtest.h>

#include "shuffle/errors.hpp"
#include "shuffle/word.hpp"

namespace shuffle {
namespace {

TEST(Alphabet, SortsAndRejectsDuplicates) {
  const Alphabet a("cab");
  EXPECT_EQ(a.letters(), "abc");
  EXPECT_EQ(a.index_of('c'), 2u);
  EXPECT_FALSE(a.index_of('d'));
  EXPECT_THROW(Alphabet("aa"), PreconditionError);
  EXPECT_THROW(Alphabet("aB"), PreconditionError);
  EXPECT_EQ(Alphabet::of(Word("bbaa"), Word("aab")).letters(), "ab");
}

TEST(Word, ValidatesLetters) {
  EXPECT_NO_THROW(Word(""));
  EXPECT_THROW(Word("ab1"), PreconditionError);
  EXPECT_THROW(Word("A"), PreconditionError);
}

TEST(Word, PrefixSuffixRepeat) {
  const Word w("abcde");
  EXPECT_EQ(w.suffix(2), Word("de"));
  EXPECT_EQ(w.prefix(2), Word("ab"));
  EXPECT_EQ(w.suffix(9), w);
  EXPECT_EQ(Word("ab").repeated(3), Word("ababab"));
  EXPECT_EQ(Word("ab").repeated(0), Word());
  EXPECT_EQ(display(Word()), "λ");
  EXPECT_EQ(display(w), "abcde");
}

TEST(Skeleton, Examples) {
  EXPECT_EQ(skeleton(Word("bbaa")), Word("ba"));
  EXPECT_EQ(skeleton(Word()), Word());
  EXPECT_EQ(skeleton(Word("aabbaa")), Word("aba"));
}

TEST(Skeleton, MatchesRunLengthEncoding) {
  for (const char* s : {"a", "ab", "aaab", "abba", "aabbccaab", "cccc"}) {
    std::string expected;
    for (char c : std::string(s))
      if (expected.empty() || expected.back() != c) expected += c;
    EXPECT_EQ(skeleton(Word(s)).str(), expected) << s;
  }
}

TEST(LetterCount, Examples) {
  EXPECT_EQ(letter_count(Word("bbaa"), 'b'), 2u);
  EXPECT_EQ(letter_count(Word(), 'a'), 0u);
  EXPECT_EQ(letter_count(Word("aabababb"), 'a'), 4u);
  EXPECT_EQ(distinct_letters(Word("aabababb")), 2u);
}

TEST(NonRepeating, Examples) {
  EXPECT_TRUE(is_non_repeating(Word("abc")));
  EXPECT_FALSE(is_non_repeating(Word("aabb")));
  EXPECT_TRUE(is_non_repeating(Word()));
  EXPECT_TRUE(has_one_section_per_letter(Word("aabb")));
  EXPECT_FALSE(has_one_section_per_letter(Word("abab")));
  EXPECT_TRUE(has_one_section_per_letter(Word()));
  EXPECT_FALSE(has_one_section_per_letter(Word("aba")));
}

TEST(Suffix, Examples) {
  EXPECT_TRUE(is_suffix(Word("bc"), Word("abc")));
  EXPECT_TRUE(is_suffix(Word(), Word("abc")));
  EXPECT_FALSE(is_suffix(Word("ab"), Word("abc")));
  EXPECT_TRUE(is_suffix(Word("abc"), Word("abc")));
}

TEST(PeriodicDecompose, Examples) {
  auto f = periodic_decompose(Word("bcabcabc"), Word("abc"));
  ASSERT_TRUE(f);
  EXPECT_EQ(f->base, Word("abc"));
  EXPECT_EQ(f->prefix, Word("bc"));
  EXPECT_EQ(f->exponent, 2u);
  EXPECT_EQ(f->expand(), Word("bcabcabc"));

  f = periodic_decompose(Word("abc"), Word("abc"));
  ASSERT_TRUE(f);
  EXPECT_EQ(f->prefix, Word());
  EXPECT_EQ(f->exponent, 1u);

  EXPECT_FALSE(periodic_decompose(Word("abca"), Word("abc")));
  EXPECT_THROW(periodic_decompose(Word("a"), Word()), PreconditionError);
}

TEST(PeriodicDecompose, ExhaustiveAgainstSplits) {
  // Every decomposition found must expand back; every w1 w^k built by hand
  // must be found.
  const Word w("aab");
  for (std::size_t p = 0; p <= w.size(); ++p) {
    for (std::size_t k = 0; k <= 3; ++k) {
      const Word u = w.suffix(p) + w.repeated(k);
      const auto f = periodic_decompose(u, w);
      ASSERT_TRUE(f) << display(u);
      EXPECT_EQ(f->expand(), u);
      EXPECT_TRUE(is_suffix(f->prefix, w));
    }
  }
}

}  // namespace
}  // namespace shuffle
