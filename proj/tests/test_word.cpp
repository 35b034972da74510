#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "freefix/word.hpp"
#include "support.hpp"

using freefix::Atom;
using freefix::Error;
using freefix::ErrorCode;
using freefix::Word;
using testsupport::random_reduced_word;

TEST_CASE("parse and print round trip") {
  CHECK(Word::parse("abAB", 2).str() == "abAB");
  CHECK(Word::parse("1", 4).str() == "1");
  CHECK(Word::parse("", 2).str() == "1");
  CHECK(Word::parse(" a  b ", 2).str() == "ab");
  CHECK(Word::parse("abBA", 2).empty());
  CHECK(Word::parse("aaBbAA", 2).empty());
  CHECK(Word::parse("abBc", 3).str() == "ac");
}

TEST_CASE("parse rejects bad input") {
  CHECK_THROWS_AS(Word::parse("c", 2), Error);
  CHECK_THROWS_AS(Word::parse("a!", 2), Error);
  CHECK_THROWS_AS(Word::parse("a", 0), Error);
  CHECK_THROWS_AS(Word::parse("a", -1), Error);
  try {
    Word::parse("z", 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInput);
  }
}

TEST_CASE("letter order a < A < b < B") {
  CHECK(freefix::atom_ordinal(1) == 0);
  CHECK(freefix::atom_ordinal(-1) == 1);
  CHECK(freefix::atom_ordinal(2) == 2);
  CHECK(freefix::atom_from_ordinal(3) == Atom(-2));
  for (int ord = 0; ord < 10; ++ord) {
    CHECK(freefix::atom_ordinal(freefix::atom_from_ordinal(ord)) == ord);
  }
}

TEST_CASE("concat reduces across the seam") {
  auto cat = [](const char* u, const char* v) {
    return concat(Word::parse(u, 3), Word::parse(v, 3)).str();
  };
  CHECK(cat("ab", "Bc") == "ac");
  CHECK(cat("ab", "BA") == "1");
  CHECK(cat("1", "ba") == "ba");
  CHECK(cat("aBc", "Cba") == "aa");
  CHECK(cat("aBc", "CbA") == "1");
}

TEST_CASE("invert and power") {
  CHECK(invert(Word::parse("abC", 3)).str() == "cBA");
  CHECK(power(Word::parse("ab", 2), 3).str() == "ababab");
  CHECK(power(Word::parse("ab", 2), -2).str() == "BABA");
  CHECK(power(Word::parse("ab", 2), 0).empty());
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    Word w = random_reduced_word(rng, 3, i % 9);
    CHECK(concat(w, invert(w)).empty());
    CHECK(invert(invert(w)) == w);
  }
}

TEST_CASE("conjugate is c^-1 u c") {
  Word u = Word::parse("ab", 2);
  Word c = Word::parse("b", 2);
  CHECK(conjugate(u, c).str() == "Babb");
  CHECK(conjugate(Word::parse("a", 2), Word::parse("a", 2)).str() == "a");
}

TEST_CASE("cyclic reduce splits off the conjugator") {
  auto [core, conj] = cyclic_reduce(Word::parse("BBabb", 2));
  CHECK(core.str() == "a");
  CHECK(conj.str() == "BB");
  auto [core2, conj2] = cyclic_reduce(Word::parse("Babab", 2));
  CHECK(core2.str() == "aba");
  CHECK(conj2.str() == "B");
  std::mt19937_64 rng(11);
  for (int i = 0; i < 80; ++i) {
    Word w = random_reduced_word(rng, 3, 1 + i % 10);
    auto [x, p] = cyclic_reduce(w);
    CHECK(concat(concat(p, x), invert(p)) == w);
    // core is cyclically reduced: first and last letters are not inverse
    if (!x.empty()) {
      CHECK(x.at(0) != freefix::atom_inverse(x.at(x.size() - 1)));
    }
  }
  auto [tc, tp] = cyclic_reduce(Word(2));
  CHECK(tc.empty());
  CHECK(tp.empty());
}

TEST_CASE("root extraction") {
  auto r = freefix::root_of(Word::parse("aaaa", 2));
  CHECK(r.root.str() == "a");
  CHECK(r.exponent == 4);
  r = freefix::root_of(Word::parse("abab", 2));
  CHECK(r.root.str() == "ab");
  CHECK(r.exponent == 2);
  r = freefix::root_of(Word::parse("ab", 2));
  CHECK(r.exponent == 1);
  // power of a cyclically non-reduced word
  r = freefix::root_of(power(Word::parse("Bab", 2), 3));
  CHECK(r.root.str() == "Bab");
  CHECK(r.exponent == 3);
  CHECK_THROWS_AS(freefix::root_of(Word(2)), Error);
}

TEST_CASE("shortlex order") {
  using freefix::shortlex_less;
  CHECK(shortlex_less(Word::parse("1", 2), Word::parse("a", 2)));
  CHECK(shortlex_less(Word::parse("a", 2), Word::parse("A", 2)));
  CHECK(shortlex_less(Word::parse("A", 2), Word::parse("b", 2)));
  CHECK(shortlex_less(Word::parse("B", 2), Word::parse("aa", 2)));
  CHECK(!shortlex_less(Word::parse("ab", 2), Word::parse("ab", 2)));
}

TEST_CASE("conjugating word finds an exact witness") {
  using freefix::conjugating_word;
  std::mt19937_64 rng(23);
  int found = 0;
  for (int i = 0; i < 120; ++i) {
    Word u = random_reduced_word(rng, 2, 1 + i % 6);
    Word c = random_reduced_word(rng, 2, i % 7);
    Word v = conjugate(u, c);
    auto x = conjugating_word(u, v);
    REQUIRE(x.has_value());
    CHECK(conjugate(u, *x) == v);
    ++found;
  }
  CHECK(found == 120);
  CHECK(!conjugating_word(Word::parse("a", 2), Word::parse("b", 2)));
  CHECK(!conjugating_word(Word::parse("a", 2), Word::parse("A", 2)));
  CHECK(!conjugating_word(Word::parse("a", 2), Word::parse("aa", 2)));
  CHECK(!conjugating_word(Word::parse("ab", 2), Word::parse("BA", 2)));
  CHECK(conjugating_word(Word::parse("ab", 2), Word::parse("ba", 2)));
  CHECK(conjugating_word(Word(2), Word(2)).value().empty());
  CHECK(!conjugating_word(Word(2), Word::parse("a", 2)));
}

TEST_CASE("push_reduced cancels") {
  std::vector<Atom> buf;
  freefix::push_reduced(buf, 1);
  freefix::push_reduced(buf, 2);
  freefix::push_reduced(buf, -2);
  CHECK(buf == std::vector<Atom>{1});
}
