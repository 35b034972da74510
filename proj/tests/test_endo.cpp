#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "freefix/abelian.hpp"
#include "freefix/endomorphism.hpp"
#include "support.hpp"

using freefix::BigInt;
using freefix::Endomorphism;
using freefix::Error;
using freefix::ErrorCode;
using freefix::SubgroupGraph;
using freefix::Word;
using testsupport::random_reduced_word;
using testsupport::random_whitehead_auto;

namespace {

Endomorphism make(int rank, const std::vector<std::string>& images) {
  std::vector<Word> ws;
  for (const auto& t : images) ws.push_back(Word::parse(t, rank));
  return Endomorphism(rank, std::move(ws));
}

std::vector<BigInt> row_times(const std::vector<BigInt>& v,
                              const freefix::IntMatrix& m) {
  std::vector<BigInt> out(m.cols, BigInt(0));
  for (int j = 0; j < m.cols; ++j) {
    for (int i = 0; i < m.rows; ++i) out[j] += v[i] * m.at(i, j);
  }
  return out;
}

}  // namespace

TEST_CASE("apply is a homomorphism") {
  auto f = make(2, {"a", "ab"});
  CHECK(f.apply(Word::parse("b", 2)).str() == "ab");
  CHECK(f.apply(Word::parse("Bab", 2)).str() == "Bab");
  CHECK(f.apply(Word(2)).empty());
  std::mt19937_64 rng(13);
  for (int i = 0; i < 60; ++i) {
    auto g = random_whitehead_auto(rng, 3, 4);
    Word u = random_reduced_word(rng, 3, int(rng() % 7));
    Word v = random_reduced_word(rng, 3, int(rng() % 7));
    CHECK(g.apply(concat(u, v)) == concat(g.apply(u), g.apply(v)));
    CHECK(g.apply(invert(u)) == invert(g.apply(u)));
  }
}

TEST_CASE("composition order is left to right") {
  auto f = make(2, {"b", "a"});   // swap
  auto g = make(2, {"aa", "b"});  // square the first letter
  // (a) f then g = (b) g = b; (a) g then f = (aa) f = bb
  CHECK(compose(f, g).apply(Word::parse("a", 2)).str() == "b");
  CHECK(compose(g, f).apply(Word::parse("a", 2)).str() == "bb");
  CHECK(f.then(g).images()[0].str() == "b");
}

TEST_CASE("identity, inner, inversion, twist") {
  auto id = Endomorphism::identity(3);
  CHECK(id.apply(Word::parse("abC", 3)).str() == "abC");

  Word y = Word::parse("ab", 2);
  auto inn = Endomorphism::inner(y);
  Word x = Word::parse("b", 2);
  CHECK(inn.apply(x) == conjugate(x, y));

  auto neg = Endomorphism::letter_inversion(2);
  CHECK(neg.apply(Word::parse("ab", 2)).str() == "AB");

  auto f = make(2, {"a", "ab"});
  auto tw = f.twist(y);
  CHECK(tw.apply(x) == conjugate(f.apply(x), y));
}

TEST_CASE("automorphism detection") {
  CHECK(make(2, {"a", "ab"}).is_automorphism());
  CHECK(make(2, {"b", "a"}).is_automorphism());
  CHECK(Endomorphism::letter_inversion(4).is_automorphism());
  CHECK(!make(2, {"a", "a"}).is_automorphism());
  CHECK(!make(2, {"aa", "b"}).is_automorphism());
  CHECK(!make(2, {"ab", "ab"}).is_automorphism());
  CHECK(!make(3, {"a", "b", "aba"}).is_automorphism());
  CHECK(make(3, {"a", "b", "abc"}).is_automorphism());
}

TEST_CASE("inverse undoes random automorphisms") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    int rank = 2 + int(rng() % 3);
    auto f = random_whitehead_auto(rng, rank, 1 + int(rng() % 6));
    auto finv = f.inverse();
    auto round = f.then(finv);
    CHECK(round == Endomorphism::identity(rank));
    CHECK(finv.then(f) == Endomorphism::identity(rank));
  }
  CHECK_THROWS_AS(make(2, {"a", "a"}).inverse(), Error);
}

TEST_CASE("restriction to an invariant subgroup") {
  auto f = make(2, {"a", "ab"});
  std::vector<Word> gens = {Word::parse("a", 2), Word::parse("Bab", 2)};
  auto h = SubgroupGraph::fold(gens, 2);
  auto r = f.restrict_to(h);
  CHECK(int(r.basis.size()) == h.rank());
  CHECK(r.map.rank() == h.rank());
  // expanding each restricted image through the basis recovers the image
  for (std::size_t i = 0; i < r.basis.size(); ++i) {
    Word expanded =
        testsupport::expand_in_basis(r.basis, 2, r.map.images()[i]);
    CHECK(expanded == f.apply(r.basis[i]));
  }
  // <a> is not invariant under the swap
  auto swap = make(2, {"b", "a"});
  auto ha = SubgroupGraph::fold(std::vector<Word>{Word::parse("a", 2)}, 2);
  try {
    swap.restrict_to(ha);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotInvariant);
  }
}

TEST_CASE("rank mismatch is rejected") {
  auto f = make(2, {"a", "ab"});
  CHECK_THROWS_AS(f.apply(Word::parse("abc", 3)), Error);
  CHECK_THROWS_AS(Endomorphism(2, {Word::parse("a", 2)}), Error);
  CHECK_THROWS_AS(
      Endomorphism(2, {Word::parse("a", 2), Word::parse("c", 3)}), Error);
}

TEST_CASE("abelianization matrix convention") {
  auto f = make(2, {"a", "ab"});
  auto m = freefix::ab_matrix(f);
  CHECK(m.at(0, 0) == 1);
  CHECK(m.at(0, 1) == 0);
  CHECK(m.at(1, 0) == 1);
  CHECK(m.at(1, 1) == 1);
  std::mt19937_64 rng(19);
  for (int i = 0; i < 40; ++i) {
    auto g = random_whitehead_auto(rng, 3, 5);
    auto mg = freefix::ab_matrix(g);
    Word w = random_reduced_word(rng, 3, int(rng() % 8));
    CHECK(freefix::ab_vector(g.apply(w)) ==
          row_times(freefix::ab_vector(w), mg));
    auto h = random_whitehead_auto(rng, 3, 3);
    CHECK(freefix::ab_matrix(g.then(h)) ==
          freefix::mat_mul(mg, freefix::ab_matrix(h)));
  }
}

TEST_CASE("integer solving") {
  // M - I for a -> a, b -> ab: x (M - I) = (x2, 0)
  auto f = make(2, {"a", "ab"});
  auto d = freefix::mat_sub(freefix::ab_matrix(f), freefix::identity_matrix(2));
  auto ea = freefix::ab_solve(d, {BigInt(1), BigInt(0)});
  REQUIRE(ea.has_value());
  CHECK(row_times(*ea, d) == std::vector<BigInt>{BigInt(1), BigInt(0)});
  CHECK(!freefix::ab_solve(d, {BigInt(0), BigInt(1)}).has_value());
  // zero matrix solves only zero
  auto z = freefix::mat_sub(d, d);
  CHECK(freefix::ab_solve(z, {BigInt(0), BigInt(0)}).has_value());
  CHECK(!freefix::ab_solve(z, {BigInt(1), BigInt(0)}).has_value());
}

TEST_CASE("abelianized primitivity necessary condition") {
  CHECK(freefix::is_primitive_abelianized(Word::parse("ab", 2)));
  CHECK(freefix::is_primitive_abelianized(Word::parse("aab", 2)));
  CHECK(!freefix::is_primitive_abelianized(Word::parse("aabb", 2)));
  CHECK(!freefix::is_primitive_abelianized(Word::parse("ABab", 2)));
}
