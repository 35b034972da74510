#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "freefix/factor_system.hpp"
#include "support.hpp"

using freefix::ComplexityVector;
using freefix::Endomorphism;
using freefix::FactorVerdict;
using freefix::FreeFactorSystem;
using freefix::SubgroupGraph;
using freefix::Word;
using testsupport::random_words;

namespace {

SubgroupGraph fold_of(int rank, const std::vector<std::string>& texts) {
  std::vector<Word> gens;
  for (const auto& t : texts) gens.push_back(Word::parse(t, rank));
  return SubgroupGraph::fold(gens, rank);
}

FreeFactorSystem system_of(int rank,
                           const std::vector<std::vector<std::string>>& cls) {
  std::vector<SubgroupGraph> graphs;
  for (const auto& c : cls) graphs.push_back(fold_of(rank, c));
  return FreeFactorSystem(rank, std::move(graphs));
}

}  // namespace

TEST_CASE("complexity comparison is lexicographic with prefix rule") {
  using freefix::cx_compare;
  CHECK(cx_compare({}, {1}) < 0);
  CHECK(cx_compare({1}, {1, 1}) < 0);
  CHECK(cx_compare({2, 1}, {3}) < 0);
  CHECK(cx_compare({2, 1}, {2, 1}) == 0);
  CHECK(cx_compare({3}, {2, 2}) > 0);

  for (int n = 3; n <= 6; ++n) {
    // one rank-2 class and n-2 singleton classes, complexity (2,1,...,1)
    std::vector<std::vector<std::string>> mid = {{"a", "b"}};
    for (int i = 2; i < n; ++i) {
      mid.push_back({std::string(1, char('a' + i))});
    }
    auto middle = system_of(n, mid);
    ComplexityVector want = {2};
    want.insert(want.end(), std::size_t(n - 2), 1);
    CHECK(complexity_of(middle) == want);

    auto bottom = FreeFactorSystem(n);
    auto top = FreeFactorSystem::total(n);
    CHECK(complexity_of(bottom).empty());
    CHECK(complexity_of(top) == ComplexityVector{n});
    CHECK(cx_compare(complexity_of(bottom), complexity_of(middle)) < 0);
    CHECK(cx_compare(complexity_of(middle), complexity_of(top)) < 0);
  }
}

TEST_CASE("system construction deduplicates conjugates") {
  auto s = system_of(2, {{"a"}, {"baB"}});
  CHECK(s.classes().size() == 1);
  auto empty = FreeFactorSystem(2, {SubgroupGraph::trivial(2)});
  CHECK(empty.classes().empty());
  CHECK(system_of(2, {{"a"}, {"b"}}).classes().size() == 2);
}

TEST_CASE("class ordering against a bounded conjugator search") {
  using freefix::class_leq;
  CHECK(class_leq(fold_of(2, {"a"}), SubgroupGraph::full_rose(2)).has_value());
  CHECK(class_leq(fold_of(2, {"baB"}), fold_of(2, {"a"})).has_value());
  CHECK(!class_leq(fold_of(2, {"ab"}), fold_of(2, {"a"})).has_value());
  CHECK(!class_leq(SubgroupGraph::full_rose(2), fold_of(2, {"a"})).has_value());

  std::mt19937_64 rng(37);
  auto small_words = testsupport::brute_words(2, 5);
  for (int trial = 0; trial < 40; ++trial) {
    auto h = SubgroupGraph::fold(random_words(rng, 2, 1 + int(rng() % 2), 4), 2);
    auto k = SubgroupGraph::fold(random_words(rng, 2, 1 + int(rng() % 2), 4), 2);
    auto witness = class_leq(h, k);
    if (witness) {
      for (const Word& b : h.basis()) {
        CHECK(k.member(conjugate(b, *witness)));
      }
    } else {
      // exactness: no short conjugator may work either
      for (const Word& c : small_words) {
        bool all = true;
        for (const Word& b : h.basis()) {
          all = all && k.member(conjugate(b, c));
        }
        CHECK(!all);
      }
    }
  }
}

TEST_CASE("whitehead moves are distinct non-identity automorphisms") {
  for (int rank = 2; rank <= 3; ++rank) {
    const auto& pool = freefix::whitehead_moves(rank);
    // one move per multiplier letter and non-empty subset of the others
    std::size_t expected =
        std::size_t(2 * rank) * ((std::size_t(1) << (2 * rank - 2)) - 1);
    CHECK(pool.size() == expected);
    std::set<std::string> seen;
    for (const auto& f : pool) {
      CHECK(f.is_automorphism());
      CHECK(!(f == Endomorphism::identity(rank)));
      std::string key;
      for (const Word& w : f.images()) key += w.str() + "|";
      CHECK(seen.insert(key).second);
    }
  }
}

TEST_CASE("free factor detection") {
  auto yes = freefix::free_factor_test(fold_of(2, {"a"}), 6);
  CHECK(yes.verdict == FactorVerdict::kYes);
  REQUIRE(yes.witness.has_value());
  REQUIRE(yes.letters.size() == 1);
  {
    std::vector<Word> target = {Word::parse(std::string(1, char('a' + yes.letters[0] - 1)), 2)};
    std::vector<Word> moved;
    for (const Word& b : fold_of(2, {"a"}).basis()) {
      moved.push_back(yes.witness->apply(b));
    }
    CHECK(SubgroupGraph::fold(moved, 2) == SubgroupGraph::fold(target, 2));
  }

  auto conj = freefix::free_factor_test(fold_of(2, {"abA"}), 6);
  CHECK(conj.verdict == FactorVerdict::kYes);

  auto pair = freefix::free_factor_test(fold_of(3, {"ab", "c"}), 8);
  CHECK(pair.verdict == FactorVerdict::kYes);
  CHECK(pair.letters.size() == 2);

  // full-rank subgroups: free factor iff the whole group
  CHECK(freefix::free_factor_test(SubgroupGraph::full_rose(2), 4).verdict ==
        FactorVerdict::kYes);
  CHECK(freefix::free_factor_test(fold_of(2, {"a", "Bab"}), 6).verdict ==
        FactorVerdict::kNo);
  CHECK(freefix::free_factor_test(fold_of(2, {"ab", "ba"}), 6).verdict ==
        FactorVerdict::kNo);

  // a^2 is not primitive but carries no certificate at this depth
  CHECK(freefix::free_factor_test(fold_of(2, {"aa"}), 6).verdict ==
        FactorVerdict::kUnknown);

  // rank above ambient rank is an exact no
  CHECK(freefix::free_factor_test(fold_of(2, {"aa", "bb", "abab"}), 4).verdict ==
        FactorVerdict::kNo);

  // images of a generator under an automorphism are primitive
  std::mt19937_64 rng(41);
  for (int i = 0; i < 10; ++i) {
    auto f = testsupport::random_whitehead_auto(rng, 2, 3);
    auto rep = freefix::free_factor_test(
        SubgroupGraph::fold(std::vector<Word>{f.images()[0]}, 2), 12);
    CHECK(rep.verdict == FactorVerdict::kYes);
  }
}

TEST_CASE("wedge of overlapping roses is the overlap") {
  auto s1 = system_of(3, {{"a", "b"}});
  auto s2 = system_of(3, {{"b", "c"}});
  auto w = wedge(s1, s2);
  REQUIRE(w.classes().size() == 1);
  CHECK(w.classes()[0] == fold_of(3, {"b"}).class_representative());
  CHECK(complexity_of(w) == ComplexityVector{1});

  // free factors are malnormal: self-wedge adds nothing
  auto self = wedge(s1, s1);
  REQUIRE(self.classes().size() == 1);
  CHECK(self.classes()[0].class_key() == s1.classes()[0].class_key());
}

TEST_CASE("wedge is below both arguments") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    int rank = 2 + int(rng() % 2);
    auto s1 = FreeFactorSystem(
        rank, {SubgroupGraph::fold(random_words(rng, rank, 2, 4), rank)});
    auto s2 = FreeFactorSystem(
        rank, {SubgroupGraph::fold(random_words(rng, rank, 2, 4), rank)});
    auto w = wedge(s1, s2);
    CHECK(system_leq(w, s1));
    CHECK(system_leq(w, s2));
  }
}

TEST_CASE("system order") {
  auto small = system_of(3, {{"a"}});
  auto big = system_of(3, {{"a", "b"}});
  CHECK(system_leq(small, big));
  CHECK(!system_leq(big, small));
  CHECK(system_leq(big, big));
  CHECK(system_leq(FreeFactorSystem(3), small));
}

TEST_CASE("invariance of class systems") {
  std::vector<Word> imgs = {Word::parse("a", 2), Word::parse("ab", 2)};
  Endomorphism f(2, imgs);
  auto fix = system_of(2, {{"a", "Bab"}});
  CHECK(invariant_check(fix, f));

  std::vector<Word> sw = {Word::parse("b", 2), Word::parse("a", 2)};
  Endomorphism swap(2, sw);
  CHECK(!invariant_check(system_of(2, {{"a"}}), swap));
  // swapped classes are not fixed classwise even though the set is preserved
  CHECK(!invariant_check(system_of(2, {{"a"}, {"b"}}), swap));
  CHECK(invariant_check(system_of(2, {{"a"}, {"b"}}),
                        Endomorphism::identity(2)));
}

TEST_CASE("certification of genuine free factor systems") {
  auto s = system_of(2, {{"a"}, {"b"}});
  CHECK(s.certify(3, 6));
  CHECK(s.verified());
  CHECK(s.witnesses().size() == s.classes().size());
  // conjugated classes join to a free product of the right rank
  std::vector<Word> all;
  int sum = 0;
  for (std::size_t i = 0; i < s.classes().size(); ++i) {
    sum += s.classes()[i].rank();
    for (const Word& b : s.classes()[i].basis()) {
      all.push_back(conjugate(b, s.witnesses()[i]));
    }
  }
  CHECK(SubgroupGraph::fold(all, 2).rank() == sum);

  auto total = FreeFactorSystem::total(3);
  CHECK(total.certify(2, 4));

  auto bad = system_of(2, {{"aa"}});
  CHECK(!bad.certify(3, 6));
  CHECK(!bad.verified());
}
