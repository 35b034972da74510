#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "freefix/fixed_search.hpp"
#include "support.hpp"

using freefix::Endomorphism;
using freefix::FixedSearchBudget;
using freefix::SubgroupGraph;
using freefix::Verdict;
using freefix::Word;
using testsupport::brute_fixed;
using testsupport::random_whitehead_auto;

namespace {

Endomorphism make(int rank, const std::vector<std::string>& images) {
  std::vector<Word> ws;
  for (const auto& t : images) ws.push_back(Word::parse(t, rank));
  return Endomorphism(rank, std::move(ws));
}

SubgroupGraph fold_of(int rank, const std::vector<std::string>& texts) {
  std::vector<Word> gens;
  for (const auto& t : texts) gens.push_back(Word::parse(t, rank));
  return SubgroupGraph::fold(gens, rank);
}

}  // namespace

TEST_CASE("word streams agree") {
  for (int rank = 1; rank <= 3; ++rank) {
    for (int len = 0; len <= 4; ++len) {
      auto lib = freefix::all_words_upto(rank, len);
      auto brute = testsupport::brute_words(rank, len);
      std::sort(brute.begin(), brute.end(), freefix::shortlex_less);
      REQUIRE(lib.size() == brute.size());
      CHECK(lib == brute);
      CHECK(std::is_sorted(lib.begin(), lib.end(), freefix::shortlex_less));
    }
  }
}

TEST_CASE("enumerate_fixed equals brute force at the default cap") {
  std::mt19937_64 rng(29);
  FixedSearchBudget budget;
  budget.max_len = 6;
  for (int i = 0; i < 25; ++i) {
    int rank = 2 + int(rng() % 2);
    auto f = random_whitehead_auto(rng, rank, 1 + int(rng() % 5));
    auto pruned = freefix::enumerate_fixed(f, budget);
    auto brute = brute_fixed(f, budget.max_len);
    std::sort(brute.begin(), brute.end(), freefix::shortlex_less);
    CHECK(pruned == brute);
    for (const Word& w : pruned) CHECK(f.apply(w) == w);
  }
}

TEST_CASE("fixed subgroup of the basic examples") {
  FixedSearchBudget budget;
  budget.max_len = 8;

  auto res = freefix::fixed_subgroup(make(2, {"a", "ab"}), budget);
  CHECK(res.graph == fold_of(2, {"a", "Bab"}));
  CHECK(res.graph.rank() == 2);
  CHECK(res.verdict == Verdict::kBoundedComplete);
  CHECK(res.max_len == 8);
  CHECK(res.displacement_cap > 0);

  auto inv = freefix::fixed_subgroup(Endomorphism::letter_inversion(3), budget);
  CHECK(inv.graph.is_trivial());
  CHECK(inv.verdict == Verdict::kBoundedComplete);
  CHECK(inv.last_growth == 0);

  auto idr = freefix::fixed_subgroup(Endomorphism::identity(2), budget);
  CHECK(idr.graph.is_full_rose());
  CHECK(idr.last_growth == 1);

  auto swap = freefix::fixed_subgroup(make(2, {"b", "a"}), budget);
  CHECK(swap.graph.is_trivial());
}

TEST_CASE("verdict depends on stability headroom") {
  auto f = make(2, {"a", "ba"});  // Fix = <a, baB>, last growth at 3
  FixedSearchBudget tight;
  tight.max_len = 4;
  auto r1 = freefix::fixed_subgroup(f, tight);
  CHECK(r1.graph == fold_of(2, {"a", "baB"}));
  CHECK(r1.last_growth == 3);
  CHECK(r1.verdict == Verdict::kOpen);

  FixedSearchBudget roomy;
  roomy.max_len = 5;
  auto r2 = freefix::fixed_subgroup(f, roomy);
  CHECK(r2.graph == r1.graph);
  CHECK(r2.verdict == Verdict::kBoundedComplete);
}

TEST_CASE("eigengroups against direct twisted enumeration") {
  FixedSearchBudget budget;
  budget.max_len = 6;
  budget.eigenvalue_len = 2;
  auto f = make(2, {"a", "ab"});
  auto records = freefix::eigengroup_scan(f, budget);
  REQUIRE(!records.empty());
  for (const auto& rec : records) {
    CHECK(rec.graph.rank() >= 1);
    // oracle: w is in the eigengroup iff (w)f = y w y^-1
    std::vector<Word> direct;
    for (const Word& w : testsupport::brute_words(2, budget.max_len)) {
      if (f.apply(w) == conjugate(w, invert(rec.eigenvalue))) {
        direct.push_back(w);
      }
    }
    CHECK(rec.graph == SubgroupGraph::fold(direct, 2));
  }
  // sorted by rank descending
  for (std::size_t i = 1; i < records.size(); ++i) {
    CHECK(records[i - 1].graph.rank() >= records[i].graph.rank());
  }
  // the eigenvalue-a eigengroup is <a, baB>
  bool found = false;
  for (const auto& rec : records) {
    if (rec.eigenvalue.str() == "a") {
      CHECK(rec.graph == fold_of(2, {"a", "baB"}));
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("isogredience partition with verified witnesses") {
  FixedSearchBudget budget;
  budget.max_len = 8;
  budget.eigenvalue_len = 2;
  auto f = make(2, {"a", "ab"});
  auto report = freefix::bh_report(f, budget);
  CHECK(report.rank == 2);
  CHECK(report.class_count == 1);
  CHECK(report.sum_reduced_rank == 1);
  CHECK(report.bound_ok);
  CHECK(report.all_complete);
  for (const auto& w : report.partition.witnesses) {
    CHECK(w.verified);
    const auto& from = report.records[std::size_t(w.from)];
    const auto& to = report.records[std::size_t(w.to)];
    // Reidemeister relation: ((c)f)^-1 y_from c = y_to
    Word relation = concat(
        concat(invert(f.apply(w.conjugator)), from.eigenvalue), w.conjugator);
    CHECK(relation == to.eigenvalue);
    CHECK(w.relation == to.eigenvalue);
    // and the eigengroups are conjugate by the same witness
    std::vector<Word> moved;
    for (const Word& b : from.graph.basis()) {
      moved.push_back(conjugate(b, w.conjugator));
    }
    CHECK(SubgroupGraph::fold(moved, 2) == to.graph);
  }
}

TEST_CASE("identity automorphism eigengroups are centralizers") {
  FixedSearchBudget budget;
  budget.max_len = 6;
  budget.eigenvalue_len = 2;
  auto report = freefix::bh_report(Endomorphism::identity(2), budget);
  // y = 1 gives Fix(id) = F, the single big class; every other eigengroup
  // is the cyclic centralizer <root y> and stays unclassified
  CHECK(report.class_count == 1);
  CHECK(report.sum_reduced_rank == 1);
  CHECK(report.bound_ok);
  CHECK(!report.partition.cyclic.empty());
  for (int idx : report.partition.cyclic) {
    CHECK(report.records[std::size_t(idx)].graph.rank() <= 1);
  }
}

TEST_CASE("computed fixed rank never exceeds ambient rank") {
  std::mt19937_64 rng(31);
  FixedSearchBudget budget;
  budget.max_len = 6;
  for (int i = 0; i < 30; ++i) {
    int rank = 2 + int(rng() % 3);
    auto f = random_whitehead_auto(rng, rank, 1 + int(rng() % 6));
    auto res = freefix::fixed_subgroup(f, budget);
    CHECK(res.graph.rank() <= rank);
    CHECK(res.graph.ambient_rank() == rank);
  }
}
