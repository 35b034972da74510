#pragma once

#include <optional>
#include <vector>

#include "freefix/endomorphism.hpp"
#include "freefix/subgroup_graph.hpp"
#include "freefix/word.hpp"

namespace freefix {

// Class ranks in non-increasing order; empty = complexity 0.
using ComplexityVector = std::vector<int>;

ComplexityVector complexity_of(const class FreeFactorSystem& s);

// Lexicographic three-way compare (<0, 0, >0). A proper prefix is smaller,
// so 0 < (2,1,...,1) < (n).
int cx_compare(const ComplexityVector& c1, const ComplexityVector& c2);

// Subgroup system: non-trivial conjugacy classes, held as canonical
// class representatives in canonical-key order. The verified flag is only
// set by certify(), which finds conjugators embedding all classes in a
// common free factorization; until then this is just a subgroup system.
class FreeFactorSystem {
 public:
  FreeFactorSystem() = default;
  explicit FreeFactorSystem(int rank) : rank_(rank) {}
  // Deduplicates conjugates and drops trivial classes.
  FreeFactorSystem(int rank, std::vector<SubgroupGraph> graphs);

  static FreeFactorSystem total(int rank);  // {[[F]]}

  int rank() const { return rank_; }
  const std::vector<SubgroupGraph>& classes() const { return classes_; }
  bool verified() const { return verified_; }
  const std::vector<Word>& witnesses() const { return witnesses_; }

  // Searches conjugators x_i (words up to conj_bound) making the conjugated
  // classes a free product by rank additivity, then requires the join to be
  // a free factor (free_factor_test at depth). Ranks add under joining iff
  // the join is the free product of the parts, so success certifies the
  // free-factor-system property; failure leaves the flag untouched and the
  // question open.
  bool certify(int conj_bound, int depth);

  bool operator==(const FreeFactorSystem& o) const;

 private:
  int rank_ = 0;
  std::vector<SubgroupGraph> classes_;
  bool verified_ = false;
  std::vector<Word> witnesses_;
};

// Conjugator c with h^c <= k, or nullopt; exact ([[h]] <= [[k]]).
std::optional<Word> class_leq(const SubgroupGraph& h, const SubgroupGraph& k);

// All non-identity Whitehead automorphisms of the second kind: each pair
// (A, a) with a a letter, A a set of letters excluding a and a^-1, acting by
// x -> xa (x in A, x^-1 not), x -> a^-1 x (x^-1 in A, x not),
// x -> a^-1 x a (both), x -> x (neither). Letter permutations are omitted:
// they commute past these moves up to reparametrization and never change
// core sizes, so they add nothing to the descent search.
const std::vector<Endomorphism>& whitehead_moves(int rank);

enum class FactorVerdict { kYes, kNo, kUnknown };

struct FreeFactorReport {
  FactorVerdict verdict = FactorVerdict::kUnknown;
  // Automorphism mapping the subgroup exactly onto <letters>; re-verified.
  std::optional<Endomorphism> witness;
  std::vector<int> letters;  // 1-based generator indices of the target rose
  int moves = 0;             // Whitehead moves composed into the witness
};

// Bounded free-factor detection: steepest descent on basepoint-free core
// size over Whitehead moves, with breadth-first plateau exploration, at most
// `depth` moves in total. YES iff the image core becomes a sub-rose; NO only
// by the rank obstruction rank(h) > rank(F); otherwise UNKNOWN.
FreeFactorReport free_factor_test(const SubgroupGraph& h, int depth);

// All non-trivial [[H_i cap K_j^y]] over class pairs, deduplicated.
FreeFactorSystem wedge(const FreeFactorSystem& s1, const FreeFactorSystem& s2);

// Every class of s1 lies (up to conjugacy) under some class of s2.
bool system_leq(const FreeFactorSystem& s1, const FreeFactorSystem& s2);

// [[H_i]]f = [[H_i]] for every class (identity on classes, not a permutation).
bool invariant_check(const FreeFactorSystem& s, const Endomorphism& f);

}  // namespace freefix
