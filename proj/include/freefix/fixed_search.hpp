#pragma once

#include <vector>

#include "freefix/endomorphism.hpp"
#include "freefix/subgroup_graph.hpp"

namespace freefix {

struct FixedSearchBudget {
  int max_len = 8;
  // <= 0 selects the default 2 * max_image_length * max_len, which provably
  // prunes nothing at this max_len.
  int displacement_cap = 0;
  int eigenvalue_len = 2;

  int effective_cap(const Endomorphism& f) const {
    if (displacement_cap > 0) return displacement_cap;
    return 2 * f.max_image_length() * max_len;
  }
  bool cap_below_image(const Endomorphism& f) const {
    return effective_cap(f) < f.max_image_length();
  }
};

// All w with (w)f = w, |w| <= max_len, and |((p)f)^-1 p| <= cap for every
// prefix p of w. Sorted shortlex; includes the identity; each result is
// re-verified by direct application.
std::vector<Word> enumerate_fixed(const Endomorphism& f,
                                  const FixedSearchBudget& budget);

enum class Verdict { kBoundedComplete, kOpen };

struct FixResult {
  SubgroupGraph graph;
  Verdict verdict = Verdict::kOpen;
  int last_growth = 0;  // largest length whose words enlarged the fold
  int max_len = 0;
  int displacement_cap = 0;
};

// Fold of the enumerated fixed words. kBoundedComplete when the fold was
// already stable over the last two length increments.
FixResult fixed_subgroup(const Endomorphism& f, const FixedSearchBudget& budget);

struct EigengroupRecord {
  Word eigenvalue;  // y with (x)f = y x y^-1 on the subgroup
  SubgroupGraph graph;
  Verdict verdict = Verdict::kOpen;
};

// Twists by every eigenvalue candidate |y| <= eigenvalue_len (shortlex
// order), keeps rank >= 1 eigengroups, deduplicates identical fixed graphs
// onto the shortlex-least eigenvalue. Sorted by rank descending, then
// eigenvalue.
std::vector<EigengroupRecord> eigengroup_scan(const Endomorphism& f,
                                              const FixedSearchBudget& budget);

struct ReidemeisterWitness {
  int from = -1;
  int to = -1;
  Word conjugator;  // c with Fix_from^c = Fix_to
  Word relation;    // ((c)f)^-1 y_from c, expected to equal y_to
  bool verified = false;
};

struct IsogrediencePartition {
  std::vector<std::vector<int>> classes;  // rank >= 2 records, grouped
  std::vector<int> cyclic;                // rank <= 1 records, not classified
  std::vector<ReidemeisterWitness> witnesses;
};

// Groups rank >= 2 records by conjugacy of their fixed graphs (for rank >= 2
// eigengroups this coincides with isogredience of the eigenvalues).
IsogrediencePartition isogredience_partition(
    const std::vector<EigengroupRecord>& records, const Endomorphism& f);

struct BhReport {
  std::vector<EigengroupRecord> records;
  IsogrediencePartition partition;
  int rank = 0;
  int sum_reduced_rank = 0;  // sum of (class rank - 1) over classes
  int class_count = 0;
  bool bound_ok = false;  // both <= rank - 1
  bool all_complete = false;
  FixedSearchBudget budget;
};

BhReport bh_report(const Endomorphism& f, const FixedSearchBudget& budget);

// Shortlex stream of all reduced words of length <= max_len (identity
// included); shared by scans and tests.
std::vector<Word> all_words_upto(int rank, int max_len);

}  // namespace freefix
