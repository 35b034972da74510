#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freefix/endomorphism.hpp"
#include "freefix/fixed_search.hpp"
#include "freefix/subgroup_graph.hpp"
#include "freefix/word.hpp"

namespace freefix {

// Data for the global decomposition
//   F = K_1 * ... * K_r * <y_1,...,y_s> * L,
//   Fix = <w_1,...,w_r, y_1^-1 h_0 y_1, ..., y_s^-1 h_{s-1} y_s>,
// with (y_j)f = h'_{j-1} y_j and (h_j)f = h'_j h_j h'_j^-1, where h_j and
// h'_j live in H_j = K_1 * ... * K_r * <y_1..y_j>.
struct DecompositionCertificate {
  int rank = 0;
  std::vector<std::vector<Word>> k_factors;  // r generator lists
  std::vector<Word> y_letters;               // s stable letters
  std::vector<Word> l_generators;            // passive factor L
  std::vector<Word> w_elements;              // r fixed non-proper-powers
  std::vector<Word> h_elements;              // h_0 .. h_{s-1}
  std::vector<Word> h_prime_elements;        // h'_0 .. h'_{s-1}
};

// One case of the local decomposition F = H * K:
//   (i)  Fix <= H,
//   (ii) K invariant too, Fix = (H cap Fix) * (K cap Fix), rank-1 right part,
//   (iii) K = <y>, (y)f = h'y, (h)f = h'hh'^-1, h no proper power,
//         Fix = (H cap Fix) * <y^-1 h y>.
struct MainconnexCase {
  std::string tag;  // "i" | "ii" | "iii"
  std::vector<Word> h_generators;
  std::vector<Word> k_generators;  // cases i and ii
  std::optional<Word> y;           // case iii
  std::optional<Word> h;           // case iii
  std::optional<Word> h_prime;     // case iii
};

struct VerifyClause {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerifyReport {
  bool pass = false;
  // The theorem's hypothesis fails (e.g. cyclic fixed subgroup), so there is
  // nothing to check; pass is true and clauses carry the explanation.
  bool vacuous = false;
  std::vector<VerifyClause> clauses;
};

// Extension by trivially-moving letters: images 1..m from phi_h, letters
// m+1..n default to their inverses (custom images allowed; the extension
// must stay an automorphism). With the defaults the fixed subgroup is
// unchanged, which is re-checked at the given budget.
Endomorphism extend_trivially(const Endomorphism& phi_h, int n,
                              const std::optional<std::vector<Word>>& extra =
                                  std::nullopt,
                              const FixedSearchBudget& budget = {});

// Block automorphism of the free product: Fix(f1 * f2) = Fix f1 * Fix f2,
// re-checked at the given budget.
Endomorphism free_product_auto(const Endomorphism& f1, const Endomorphism& f2,
                               const FixedSearchBudget& budget = {});

// Stable-letter extension: new top generator y with (y)f = h' h^r y.
// Requires phi_h automorphic, h != 1 not a proper power, h' != 1 and
// (h)phi_h = h' h h'^-1; each violation is reported by name.
Endomorphism stable_letter_extend(const Endomorphism& phi_h, const Word& h,
                                  const Word& h_prime, int r);

struct GoodRRecord {
  int r = 0;
  bool good = false;
  Verdict verdict = Verdict::kOpen;
  std::string note;
};

// Builds the stable-letter extension for every r in [r_lo, r_hi] and marks r
// good when its fixed subgroup at budget is exactly
// Fix(phi_h) * <y^-1 h y> with a bounded-complete verdict.
std::vector<GoodRRecord> find_good_r(const Endomorphism& phi_h, const Word& h,
                                     const Word& h_prime, int r_lo, int r_hi,
                                     const FixedSearchBudget& budget);

// Answer to: given F = H * <y> with H f-invariant and h in H, does
// (y^-1 h y) in Fix f propagate to some h' in H with (y)f = h'y and
// (h)f = h' h h'^-1?
struct ImageyReport {
  bool fixed = false;               // (y^-1 h y)f == y^-1 h y
  std::optional<Word> h_prime;      // (y)f y^-1 when fixed
  bool h_prime_in_h = false;        // h' in H
  bool conjugation_ok = false;      // (h)f == h' h h'^-1
  bool conjugator_exists = false;   // exact: some h' in H conjugates
  std::optional<Word> conjugator;   // witness when one exists
  std::string detail;
};

ImageyReport imagey_solve(const Endomorphism& f, const SubgroupGraph& h_graph,
                          const Word& y, const Word& h);

VerifyReport verify_mainconnex(const Endomorphism& f, const MainconnexCase& mc,
                               const FixedSearchBudget& budget);

VerifyReport verify_cormain(const Endomorphism& f,
                            const DecompositionCertificate& cert,
                            const FixedSearchBudget& budget);

// Maximal-rank case check (rank Fix = rank F): F = H * <y> with H invariant
// and either (i) y fixed, Fix = (H cap Fix) * <y>, or (ii) (y)f = h^r y with
// 1 != h in H cap Fix not a proper power, r != 0, and
// Fix = (H cap Fix) * <y^-1 h y>. Case (ii) is declared by passing (h, r).
VerifyReport collins_turner_check(const Endomorphism& f,
                                  const std::vector<Word>& h_generators,
                                  const Word& y,
                                  const std::optional<std::pair<Word, int>>& hr,
                                  const FixedSearchBudget& budget);

}  // namespace freefix
