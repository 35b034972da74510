#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freefix/word.hpp"

namespace freefix {

// Folded based core graph of a finitely generated subgroup of a free group
// (Stallings automaton). Immutable after construction; vertices are BFS
// renumbered from the basepoint (always vertex 0) with edge directions
// ordered a < A < b < B < ..., so equal subgroups yield identical graphs.
//
// The graph is kept "core with possible basepoint tail": every vertex other
// than the basepoint has degree >= 2.
struct PullbackComponent;

class SubgroupGraph {
 public:
  // Folds the generators' flower. Empty generator lists give the trivial
  // subgroup's one-vertex graph.
  static SubgroupGraph fold(std::span<const Word> gens, int rank);
  static SubgroupGraph full_rose(int rank);
  static SubgroupGraph trivial(int rank);

  int ambient_rank() const { return rank_; }
  int vertex_count() const { return nv_; }
  int edge_count() const;
  // Cycle rank |E| - |V| + 1, the rank of the subgroup.
  int rank() const;
  bool is_trivial() const { return nv_ == 1 && edge_count() == 0; }
  bool is_full_rose() const;

  // Transition along one letter; -1 when undefined.
  int walk(int v, Atom a) const {
    int w = adj_[static_cast<std::size_t>(v) * 2 * rank_ + atom_ordinal(a)];
    return w;
  }
  // Endpoint of reading a reduced word, or -1 if the path leaves the graph.
  int walk_word(int v, const Word& w) const;

  // Label word of the spanning-tree path basepoint -> v.
  Word tree_path(int v) const;

  bool member(const Word& w) const;

  // Free basis from the breadth-first spanning tree, in canonical edge order.
  std::vector<Word> basis() const;

  // Expresses a member in that basis: a word over rank() abstract letters.
  // std::nullopt when w is not a member.
  std::optional<Word> spell(const Word& w) const;

  // Exact subgroup equality (canonical forms are unique).
  bool operator==(const SubgroupGraph& o) const {
    return rank_ == o.rank_ && adj_ == o.adj_;
  }

  const std::string& canonical_key() const { return key_; }

  // Canonical encoding of the basepoint-free core; equal keys iff the
  // subgroups are conjugate. Empty core (trivial subgroup) encodes as "".
  const std::string& class_key() const { return class_key_; }

  // Conjugator c with this^c == other (H^c = c^-1 H c), if conjugate.
  std::optional<Word> conjugator_to(const SubgroupGraph& other) const;

  // The subgroup as its own conjugacy-class representative: the graph
  // rebased at the canonical core anchor (no basepoint tail). Trivial
  // subgroups are returned unchanged.
  SubgroupGraph class_representative() const;

  // All components of the product automaton with non-contractible core,
  // plus the based component (kept even when trivial). Based first, then
  // sorted by class encoding (ties by shortlex witness).
  static std::vector<PullbackComponent> pullback(const SubgroupGraph& h,
                                                 const SubgroupGraph& k);

  // Based intersection H cap K via the diagonal component of the pullback.
  SubgroupGraph intersect(const SubgroupGraph& k) const;

  // <x> cap H = <x^m>: least m >= 1 with x^m in H, or 0 when the
  // intersection is trivial. x must be non-trivial.
  int cyclic_intersection_index(const Word& x) const;

  struct PurityReport {
    bool impure = false;
    Word witness;  // x not in H with x^power in H, power >= 2
    int power = 0;
    int bound = 0;
  };
  // Searches witnesses x of length <= bound (skipping proper powers and
  // testing only the shortlex-smaller of {x, x^-1}), shortest first.
  PurityReport purity_check(int bound) const;

  struct InertiaViolation {
    std::vector<Word> k_gens;
    int k_rank = 0;
    int meet_rank = 0;
  };
  struct InertiaReport {
    int trials = 0;
    int gen_len_bound = 0;
    std::uint64_t seed = 0;
    std::vector<InertiaViolation> violations;
  };
  // Random subgroups K (1-3 generators, no-backtracking words of length
  // 1..gen_len_bound, mt19937_64 seeded as given); flags rank(H cap K) >
  // rank(K).
  InertiaReport inertia_sample(int trials, int gen_len_bound,
                               std::uint64_t seed) const;

  struct CosetBoundReport {
    bool ok = false;
    std::vector<int> distances;  // per conjugator, to the core
    int failing = -1;            // first index with 2*dist > |h|
  };
  // Verifies each coset vertex reached by u_i^-1 in the (lazily grown)
  // Schreier graph lies within |h|/2 of the core. Preconditions: h != 1 and
  // h^{u_i} in H for every i.
  CosetBoundReport coset_displacement_check(const Word& h,
                                            std::span<const Word> us) const;

  // Least-anchor witness c with this^c <= k, via label-preserving morphism
  // of basepoint-free cores; std::nullopt when [[this]] is not below [[k]].
  std::optional<Word> conjugate_into(const SubgroupGraph& k) const;

  // Some element of the coset intersection x0<z> cap H, or std::nullopt when
  // it is empty. Exact: folds a two-point automaton for x0<z> and takes its
  // product with the based graph.
  std::optional<Word> coset_solve(const Word& x0, const Word& z) const;

 private:
  SubgroupGraph() = default;
  static SubgroupGraph from_raw(int rank, int nv,
                                std::vector<std::int32_t> adj, int base,
                                bool keep_base);
  void finish();  // canonicalize + caches; expects folded, trimmed input

  // Vertices of the basepoint-free core (bit per vertex) and, when the core
  // is non-empty, the canonical anchor and the tree path word to it.
  std::vector<char> core_mask() const;

  int rank_ = 0;
  int nv_ = 0;
  std::vector<std::int32_t> adj_;  // nv_ x 2*rank_, -1 for undefined

  std::string key_;
  std::string class_key_;
  int anchor_ = 0;   // canonical core anchor (basepoint for trivial)
  Word anchor_path_;  // tree path word basepoint -> anchor

  // BFS spanning tree: parent vertex and entering atom (undefined for 0).
  std::vector<std::int32_t> parent_;
  std::vector<Atom> parent_atom_;
};

struct PullbackComponent {
  SubgroupGraph graph;  // presents [[H cap K^witness]]
  Word witness;         // identity for the based component
  bool based = false;
};

}  // namespace freefix
