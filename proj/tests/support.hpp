// Shared test helpers. The oracles here are deliberately written against the
// definitions, not the library's algorithms: NaiveGraph folds by repeated
// scanning over edge maps, enumeration is plain recursion. Agreement between
// these and the library is the point of the tests that use them.
#pragma once

#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "freefix/endomorphism.hpp"
#include "freefix/factor_system.hpp"
#include "freefix/subgroup_graph.hpp"
#include "freefix/word.hpp"

namespace testsupport {

using freefix::Atom;
using freefix::Endomorphism;
using freefix::SubgroupGraph;
using freefix::Word;

// Stallings automaton folded the slow way: merge any two equally labelled
// edges leaving one vertex, restart the scan, repeat to a fixed point.
class NaiveGraph {
 public:
  static NaiveGraph flower(const std::vector<Word>& gens, int rank) {
    NaiveGraph g;
    g.rank_ = rank;
    g.out_.emplace_back();
    for (const Word& w : gens) {
      int at = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        bool last = i + 1 == w.size();
        int to = last ? 0 : g.fresh();
        g.link(at, w.at(i), to);
        at = to;
      }
    }
    g.fold();
    return g;
  }

  bool member(const Word& w) const {
    int v = 0;
    for (Atom a : w.atoms()) {
      v = step(v, a);
      if (v < 0) return false;
    }
    return v == 0;
  }

  // |E| - |V| + 1 over live vertices; leaves do not affect it, so no
  // trimming is needed.
  int cycle_rank() const {
    int verts = 0;
    int edges = 0;
    for (int v = 0; v < int(out_.size()); ++v) {
      if (find(v) != v) continue;
      ++verts;
      for (const auto& [ord, to] : out_[v]) {
        if (ord % 2 == 0) ++edges;  // count each geometric edge once
      }
    }
    return edges - verts + 1;
  }

 private:
  int rank_ = 0;
  // vertex -> (atom ordinal -> vertex); parallel edges keep the multimap
  // honest until folding removes them
  std::vector<std::multimap<int, int>> out_;
  std::vector<int> parent_;

  int fresh() {
    out_.emplace_back();
    return int(out_.size()) - 1;
  }

  void link(int from, Atom a, int to) {
    out_[from].emplace(freefix::atom_ordinal(a), to);
    out_[to].emplace(freefix::atom_ordinal(freefix::atom_inverse(a)), from);
  }

  int find(int v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }

  int step(int v, Atom a) const {
    const auto& m = out_[find(v)];
    auto it = m.find(freefix::atom_ordinal(a));
    return it == m.end() ? -1 : find(it->second);
  }

  void fold() {
    parent_.resize(out_.size());
    std::iota(parent_.begin(), parent_.end(), 0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < int(out_.size()) && !changed; ++v) {
        if (find(v) != v) continue;
        // union the labelled edges over the whole class, not just the rep
        std::map<int, int> seen;
        for (int u = 0; u < int(out_.size()) && !changed; ++u) {
          if (find(u) != v) continue;
          for (const auto& [ord, to] : out_[u]) {
            auto [it, fresh_label] = seen.emplace(ord, find(to));
            if (!fresh_label && it->second != find(to)) {
              merge(it->second, find(to));
              changed = true;
              break;
            }
          }
        }
      }
    }
    // compact: at the fixed point every class has one target per label
    std::vector<std::multimap<int, int>> folded(out_.size());
    for (int v = 0; v < int(out_.size()); ++v) {
      for (const auto& [ord, to] : out_[v]) {
        int rep = find(v);
        int target = find(to);
        auto range = folded[rep].equal_range(ord);
        bool present = false;
        for (auto it = range.first; it != range.second; ++it) {
          present |= it->second == target;
        }
        if (!present) folded[rep].emplace(ord, target);
      }
    }
    out_ = std::move(folded);
  }

  void merge(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (x > y) std::swap(x, y);  // keep the basepoint's class at 0
    parent_[y] = x;
  }
};

inline Word random_reduced_word(std::mt19937_64& rng, int rank, int len) {
  std::vector<Atom> atoms;
  std::uniform_int_distribution<int> pick(0, 2 * rank - 1);
  while (int(atoms.size()) < len) {
    Atom a = freefix::atom_from_ordinal(pick(rng));
    if (!atoms.empty() && atoms.back() == freefix::atom_inverse(a)) continue;
    atoms.push_back(a);
  }
  return Word(rank, atoms);
}

inline std::vector<Word> random_words(std::mt19937_64& rng, int rank,
                                      int count, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::vector<Word> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(random_reduced_word(rng, rank, len(rng)));
  }
  return out;
}

// Composition of `moves` uniformly chosen Whitehead automorphisms.
inline Endomorphism random_whitehead_auto(std::mt19937_64& rng, int rank,
                                          int moves) {
  const auto& pool = freefix::whitehead_moves(rank);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  Endomorphism f = Endomorphism::identity(rank);
  for (int i = 0; i < moves; ++i) f = f.then(pool[pick(rng)]);
  return f;
}

// Substitutes basis words for the abstract letters of `spelled`.
inline Word expand_in_basis(const std::vector<Word>& basis, int ambient_rank,
                            const Word& spelled) {
  Word out(ambient_rank);
  for (Atom a : spelled.atoms()) {
    const Word& b = basis[std::size_t(a > 0 ? a : -a) - 1];
    out = concat(out, a > 0 ? b : invert(b));
  }
  return out;
}

// All reduced words of length <= max_len, own recursion (identity included).
inline std::vector<Word> brute_words(int rank, int max_len) {
  std::vector<Word> out;
  std::vector<Atom> cur;
  auto rec = [&](auto&& self) -> void {
    out.emplace_back(rank, std::span<const Atom>(cur));
    if (int(cur.size()) == max_len) return;
    for (int ord = 0; ord < 2 * rank; ++ord) {
      Atom a = freefix::atom_from_ordinal(ord);
      if (!cur.empty() && cur.back() == freefix::atom_inverse(a)) continue;
      cur.push_back(a);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

inline std::vector<Word> brute_fixed(const Endomorphism& f, int max_len) {
  std::vector<Word> out;
  for (const Word& w : brute_words(f.rank(), max_len)) {
    if (f.apply(w) == w) out.push_back(w);
  }
  return out;
}

}  // namespace testsupport
