#pragma once

#include <atomic>
#include <optional>
#include <vector>

#include "freefix/subgroup_graph.hpp"
#include "freefix/word.hpp"

namespace freefix {

// Endomorphism of a free group, given by generator images. Composition is
// left to right: (compose(f, g))(x) = g(f(x)).
struct Restriction;

class Endomorphism {
 public:
  Endomorphism(int rank, std::vector<Word> images);

  static Endomorphism identity(int rank);
  // x -> y^-1 x y
  static Endomorphism inner(const Word& y);
  // every generator to its inverse
  static Endomorphism letter_inversion(int rank);

  Endomorphism(const Endomorphism& o)
      : rank_(o.rank_), images_(o.images_), auto_flag_(o.auto_flag_.load()) {}
  Endomorphism& operator=(const Endomorphism& o) {
    rank_ = o.rank_;
    images_ = o.images_;
    auto_flag_.store(o.auto_flag_.load());
    return *this;
  }

  int rank() const { return rank_; }
  const std::vector<Word>& images() const { return images_; }
  int max_image_length() const;

  Word apply(const Word& w) const;

  // apply this, then g
  Endomorphism then(const Endomorphism& g) const;
  // x -> y^-1 (x)this y
  Endomorphism twist(const Word& y) const;

  // Images generate the whole group iff the endomorphism is an automorphism
  // (free groups are hopfian). Cached after the first call.
  bool is_automorphism() const;

  // Inverse automorphism via Nielsen reduction of the image tuple with
  // transformation tracking. Throws when not an automorphism.
  Endomorphism inverse() const;

  // Restricts to an invariant subgroup ((H)f = H required) rewritten in the
  // subgroup's canonical basis.
  Restriction restrict_to(const SubgroupGraph& h) const;

  bool operator==(const Endomorphism& o) const {
    return rank_ == o.rank_ && images_ == o.images_;
  }

 private:
  int rank_;
  std::vector<Word> images_;
  // -1 unknown, else 0/1; write-once cache, races are benign
  mutable std::atomic<int> auto_flag_{-1};
};

struct Restriction {
  Endomorphism map;         // over rank = |basis| abstract letters
  std::vector<Word> basis;  // basis of the subgroup, canonical order
};

inline Endomorphism compose(const Endomorphism& f, const Endomorphism& g) {
  return f.then(g);
}

}  // namespace freefix
