#include "freefix/endomorphism.hpp"

#include <algorithm>
#include <set>

namespace freefix {

Endomorphism::Endomorphism(int rank, std::vector<Word> images)
    : rank_(rank), images_(std::move(images)) {
  if (rank < 0) fail(ErrorCode::kInput, "negative rank");
  if (static_cast<int>(images_.size()) != rank) {
    fail(ErrorCode::kInput, "expected one image per generator");
  }
  for (const Word& w : images_) {
    if (w.rank() != rank) {
      fail(ErrorCode::kRankMismatch, "image over wrong rank");
    }
  }
}

Endomorphism Endomorphism::identity(int rank) {
  std::vector<Word> images;
  images.reserve(rank);
  for (Atom i = 1; i <= rank; ++i) {
    images.emplace_back(rank, std::span<const Atom>(&i, 1));
  }
  return Endomorphism(rank, std::move(images));
}

Endomorphism Endomorphism::inner(const Word& y) {
  Endomorphism f = identity(y.rank());
  return f.twist(y);
}

Endomorphism Endomorphism::letter_inversion(int rank) {
  std::vector<Word> images;
  images.reserve(rank);
  for (Atom i = 1; i <= rank; ++i) {
    Atom a = atom_inverse(i);
    images.emplace_back(rank, std::span<const Atom>(&a, 1));
  }
  return Endomorphism(rank, std::move(images));
}

int Endomorphism::max_image_length() const {
  std::size_t m = 0;
  for (const Word& w : images_) m = std::max(m, w.size());
  return static_cast<int>(m);
}

Word Endomorphism::apply(const Word& w) const {
  if (w.rank() != rank_) fail(ErrorCode::kRankMismatch, "apply: rank mismatch");
  std::vector<Atom> out;
  for (Atom a : w.atoms()) {
    const Word& img = images_[(a > 0 ? a : -a) - 1];
    if (a > 0) {
      for (Atom b : img.atoms()) push_reduced(out, b);
    } else {
      for (auto it = img.atoms().rbegin(); it != img.atoms().rend(); ++it) {
        push_reduced(out, atom_inverse(*it));
      }
    }
  }
  return Word(rank_, out);
}

Endomorphism Endomorphism::then(const Endomorphism& g) const {
  if (g.rank_ != rank_) fail(ErrorCode::kRankMismatch, "compose: rank mismatch");
  std::vector<Word> images;
  images.reserve(rank_);
  for (const Word& w : images_) images.push_back(g.apply(w));
  return Endomorphism(rank_, std::move(images));
}

Endomorphism Endomorphism::twist(const Word& y) const {
  if (y.rank() != rank_) fail(ErrorCode::kRankMismatch, "twist: rank mismatch");
  std::vector<Word> images;
  images.reserve(rank_);
  Word yi = invert(y);
  for (const Word& w : images_) images.push_back(concat(concat(yi, w), y));
  return Endomorphism(rank_, std::move(images));
}

bool Endomorphism::is_automorphism() const {
  int cached = auto_flag_.load(std::memory_order_relaxed);
  if (cached >= 0) return cached != 0;
  bool result = SubgroupGraph::fold(images_, rank_).is_full_rose();
  auto_flag_.store(result ? 1 : 0, std::memory_order_relaxed);
  return result;
}

namespace {

// Nielsen reduction state: current tuple u and its expression e in the
// original images (abstract letters 1..n).
struct Tracked {
  std::vector<Word> u;
  std::vector<Word> e;

  std::size_t total() const {
    std::size_t t = 0;
    for (const Word& w : u) t += w.size();
    return t;
  }
};

// u_i <- u_i * u_j^s (side 0) or u_j^s * u_i (side 1); i != j
void move_apply(Tracked& st, int i, int j, int s, int side) {
  Word uj = s > 0 ? st.u[j] : invert(st.u[j]);
  Word ej = s > 0 ? st.e[j] : invert(st.e[j]);
  if (side == 0) {
    st.u[i] = concat(st.u[i], uj);
    st.e[i] = concat(st.e[i], ej);
  } else {
    st.u[i] = concat(uj, st.u[i]);
    st.e[i] = concat(ej, st.e[i]);
  }
}

std::string state_key(const Tracked& st) {
  std::string k;
  for (const Word& w : st.u) {
    k += w.str();
    k.push_back('|');
  }
  return k;
}

bool is_letter_basis(const Tracked& st) {
  std::set<int> seen;
  for (const Word& w : st.u) {
    if (w.size() != 1) return false;
    Atom a = w.at(0);
    seen.insert(a > 0 ? a : -a);
  }
  return static_cast<int>(seen.size()) == static_cast<int>(st.u.size());
}

// Greedy total-length descent; returns when no elementary Nielsen move
// strictly shrinks the tuple.
void descend(Tracked& st) {
  int n = static_cast<int>(st.u.size());
  for (;;) {
    std::size_t best_gain = 0;
    int bi = -1, bj = -1, bs = 0, bside = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        for (int s : {1, -1}) {
          for (int side : {0, 1}) {
            Word uj = s > 0 ? st.u[j] : invert(st.u[j]);
            Word r = side == 0 ? concat(st.u[i], uj) : concat(uj, st.u[i]);
            if (r.size() < st.u[i].size()) {
              std::size_t gain = st.u[i].size() - r.size();
              if (gain > best_gain) {
                best_gain = gain;
                bi = i;
                bj = j;
                bs = s;
                bside = side;
              }
            }
          }
        }
      }
    }
    if (bi < 0) return;
    move_apply(st, bi, bj, bs, bside);
  }
}

}  // namespace

Endomorphism Endomorphism::inverse() const {
  if (!is_automorphism()) {
    fail(ErrorCode::kNotAutomorphism, "inverse: not an automorphism");
  }
  Tracked start;
  start.u = images_;
  for (Atom i = 1; i <= rank_; ++i) {
    start.e.emplace_back(rank_, std::span<const Atom>(&i, 1));
  }
  descend(start);

  // Plateau search over non-increasing moves until the tuple is a letter
  // basis. Nielsen's method guarantees one is reachable for a basis tuple.
  std::optional<Tracked> found;
  if (is_letter_basis(start)) {
    found = start;
  } else {
    std::set<std::string> visited{state_key(start)};
    std::vector<Tracked> frontier{start};
    constexpr std::size_t kStateCap = 200000;
    int n = rank_;
    while (!found && !frontier.empty() && visited.size() < kStateCap) {
      std::vector<Tracked> next;
      for (const Tracked& st : frontier) {
        std::size_t cur = st.total();
        for (int i = 0; i < n && !found; ++i) {
          for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            for (int s : {1, -1}) {
              for (int side : {0, 1}) {
                Tracked cand = st;
                move_apply(cand, i, j, s, side);
                if (cand.total() > cur) continue;
                descend(cand);
                auto key = state_key(cand);
                if (!visited.insert(key).second) continue;
                if (is_letter_basis(cand)) {
                  found = cand;
                  break;
                }
                next.push_back(std::move(cand));
              }
              if (found) break;
            }
            if (found) break;
          }
          if (found) break;
        }
        if (found) break;
      }
      frontier = std::move(next);
    }
    if (!found) {
      fail(ErrorCode::kNotAutomorphism,
           "inverse: Nielsen search exhausted (internal cap)");
    }
  }

  // u_i = a_k^sign with e_i(images) = u_i gives (a_k)f^-1 = e_i^sign read
  // over the original generators.
  std::vector<Word> inv_images(rank_, Word(rank_));
  std::vector<bool> set(rank_, false);
  for (int i = 0; i < rank_; ++i) {
    Atom a = found->u[i].at(0);
    int k = (a > 0 ? a : -a) - 1;
    inv_images[k] = a > 0 ? found->e[i] : invert(found->e[i]);
    set[k] = true;
  }
  for (bool b : set) {
    if (!b) fail(ErrorCode::kNotAutomorphism, "inverse: basis reconstruction");
  }
  Endomorphism inv(rank_, std::move(inv_images));

  Endomorphism check = then(inv);
  if (!(check == identity(rank_))) {
    fail(ErrorCode::kNotAutomorphism, "inverse: verification failed");
  }
  return inv;
}

Restriction Endomorphism::restrict_to(
    const SubgroupGraph& h) const {
  if (h.ambient_rank() != rank_) {
    fail(ErrorCode::kRankMismatch, "restrict: rank mismatch");
  }
  std::vector<Word> basis = h.basis();
  std::vector<Word> image_words;
  image_words.reserve(basis.size());
  for (const Word& b : basis) {
    Word fb = apply(b);
    if (!h.member(fb)) {
      fail(ErrorCode::kNotInvariant,
           "restrict: image of basis element " + b.str() + " leaves the subgroup");
    }
    image_words.push_back(fb);
  }
  // invariance must be onto: (H)f = H
  if (!(SubgroupGraph::fold(image_words, rank_) == h)) {
    fail(ErrorCode::kNotInvariant, "restrict: images do not generate the subgroup");
  }
  std::vector<Word> spelled;
  spelled.reserve(basis.size());
  for (const Word& fb : image_words) {
    auto s = h.spell(fb);
    if (!s) fail(ErrorCode::kNotInvariant, "restrict: spelling failed");
    spelled.push_back(*s);
  }
  return {Endomorphism(static_cast<int>(basis.size()), std::move(spelled)),
          std::move(basis)};
}

}  // namespace freefix
