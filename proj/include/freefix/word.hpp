#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "freefix/error.hpp"

namespace freefix {

// A letter of a free group, stored as a signed 1-based index: +i is the i-th
// generator, -i its inverse. Rank is carried by the Word, not the atom.
using Atom = std::int16_t;

inline Atom atom_inverse(Atom a) { return static_cast<Atom>(-a); }

// Position of an atom in the fixed letter order a < A < b < B < ...
// Doubles as the direction index of graph transitions.
inline int atom_ordinal(Atom a) {
  int idx = a > 0 ? a : -a;
  return 2 * (idx - 1) + (a < 0 ? 1 : 0);
}

inline Atom atom_from_ordinal(int ord) {
  Atom idx = static_cast<Atom>(ord / 2 + 1);
  return (ord % 2) ? static_cast<Atom>(-idx) : idx;
}

// Reduced word over a free group of a fixed rank. The reduced invariant is
// maintained by every constructor and operation.
class Word {
 public:
  Word() = default;
  explicit Word(int rank) : rank_(check_rank(rank)) {}

  // Reduces the given letter sequence.
  Word(int rank, std::span<const Atom> atoms);

  // Textual syntax: lowercase letter = generator, uppercase = inverse,
  // "1" = identity, whitespace ignored. Letters beyond the rank are errors.
  static Word parse(std::string_view text, int rank);

  int rank() const { return rank_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  Atom at(std::size_t i) const { return atoms_[i]; }

  std::string str() const;

  bool operator==(const Word& o) const = default;

 private:
  static int check_rank(int rank);

  int rank_ = 0;
  std::vector<Atom> atoms_;  // freely reduced

  friend Word concat(const Word&, const Word&);
  friend Word invert(const Word&);
};

Word concat(const Word& u, const Word& v);
Word invert(const Word& u);
Word power(const Word& u, int e);

// Conjugation u^c = c^-1 u c.
Word conjugate(const Word& u, const Word& c);

// Splits u = conjugator . core . conjugator^-1 with core cyclically reduced.
// Returns (core, conjugator).
std::pair<Word, Word> cyclic_reduce(const Word& u);

struct Root {
  Word root;     // not a proper power
  int exponent;  // u = root^exponent, exponent >= 1
};

// Maximal root of a non-trivial word. The identity has no root.
Root root_of(const Word& u);

// Shortlex order on reduced words: length first, then the letter order
// a < A < b < B < ...
bool shortlex_less(const Word& u, const Word& v);

// Some x with x^-1 u x = v, or nullopt when u and v are not conjugate.
// Exact: conjugacy in a free group is rotation of cyclic cores.
std::optional<Word> conjugating_word(const Word& u, const Word& v);

// In-place push of one letter onto a reduced buffer, cancelling if possible.
inline void push_reduced(std::vector<Atom>& buf, Atom a) {
  if (!buf.empty() && buf.back() == atom_inverse(a)) {
    buf.pop_back();
  } else {
    buf.push_back(a);
  }
}

}  // namespace freefix
