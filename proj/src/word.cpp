#include "freefix/word.hpp"

#include <algorithm>
#include <cctype>

namespace freefix {

namespace {

constexpr int kMaxTextRank = 26;

void check_same_rank(const Word& u, const Word& v) {
  if (u.rank() != v.rank()) {
    fail(ErrorCode::kRankMismatch, "words over different ranks (" +
                                       std::to_string(u.rank()) + " vs " +
                                       std::to_string(v.rank()) + ")");
  }
}

}  // namespace

int Word::check_rank(int rank) {
  if (rank < 0) fail(ErrorCode::kInput, "negative rank");
  return rank;
}

Word::Word(int rank, std::span<const Atom> atoms) : rank_(check_rank(rank)) {
  atoms_.reserve(atoms.size());
  for (Atom a : atoms) {
    int idx = a > 0 ? a : -a;
    if (idx < 1 || idx > rank_) {
      fail(ErrorCode::kInput,
           "letter index " + std::to_string(idx) + " outside rank " +
               std::to_string(rank_));
    }
    push_reduced(atoms_, a);
  }
}

Word Word::parse(std::string_view text, int rank) {
  check_rank(rank);
  std::vector<Atom> atoms;
  bool saw_one = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '1') {
      saw_one = true;
      continue;
    }
    Atom a;
    if (c >= 'a' && c <= 'z') {
      a = static_cast<Atom>(c - 'a' + 1);
    } else if (c >= 'A' && c <= 'Z') {
      a = static_cast<Atom>(-(c - 'A' + 1));
    } else {
      fail(ErrorCode::kInput, std::string("bad character '") + c + "' in word");
    }
    int idx = a > 0 ? a : -a;
    if (idx > rank || idx > kMaxTextRank) {
      fail(ErrorCode::kInput, std::string("letter '") + c +
                                  "' outside rank " + std::to_string(rank));
    }
    atoms.push_back(a);
  }
  if (saw_one && !atoms.empty()) {
    fail(ErrorCode::kInput, "'1' mixed with letters");
  }
  return Word(rank, atoms);
}

std::string Word::str() const {
  if (atoms_.empty()) return "1";
  std::string out;
  out.reserve(atoms_.size());
  for (Atom a : atoms_) {
    if (a > 0) {
      out.push_back(static_cast<char>('a' + a - 1));
    } else {
      out.push_back(static_cast<char>('A' - a - 1));
    }
  }
  return out;
}

Word concat(const Word& u, const Word& v) {
  check_same_rank(u, v);
  Word out(u.rank());
  out.atoms_ = u.atoms_;
  out.atoms_.reserve(u.size() + v.size());
  for (Atom a : v.atoms_) push_reduced(out.atoms_, a);
  return out;
}

Word invert(const Word& u) {
  Word out(u.rank());
  out.atoms_.reserve(u.size());
  for (auto it = u.atoms_.rbegin(); it != u.atoms_.rend(); ++it) {
    out.atoms_.push_back(atom_inverse(*it));
  }
  return out;
}

Word power(const Word& u, int e) {
  Word base = e < 0 ? invert(u) : u;
  int n = e < 0 ? -e : e;
  Word out(u.rank());
  for (int i = 0; i < n; ++i) out = concat(out, base);
  return out;
}

Word conjugate(const Word& u, const Word& c) {
  return concat(concat(invert(c), u), c);
}

std::pair<Word, Word> cyclic_reduce(const Word& u) {
  const auto& a = u.atoms();
  std::size_t lo = 0, hi = a.size();
  while (hi - lo >= 2 && a[lo] == atom_inverse(a[hi - 1])) {
    ++lo;
    --hi;
  }
  Word core(u.rank(), std::span<const Atom>(a.data() + lo, hi - lo));
  Word conj(u.rank(), std::span<const Atom>(a.data(), lo));
  return {core, conj};
}

Root root_of(const Word& u) {
  if (u.empty()) fail(ErrorCode::kDomain, "identity has no root");
  auto [core, conj] = cyclic_reduce(u);
  const auto& c = core.atoms();
  std::size_t n = c.size();
  // Least period that divides the cyclic-core length. A cyclically reduced
  // word is a proper power iff it is a full repetition of such a period.
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = c[i] == c[i - p];
    if (!ok) continue;
    Word z(u.rank(), std::span<const Atom>(c.data(), p));
    Word root = concat(concat(conj, z), invert(conj));
    return {root, static_cast<int>(n / p)};
  }
  fail(ErrorCode::kDomain, "unreachable");  // n >= 1 always yields p = n
}

bool shortlex_less(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  const auto& a = u.atoms();
  const auto& b = v.atoms();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return atom_ordinal(a[i]) < atom_ordinal(b[i]);
  }
  return false;
}

std::optional<Word> conjugating_word(const Word& u, const Word& v) {
  if (u.rank() != v.rank()) fail(ErrorCode::kRankMismatch, "conjugating_word");
  auto [cu, pu] = cyclic_reduce(u);
  auto [cv, pv] = cyclic_reduce(v);
  if (cu.size() != cv.size()) return std::nullopt;
  if (cu.empty()) return Word(u.rank());
  const auto& a = cu.atoms();
  const auto& b = cv.atoms();
  std::size_t n = a.size();
  // cu = p.q and cv = q.p give cv = p^-1 cu p; then x = pu . p . pv^-1.
  for (std::size_t j = 0; j < n; ++j) {
    bool match = true;
    for (std::size_t i = 0; i < n && match; ++i) match = a[(j + i) % n] == b[i];
    if (!match) continue;
    Word p(u.rank(), std::span<const Atom>(a.data(), j));
    return concat(concat(pu, p), invert(pv));
  }
  return std::nullopt;
}

}  // namespace freefix
