#include "freefix/abelian.hpp"

namespace freefix {

IntMatrix identity_matrix(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) fail(ErrorCode::kInput, "matrix shape mismatch");
  IntMatrix out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int k = 0; k < x.cols; ++k) {
      if (x.at(i, k) == 0) continue;
      for (int j = 0; j < y.cols; ++j) {
        out.at(i, j) += x.at(i, k) * y.at(k, j);
      }
    }
  }
  return out;
}

IntMatrix mat_sub(const IntMatrix& x, const IntMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) {
    fail(ErrorCode::kInput, "matrix shape mismatch");
  }
  IntMatrix out(x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.a[i] - y.a[i];
  return out;
}

std::vector<BigInt> ab_vector(const Word& w) {
  std::vector<BigInt> v(w.rank());
  for (Atom a : w.atoms()) {
    if (a > 0) {
      v[a - 1] += 1;
    } else {
      v[-a - 1] -= 1;
    }
  }
  return v;
}

IntMatrix ab_matrix(const Endomorphism& f) {
  IntMatrix m(f.rank(), f.rank());
  for (int i = 0; i < f.rank(); ++i) {
    auto row = ab_vector(f.images()[i]);
    for (int j = 0; j < f.rank(); ++j) m.at(i, j) = row[j];
  }
  return m;
}

namespace {

void swap_rows(IntMatrix& m, int i, int j) {
  for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}

void add_row(IntMatrix& m, int dst, int src, const BigInt& q) {
  for (int c = 0; c < m.cols; ++c) m.at(dst, c) += q * m.at(src, c);
}

}  // namespace

std::optional<std::vector<BigInt>> ab_solve(const IntMatrix& m,
                                            const std::vector<BigInt>& v) {
  if (static_cast<int>(v.size()) != m.cols) {
    fail(ErrorCode::kInput, "ab_solve: vector length mismatch");
  }
  // Row Hermite form H = U * M with U unimodular; solve z H = v by
  // substitution, then x = z U.
  IntMatrix h = m;
  IntMatrix u = identity_matrix(m.rows);
  std::vector<std::pair<int, int>> pivots;  // (row, col)
  int prow = 0;
  for (int c = 0; c < h.cols && prow < h.rows; ++c) {
    for (;;) {
      int best = -1;
      for (int r = prow; r < h.rows; ++r) {
        if (h.at(r, c) == 0) continue;
        if (best < 0 || abs(h.at(r, c)) < abs(h.at(best, c))) best = r;
      }
      if (best < 0) break;
      swap_rows(h, prow, best);
      swap_rows(u, prow, best);
      bool clean = true;
      for (int r = prow + 1; r < h.rows; ++r) {
        if (h.at(r, c) == 0) continue;
        BigInt q = h.at(r, c) / h.at(prow, c);
        add_row(h, r, prow, -q);
        add_row(u, r, prow, -q);
        if (h.at(r, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h.at(prow, c) != 0) {
      if (h.at(prow, c) < 0) {
        for (int cc = 0; cc < h.cols; ++cc) h.at(prow, cc) = -h.at(prow, cc);
        for (int cc = 0; cc < u.cols; ++cc) u.at(prow, cc) = -u.at(prow, cc);
      }
      pivots.emplace_back(prow, c);
      ++prow;
    }
  }

  std::vector<BigInt> rem = v;
  std::vector<BigInt> z(h.rows);
  for (auto [r, c] : pivots) {
    if (rem[c] % h.at(r, c) != 0) return std::nullopt;
    BigInt q = rem[c] / h.at(r, c);
    z[r] = q;
    for (int cc = 0; cc < h.cols; ++cc) rem[cc] -= q * h.at(r, cc);
  }
  for (const BigInt& x : rem) {
    if (x != 0) return std::nullopt;
  }

  std::vector<BigInt> out(m.rows);
  for (int j = 0; j < m.rows; ++j) {
    BigInt s = 0;
    for (int r = 0; r < h.rows; ++r) {
      if (z[r] != 0) s += z[r] * u.at(r, j);
    }
    out[j] = s;
  }
  return out;
}

bool is_primitive_abelianized(const Word& w) {
  auto v = ab_vector(w);
  BigInt g = 0;
  for (const BigInt& x : v) g = gcd(g, x);
  return g == 1;
}

}  // namespace freefix
