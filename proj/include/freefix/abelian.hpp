#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "freefix/endomorphism.hpp"

namespace freefix {

using BigInt = boost::multiprecision::cpp_int;

struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<BigInt> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c) {}

  BigInt& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
  const BigInt& at(int i, int j) const { return a[std::size_t(i) * cols + j]; }

  bool operator==(const IntMatrix&) const = default;
};

IntMatrix identity_matrix(int n);
IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y);
IntMatrix mat_sub(const IntMatrix& x, const IntMatrix& y);

// Exponent vector of a word.
std::vector<BigInt> ab_vector(const Word& w);

// Row convention: row i is the exponent vector of the image of generator i,
// so ab((w)f) = ab(w) * M and ab_matrix(f then g) = ab_matrix(f) * ab_matrix(g).
IntMatrix ab_matrix(const Endomorphism& f);

// One integer solution x of x * M = v, or std::nullopt when none exists.
std::optional<std::vector<BigInt>> ab_solve(const IntMatrix& m,
                                            const std::vector<BigInt>& v);

// Whether the exponent vector extends to a basis of Z^rank (gcd 1). A
// necessary condition for primitivity in the free group.
bool is_primitive_abelianized(const Word& w);

}  // namespace freefix
