#pragma once

#include <optional>
#include <vector>

#include "arithdisc/numeric.hpp"

namespace arithdisc {

/// Row-major dense integer matrix.
struct IMat {
  size_t rows = 0, cols = 0;
  std::vector<Integer> data;

  IMat() = default;
  IMat(size_t r, size_t c) : rows(r), cols(c), data(r * c, Integer(0)) {}
  Integer& at(size_t r, size_t c) { return data[r * cols + c]; }
  const Integer& at(size_t r, size_t c) const { return data[r * cols + c]; }
  static IMat identity(size_t n);
};

IMat imat_mul(const IMat& a, const IMat& b);

/// U * A * V = D with U, V unimodular and D diagonal with the divisibility
/// chain d1 | d2 | ...
struct SmithResult {
  IMat D, U, V;
};
SmithResult smith_normal_form(IMat a);

/// Solve A x = b over the integers; nullopt when no integral solution exists.
std::optional<std::vector<Integer>> solve_integer(const IMat& a,
                                                  const std::vector<Integer>& b);

/// Row-major dense rational matrix.
struct QMat {
  size_t rows = 0, cols = 0;
  std::vector<Rational> data;

  QMat() = default;
  QMat(size_t r, size_t c) : rows(r), cols(c), data(r * c, Rational(0)) {}
  Rational& at(size_t r, size_t c) { return data[r * cols + c]; }
  const Rational& at(size_t r, size_t c) const { return data[r * cols + c]; }
  static QMat identity(size_t n);
};

QMat qmat_mul(const QMat& a, const QMat& b);
std::vector<Rational> qmat_apply(const QMat& a, const std::vector<Rational>& v);
Rational qmat_det(QMat a);
/// nullopt when singular.
std::optional<QMat> qmat_inverse(QMat a);
std::optional<std::vector<Rational>> solve_rational(QMat a, std::vector<Rational> b);

}  // namespace arithdisc
