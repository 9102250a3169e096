#include "arithdisc/intlinalg.hpp"

#include <algorithm>

#include "arithdisc/errors.hpp"

namespace arithdisc {

IMat IMat::identity(size_t n) {
  IMat m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IMat imat_mul(const IMat& a, const IMat& b) {
  if (a.cols != b.rows) throw Error("imat_mul: shape mismatch");
  IMat r(a.rows, b.cols);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t k = 0; k < a.cols; ++k) {
      if (a.at(i, k) == 0) continue;
      for (size_t j = 0; j < b.cols; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return r;
}

namespace {

void row_swap(IMat& m, size_t r1, size_t r2) {
  for (size_t c = 0; c < m.cols; ++c) std::swap(m.at(r1, c), m.at(r2, c));
}
void col_swap(IMat& m, size_t c1, size_t c2) {
  for (size_t r = 0; r < m.rows; ++r) std::swap(m.at(r, c1), m.at(r, c2));
}
// row r1 += q * row r2
void row_addmul(IMat& m, size_t r1, size_t r2, const Integer& q) {
  for (size_t c = 0; c < m.cols; ++c) m.at(r1, c) += q * m.at(r2, c);
}
void col_addmul(IMat& m, size_t c1, size_t c2, const Integer& q) {
  for (size_t r = 0; r < m.rows; ++r) m.at(r, c1) += q * m.at(r, c2);
}
void row_negate(IMat& m, size_t r) {
  for (size_t c = 0; c < m.cols; ++c) m.at(r, c) = -m.at(r, c);
}

}  // namespace

SmithResult smith_normal_form(IMat a) {
  const size_t rows = a.rows, cols = a.cols;
  SmithResult res{a, IMat::identity(rows), IMat::identity(cols)};
  IMat& D = res.D;
  IMat& U = res.U;
  IMat& V = res.V;

  size_t k = 0;
  const size_t rank_bound = std::min(rows, cols);
  while (k < rank_bound) {
    // Find the nonzero entry of smallest absolute value in the trailing block.
    size_t pr = k, pc = k;
    bool found = false;
    Integer best;
    for (size_t r = k; r < rows; ++r)
      for (size_t c = k; c < cols; ++c) {
        if (D.at(r, c) == 0) continue;
        Integer v = abs(D.at(r, c));
        if (!found || v < best) {
          best = v;
          pr = r;
          pc = c;
          found = true;
        }
      }
    if (!found) break;
    if (pr != k) {
      row_swap(D, k, pr);
      row_swap(U, k, pr);
    }
    if (pc != k) {
      col_swap(D, k, pc);
      col_swap(V, k, pc);
    }
    if (D.at(k, k) < 0) {
      row_negate(D, k);
      row_negate(U, k);
    }

    bool clean = true;
    for (size_t r = k + 1; r < rows; ++r) {
      if (D.at(r, k) == 0) continue;
      Integer q = -floor_div(D.at(r, k), D.at(k, k));
      row_addmul(D, r, k, q);
      row_addmul(U, r, k, q);
      if (D.at(r, k) != 0) clean = false;
    }
    for (size_t c = k + 1; c < cols; ++c) {
      if (D.at(k, c) == 0) continue;
      Integer q = -floor_div(D.at(k, c), D.at(k, k));
      col_addmul(D, c, k, q);
      col_addmul(V, c, k, q);
      if (D.at(k, c) != 0) clean = false;
    }
    if (!clean) continue;  // smaller pivot appeared; repeat at the same k

    // Enforce divisibility: pivot must divide the whole trailing block.
    bool chained = true;
    for (size_t r = k + 1; r < rows && chained; ++r)
      for (size_t c = k + 1; c < cols && chained; ++c) {
        if (D.at(r, c) % D.at(k, k) != 0) {
          row_addmul(D, k, r, 1);
          row_addmul(U, k, r, 1);
          chained = false;
        }
      }
    if (!chained) continue;
    ++k;
  }
  return res;
}

std::optional<std::vector<Integer>> solve_integer(const IMat& a,
                                                  const std::vector<Integer>& b) {
  if (b.size() != a.rows) throw Error("solve_integer: shape mismatch");
  SmithResult s = smith_normal_form(a);
  std::vector<Integer> ub(a.rows, Integer(0));
  for (size_t r = 0; r < a.rows; ++r)
    for (size_t c = 0; c < a.rows; ++c) ub[r] += s.U.at(r, c) * b[c];
  std::vector<Integer> z(a.cols, Integer(0));
  size_t diag = std::min(a.rows, a.cols);
  for (size_t i = 0; i < a.rows; ++i) {
    const Integer d = i < diag ? s.D.at(i, i) : Integer(0);
    if (d == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else {
      if (ub[i] % d != 0) return std::nullopt;
      if (i < a.cols) z[i] = ub[i] / d;
    }
  }
  std::vector<Integer> x(a.cols, Integer(0));
  for (size_t r = 0; r < a.cols; ++r)
    for (size_t c = 0; c < a.cols; ++c) x[r] += s.V.at(r, c) * z[c];
  return x;
}

QMat QMat::identity(size_t n) {
  QMat m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMat qmat_mul(const QMat& a, const QMat& b) {
  if (a.cols != b.rows) throw Error("qmat_mul: shape mismatch");
  QMat r(a.rows, b.cols);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t k = 0; k < a.cols; ++k) {
      if (a.at(i, k) == 0) continue;
      for (size_t j = 0; j < b.cols; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return r;
}

std::vector<Rational> qmat_apply(const QMat& a, const std::vector<Rational>& v) {
  if (v.size() != a.cols) throw Error("qmat_apply: shape mismatch");
  std::vector<Rational> r(a.rows, Rational(0));
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t j = 0; j < a.cols; ++j) r[i] += a.at(i, j) * v[j];
  return r;
}

Rational qmat_det(QMat a) {
  if (a.rows != a.cols) throw Error("qmat_det: not square");
  Rational det(1);
  for (size_t col = 0; col < a.cols; ++col) {
    size_t pivot = col;
    while (pivot < a.rows && a.at(pivot, col) == 0) ++pivot;
    if (pivot == a.rows) return Rational(0);
    if (pivot != col) {
      for (size_t c = 0; c < a.cols; ++c) std::swap(a.at(pivot, c), a.at(col, c));
      det = -det;
    }
    det *= a.at(col, col);
    Rational inv = 1 / a.at(col, col);
    for (size_t r = col + 1; r < a.rows; ++r) {
      if (a.at(r, col) == 0) continue;
      Rational f = a.at(r, col) * inv;
      for (size_t c = col; c < a.cols; ++c) a.at(r, c) -= f * a.at(col, c);
    }
  }
  return det;
}

std::optional<QMat> qmat_inverse(QMat a) {
  if (a.rows != a.cols) throw Error("qmat_inverse: not square");
  size_t n = a.rows;
  QMat inv = QMat::identity(n);
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && a.at(pivot, col) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col)
      for (size_t c = 0; c < n; ++c) {
        std::swap(a.at(pivot, c), a.at(col, c));
        std::swap(inv.at(pivot, c), inv.at(col, c));
      }
    Rational d = 1 / a.at(col, col);
    for (size_t c = 0; c < n; ++c) {
      a.at(col, c) *= d;
      inv.at(col, c) *= d;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a.at(r, col) == 0) continue;
      Rational f = a.at(r, col);
      for (size_t c = 0; c < n; ++c) {
        a.at(r, c) -= f * a.at(col, c);
        inv.at(r, c) -= f * inv.at(col, c);
      }
    }
  }
  return inv;
}

std::optional<std::vector<Rational>> solve_rational(QMat a, std::vector<Rational> b) {
  auto inv = qmat_inverse(std::move(a));
  if (!inv) return std::nullopt;
  return qmat_apply(*inv, b);
}

}  // namespace arithdisc
