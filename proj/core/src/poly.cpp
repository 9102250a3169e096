#include "arithdisc/poly.hpp"

#include <algorithm>
#include <cmath>

#include "arithdisc/errors.hpp"

namespace arithdisc {

QPoly poly_trim(QPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int poly_degree(const QPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

bool poly_is_zero(const QPoly& p) { return poly_degree(p) < 0; }

QPoly poly_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return poly_trim(r);
}

QPoly poly_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return poly_trim(r);
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (poly_is_zero(a) || poly_is_zero(b)) return {};
  QPoly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return poly_trim(r);
}

QPoly poly_scale(const QPoly& a, const Rational& c) {
  if (c == 0) return {};
  QPoly r = a;
  for (auto& x : r) x *= c;
  return poly_trim(r);
}

Rational poly_eval(const QPoly& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatInterval poly_eval_interval(const QPoly& p, const RatInterval& x) {
  RatInterval acc = RatInterval::point(Rational(0));
  for (auto it = p.rbegin(); it != p.rend(); ++it)
    acc = acc * x + RatInterval::point(*it);
  return acc;
}

QPoly poly_derivative(const QPoly& p) {
  if (p.size() <= 1) return {};
  QPoly r(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Rational(static_cast<long>(i));
  return poly_trim(r);
}

QPoly poly_rem(const QPoly& a, const QPoly& b) {
  int db = poly_degree(b);
  if (db < 0) throw Error("poly_rem: division by zero polynomial");
  QPoly r = poly_trim(a);
  while (poly_degree(r) >= db) {
    int dr = poly_degree(r);
    Rational c = r[dr] / b[db];
    for (int i = 0; i <= db; ++i) r[dr - db + i] -= c * b[i];
    r = poly_trim(std::move(r));
  }
  return r;
}

QPoly poly_div(const QPoly& a, const QPoly& b) {
  int db = poly_degree(b);
  if (db < 0) throw Error("poly_div: division by zero polynomial");
  QPoly r = poly_trim(a);
  int dr = poly_degree(r);
  if (dr < db) return {};
  QPoly q(dr - db + 1, Rational(0));
  while ((dr = poly_degree(r)) >= db) {
    Rational c = r[dr] / b[db];
    q[dr - db] = c;
    for (int i = 0; i <= db; ++i) r[dr - db + i] -= c * b[i];
    r = poly_trim(std::move(r));
  }
  return poly_trim(q);
}

QPoly poly_gcd(QPoly a, QPoly b) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!poly_is_zero(b)) {
    QPoly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  int d = poly_degree(a);
  if (d >= 0 && a[d] != 1) {
    Rational inv = 1 / a[d];
    for (auto& c : a) c *= inv;
  }
  return a;
}

bool poly_squarefree(const QPoly& p) {
  return poly_degree(poly_gcd(p, poly_derivative(p))) <= 0;
}

QPoly poly_squarefree_part(const QPoly& p) {
  QPoly g = poly_gcd(p, poly_derivative(p));
  if (poly_degree(g) <= 0) return poly_trim(p);
  return poly_div(p, g);
}

Rational poly_resultant(const QPoly& a, const QPoly& b, int deg_a, int deg_b) {
  int da = deg_a >= 0 ? deg_a : poly_degree(a);
  int db = deg_b >= 0 ? deg_b : poly_degree(b);
  if (da < 0 || db < 0) return Rational(0);
  if (da == 0 && db == 0) return Rational(1);
  auto coeff = [](const QPoly& p, int i) {
    return i < static_cast<int>(p.size()) ? p[i] : Rational(0);
  };
  int dim = da + db;
  if (dim == 0) return Rational(1);
  // Sylvester matrix, then exact fraction Gaussian elimination.
  std::vector<std::vector<Rational>> m(dim, std::vector<Rational>(dim, Rational(0)));
  for (int row = 0; row < db; ++row)
    for (int i = 0; i <= da; ++i) m[row][row + i] = coeff(a, da - i);
  for (int row = 0; row < da; ++row)
    for (int i = 0; i <= db; ++i) m[db + row][row + i] = coeff(b, db - i);
  Rational det(1);
  for (int col = 0; col < dim; ++col) {
    int pivot = -1;
    for (int r = col; r < dim; ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    Rational inv = 1 / m[col][col];
    for (int r = col + 1; r < dim; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] * inv;
      for (int c = col; c < dim; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

SturmChain SturmChain::build(const QPoly& p) {
  SturmChain s;
  s.p = poly_trim(p);
  QPoly f0 = s.p;
  QPoly f1 = poly_derivative(s.p);
  s.chain.push_back(f0);
  while (!poly_is_zero(f1)) {
    s.chain.push_back(f1);
    QPoly r = poly_rem(f0, f1);
    for (auto& c : r) c = -c;
    f0 = std::move(f1);
    f1 = poly_trim(std::move(r));
  }
  return s;
}

int SturmChain::sign_variations(const Rational& x) const {
  int variations = 0;
  int prev = 0;
  for (const auto& f : chain) {
    Rational v = poly_eval(f, x);
    int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s != 0) {
      if (prev != 0 && s != prev) ++variations;
      prev = s;
    }
  }
  return variations;
}

int SturmChain::count_roots(const Rational& a, const Rational& b) const {
  return sign_variations(a) - sign_variations(b);
}

namespace {

Rational cauchy_bound(const QPoly& p) {
  int d = poly_degree(p);
  Rational lead = p[d];
  Rational m(0);
  for (int i = 0; i < d; ++i) m = std::max(m, Rational(abs(p[i] / lead)));
  return m + 1;
}

// Pick a bisection point in (a, b) where p does not vanish.
Rational split_point(const QPoly& p, const Rational& a, const Rational& b) {
  Rational mid = (a + b) / 2;
  Rational step = (b - a) / 4;
  while (poly_eval(p, mid) == 0) {
    mid += step;
    step /= 2;
    if (mid >= b) throw Error("split_point: could not avoid root");
  }
  return mid;
}

}  // namespace

std::vector<RatInterval> isolate_real_roots(const QPoly& p) {
  QPoly q = poly_trim(p);
  if (poly_degree(q) <= 0) return {};
  SturmChain sturm = SturmChain::build(q);
  Rational bound = cauchy_bound(q);
  std::vector<RatInterval> result;
  std::vector<RatInterval> work;
  // Endpoints never vanish: |roots| < bound.
  work.emplace_back(-bound, bound);
  size_t guard = 0;
  while (!work.empty()) {
    if (++guard > 100000) throw IsolationFailed("real root isolation did not settle");
    RatInterval iv = work.back();
    work.pop_back();
    int count = sturm.count_roots(iv.lo, iv.hi);
    if (count == 0) continue;
    if (count == 1) {
      result.push_back(iv);
      continue;
    }
    Rational mid = split_point(q, iv.lo, iv.hi);
    work.emplace_back(iv.lo, mid);
    work.emplace_back(mid, iv.hi);
  }
  std::sort(result.begin(), result.end(),
            [](const RatInterval& x, const RatInterval& y) { return x.lo < y.lo; });
  return result;
}

RatInterval refine_root(const QPoly& p, RatInterval iv, unsigned bits) {
  if (iv.is_point()) return iv;
  Rational target = make_rational(1, pow_int(2, bits));
  Rational va = poly_eval(p, iv.lo);
  if (va == 0) return RatInterval::point(iv.lo);
  int sa = va > 0 ? 1 : -1;
  while (iv.width() > target) {
    Rational mid = (iv.lo + iv.hi) / 2;
    Rational vm = poly_eval(p, mid);
    if (vm == 0) return RatInterval::point(mid);
    if ((vm > 0 ? 1 : -1) == sa)
      iv.lo = mid;
    else
      iv.hi = mid;
  }
  return iv;
}

ReImParts complex_parts(const QPoly& p) {
  // p(u+iv) = sum_k c_k sum_j C(k,j) u^(k-j) (iv)^j.
  int d = poly_degree(p);
  ReImParts parts;
  if (d < 0) return parts;
  parts.A.assign(d + 1, QPoly{});
  parts.B1.assign(d + 1, QPoly{});
  std::vector<std::vector<Integer>> binom(d + 1, std::vector<Integer>(d + 1, 0));
  for (int k = 0; k <= d; ++k) {
    binom[k][0] = 1;
    for (int j = 1; j <= k; ++j)
      binom[k][j] = binom[k - 1][j - 1] + (j <= k - 1 ? binom[k - 1][j] : Integer(0));
  }
  for (int k = 0; k <= d; ++k) {
    if (k >= static_cast<int>(p.size()) || p[k] == 0) continue;
    for (int j = 0; j <= k; ++j) {
      Rational c = p[k] * Rational(binom[k][j]);
      // i^j cycle: 1, i, -1, -i.
      int mod = j % 4;
      if (mod == 2 || mod == 3) c = -c;
      int upow = k - j;
      if (mod % 2 == 0) {
        QPoly& t = parts.A[j];
        if (static_cast<int>(t.size()) <= upow) t.resize(upow + 1, Rational(0));
        t[upow] += c;
      } else {
        // Coefficient of v^j in Im; B1 stores the v^(j-1) slot.
        QPoly& t = parts.B1[j - 1];
        if (static_cast<int>(t.size()) <= upow) t.resize(upow + 1, Rational(0));
        t[upow] += c;
      }
    }
  }
  while (!parts.A.empty() && poly_is_zero(parts.A.back())) parts.A.pop_back();
  while (!parts.B1.empty() && poly_is_zero(parts.B1.back())) parts.B1.pop_back();
  return parts;
}

namespace {

// Evaluate a v-coefficient list at u = x, giving a univariate polynomial in v.
QPoly eval_u(const std::vector<QPoly>& f, const Rational& x) {
  QPoly r(f.size());
  for (size_t j = 0; j < f.size(); ++j) r[j] = poly_eval(f[j], x);
  return r;  // keep formal length; resultant uses formal degrees
}

int max_u_degree(const std::vector<QPoly>& f) {
  int d = 0;
  for (const auto& c : f) d = std::max(d, poly_degree(c));
  return d;
}

QPoly lagrange_interpolate(const std::vector<Rational>& xs,
                           const std::vector<Rational>& ys) {
  QPoly acc{};
  for (size_t i = 0; i < xs.size(); ++i) {
    QPoly basis{Rational(1)};
    Rational denom(1);
    for (size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      basis = poly_mul(basis, QPoly{-xs[j], Rational(1)});
      denom *= xs[i] - xs[j];
    }
    acc = poly_add(acc, poly_scale(basis, ys[i] / denom));
  }
  return acc;
}

std::vector<QPoly> transpose_biv(const std::vector<QPoly>& f) {
  int du = max_u_degree(f);
  std::vector<QPoly> g(du + 1);
  for (size_t j = 0; j < f.size(); ++j)
    for (size_t k = 0; k < f[j].size(); ++k) {
      if (f[j][k] == 0) continue;
      if (g[k].size() <= j) g[k].resize(j + 1, Rational(0));
      g[k][j] = f[j][k];
    }
  return g;
}

}  // namespace

QPoly resultant_in_v(const std::vector<QPoly>& a, const std::vector<QPoly>& b) {
  int deg_va = static_cast<int>(a.size()) - 1;
  int deg_vb = static_cast<int>(b.size()) - 1;
  if (deg_va < 0 || deg_vb < 0) return {};
  int bound = max_u_degree(a) * std::max(deg_vb, 0) +
              max_u_degree(b) * std::max(deg_va, 0) + 1;
  std::vector<Rational> xs, ys;
  for (int i = 0; i <= bound; ++i) {
    Rational x(i);
    xs.push_back(x);
    ys.push_back(poly_resultant(eval_u(a, x), eval_u(b, x), deg_va, deg_vb));
  }
  return poly_trim(lagrange_interpolate(xs, ys));
}

QPoly resultant_in_u(const std::vector<QPoly>& a, const std::vector<QPoly>& b) {
  return resultant_in_v(transpose_biv(a), transpose_biv(b));
}

}  // namespace arithdisc
