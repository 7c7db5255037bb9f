#include "multiarr/intlinalg.hpp"

#include <algorithm>

#include "multiarr/errors.hpp"

namespace multiarr {

namespace {

std::size_t rows_of(const ZMatrix& m) { return m.size(); }
std::size_t cols_of(const ZMatrix& m) { return m.empty() ? 0 : m[0].size(); }

ZMatrix identity(std::size_t n) {
  ZMatrix id(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

// round-to-nearest quotient keeps entries small during the gcd chase
mpz_class rounded_quotient(const mpz_class& a, const mpz_class& b) {
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (2 * abs(r) > abs(b)) q += sgn(b) * sgn(r);
  return q;
}

}  // namespace

std::vector<std::vector<mpz_class>> integer_kernel_basis(const ZMatrix& m) {
  const std::size_t r = rows_of(m), c = cols_of(m);
  ZMatrix a = m;
  ZMatrix u = identity(c);  // column ops applied to both: a = m * u throughout

  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < r; ++i) std::swap(a[i][x], a[i][y]);
    for (std::size_t i = 0; i < c; ++i) std::swap(u[i][x], u[i][y]);
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
    if (sgn(q) == 0) return;
    for (std::size_t i = 0; i < r; ++i) a[i][dst] -= q * a[i][src];
    for (std::size_t i = 0; i < c; ++i) u[i][dst] -= q * u[i][src];
  };
  auto col_negate = [&](std::size_t x) {
    for (std::size_t i = 0; i < r; ++i) a[i][x] = -a[i][x];
    for (std::size_t i = 0; i < c; ++i) u[i][x] = -u[i][x];
  };

  std::size_t pc = 0;
  for (std::size_t row = 0; row < r && pc < c; ++row) {
    // gcd-chase row `row` across columns pc..c-1 down to a single entry
    while (true) {
      std::size_t best = c;
      for (std::size_t j = pc; j < c; ++j) {
        if (sgn(a[row][j]) == 0) continue;
        if (best == c || abs(a[row][j]) < abs(a[row][best])) best = j;
      }
      if (best == c) break;  // row already zero on the active block
      col_swap(pc, best);
      bool cleared = true;
      for (std::size_t j = pc + 1; j < c; ++j) {
        if (sgn(a[row][j]) == 0) continue;
        col_axpy(j, pc, rounded_quotient(a[row][j], a[row][pc]));
        if (sgn(a[row][j]) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (pc < c && sgn(a[row][pc]) != 0) {
      if (sgn(a[row][pc]) < 0) col_negate(pc);
      ++pc;
    }
  }

  std::vector<std::vector<mpz_class>> kernel;
  for (std::size_t j = pc; j < c; ++j) {
    std::vector<mpz_class> v(c);
    for (std::size_t i = 0; i < c; ++i) v[i] = u[i][j];
    kernel.push_back(std::move(v));
  }
  return kernel;
}

namespace {

// Smith normal form by alternating row and column gcd elimination. Only the
// left transform is tracked (as its inverse), which is what quotient-lattice
// computations need.
void smith_impl(ZMatrix& a, ZMatrix* linv, std::vector<mpz_class>& diag) {
  const std::size_t r = rows_of(a), c = cols_of(a);

  auto row_swap = [&](std::size_t x, std::size_t y) {
    std::swap(a[x], a[y]);
    if (linv)  // L' = E L  =>  Linv' = Linv E^{-1}: swap columns x,y of Linv
      for (std::size_t i = 0; i < r; ++i) std::swap((*linv)[i][x], (*linv)[i][y]);
  };
  auto row_axpy = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
    // R_dst -= q R_src; inverse adds q back: Linv column src += q * column dst
    if (sgn(q) == 0) return;
    for (std::size_t j = 0; j < c; ++j) a[dst][j] -= q * a[src][j];
    if (linv)
      for (std::size_t i = 0; i < r; ++i) (*linv)[i][src] += q * (*linv)[i][dst];
  };
  auto row_negate = [&](std::size_t x) {
    for (std::size_t j = 0; j < c; ++j) a[x][j] = -a[x][j];
    if (linv)
      for (std::size_t i = 0; i < r; ++i) (*linv)[i][x] = -(*linv)[i][x];
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < r; ++i) std::swap(a[i][x], a[i][y]);
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
    if (sgn(q) == 0) return;
    for (std::size_t i = 0; i < r; ++i) a[i][dst] -= q * a[i][src];
  };

  const std::size_t n = std::min(r, c);
  for (std::size_t k = 0; k < n; ++k) {
    // move the absolutely smallest nonzero entry of the trailing block to (k,k)
    while (true) {
      std::size_t bi = r, bj = c;
      for (std::size_t i = k; i < r; ++i)
        for (std::size_t j = k; j < c; ++j) {
          if (sgn(a[i][j]) == 0) continue;
          if (bi == r || abs(a[i][j]) < abs(a[bi][bj])) {
            bi = i;
            bj = j;
          }
        }
      if (bi == r) {
        diag.push_back(0);
        break;
      }
      if (bi != k) row_swap(k, bi);
      if (bj != k) col_swap(k, bj);
      bool clean = true;
      for (std::size_t i = k + 1; i < r; ++i) {
        row_axpy(i, k, rounded_quotient(a[i][k], a[k][k]));
        if (sgn(a[i][k]) != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < c; ++j) {
        col_axpy(j, k, rounded_quotient(a[k][j], a[k][k]));
        if (sgn(a[k][j]) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility sweep: pivot must divide the whole trailing block
      bool divides_all = true;
      for (std::size_t i = k + 1; i < r && divides_all; ++i)
        for (std::size_t j = k + 1; j < c && divides_all; ++j)
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[k][k].get_mpz_t())) {
            // fold the offending row into row k and restart the pivot hunt
            row_axpy(k, i, mpz_class(-1));
            divides_all = false;
          }
      if (!divides_all) continue;
      if (sgn(a[k][k]) < 0) row_negate(k);
      diag.push_back(a[k][k]);
      break;
    }
    if (diag.size() == k + 1 && sgn(diag.back()) == 0) {
      // trailing block is zero: pad and stop
      while (diag.size() < n) diag.push_back(0);
      break;
    }
  }
  while (diag.size() < n) diag.push_back(0);
}

}  // namespace

std::vector<mpz_class> smith_invariant_factors(const ZMatrix& m) {
  if (rows_of(m) == 0 || cols_of(m) == 0) return {};
  ZMatrix a = m;
  std::vector<mpz_class> diag;
  smith_impl(a, nullptr, diag);
  std::vector<mpz_class> out;
  for (const auto& d : diag)
    if (sgn(d) != 0) out.push_back(d);
  return out;
}

SmithDecomposition smith_with_left_inverse(const ZMatrix& m) {
  SmithDecomposition out;
  const std::size_t r = rows_of(m);
  out.left_inverse = identity(r);
  if (r == 0 || cols_of(m) == 0) return out;
  ZMatrix a = m;
  smith_impl(a, &out.left_inverse, out.diagonal);
  return out;
}

std::vector<mpz_class> solve_integer_in_basis(const ZMatrix& b, const std::vector<mpz_class>& v) {
  const std::size_t r = rows_of(b), c = cols_of(b);
  if (v.size() != r) throw DomainError("solve_integer_in_basis: dimension mismatch");
  // rational Gaussian elimination on [B | v]
  std::vector<std::vector<mpq_class>> m(r, std::vector<mpq_class>(c + 1));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m[i][j] = mpq_class(b[i][j]);
    m[i][c] = mpq_class(v[i]);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    std::size_t p = row;
    while (p < r && sgn(m[p][col]) == 0) ++p;
    if (p == r) continue;
    std::swap(m[row], m[p]);
    mpq_class inv = 1 / m[row][col];
    for (std::size_t j = col; j <= c; ++j) m[row][j] *= inv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == row || sgn(m[i][col]) == 0) continue;
      mpq_class f = m[i][col];
      for (std::size_t j = col; j <= c; ++j) m[i][j] -= f * m[row][j];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < r; ++i)
    if (sgn(m[i][c]) != 0) throw InternalError("solve_integer_in_basis: inconsistent system");
  if (pivot_col.size() != c) throw InternalError("solve_integer_in_basis: basis not full rank");
  std::vector<mpz_class> x(c);
  for (std::size_t k = 0; k < c; ++k) {
    const mpq_class& val = m[k][c];
    if (val.get_den() != 1)
      throw InternalError("solve_integer_in_basis: non-integral coordinates");
    x[k] = val.get_num();
  }
  return x;
}

ZMatrix unimodular_completion(const std::vector<mpz_class>& a) {
  const std::size_t n = a.size();
  ZMatrix m = identity(n);  // maintain m * a_orig = v via row ops
  std::vector<mpz_class> v = a;

  auto row_axpy = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
    if (sgn(q) == 0) return;
    v[dst] -= q * v[src];
    for (std::size_t j = 0; j < n; ++j) m[dst][j] -= q * m[src][j];
  };

  while (true) {
    std::size_t best = n, nonzero = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(v[i]) == 0) continue;
      ++nonzero;
      if (best == n || abs(v[i]) < abs(v[best])) best = i;
    }
    if (best == n) throw DomainError("unimodular_completion: zero vector");
    if (nonzero == 1) {
      if (v[best] == -1) {
        v[best] = 1;
        for (std::size_t j = 0; j < n; ++j) m[best][j] = -m[best][j];
      }
      if (v[best] != 1)
        throw DomainError("unimodular_completion: vector is not primitive");
      if (best != 0) {
        std::swap(v[0], v[best]);
        std::swap(m[0], m[best]);
        // keep det = +-1; sign does not matter for substitutions
      }
      break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == best || sgn(v[i]) == 0) continue;
      row_axpy(i, best, rounded_quotient(v[i], v[best]));
    }
  }
  // W^T = m
  ZMatrix w(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w[i][j] = m[j][i];
  return w;
}

}  // namespace multiarr
