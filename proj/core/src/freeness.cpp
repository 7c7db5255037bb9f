#include "multiarr/freeness.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "multiarr/groebner_field.hpp"
#include "multiarr/intlinalg.hpp"
#include "multiarr/primes.hpp"

namespace multiarr {

namespace {

const IntegerRing kZZ;
const RationalField kQQ;

template <class R>
struct KernelData {
  GroebnerBasis<R> kernel;
  std::vector<std::pair<ModuleElement<R>, std::uint32_t>> mingens;
};

template <class R>
KernelData<R> arrangement_kernel(const Multiarrangement& a, R ring) {
  PresentedMap<R> phi = a.presentation(ring);
  KernelData<R> out{kernel_of_presented_map(phi, ring, a.dim()), {}};
  out.mingens = minimal_generators(out.kernel);
  return out;
}

Multiarrangement arrangement_for_field(const Multiarrangement& a, FieldSpec field) {
  if (field.is_rational()) {
    if (a.characteristic() != 0)
      throw DomainError("characteristic-0 analysis of a reduced arrangement");
    return a;
  }
  if (a.characteristic() == field.characteristic) return a;
  if (a.characteristic() != 0)
    throw DomainError("arrangement characteristic does not match the requested field");
  return reduce_mod_p(a, field.characteristic);
}

/// Row-echelon rank over a field.
template <class R>
std::size_t matrix_rank(const R& ring, std::vector<std::vector<typename R::Elem>> m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t p = rank;
    while (p < rows && ring.is_zero(m[p][col])) ++p;
    if (p == rows) continue;
    std::swap(m[rank], m[p]);
    typename R::Elem inv = ring.inv(m[rank][col]);
    for (std::size_t j = col; j < cols; ++j) m[rank][j] = ring.mul(m[rank][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || ring.is_zero(m[i][col])) continue;
      typename R::Elem f = m[i][col];
      for (std::size_t j = col; j < cols; ++j)
        m[i][j] = ring.sub(m[i][j], ring.mul(f, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

template <class R>
std::vector<std::uint32_t> mingen_degrees(
    const std::vector<std::pair<ModuleElement<R>, std::uint32_t>>& g) {
  std::vector<std::uint32_t> out;
  for (const auto& [elem, deg] : g) out.push_back(deg);
  std::sort(out.begin(), out.end());
  return out;
}

PolyZ fp_poly_to_int(const PolyFp& f) {
  std::vector<PolyZ::Term> terms;
  for (const auto& t : f.terms())
    terms.push_back({t.mono, mpz_class(static_cast<unsigned long>(t.coeff))});
  return PolyZ::from_terms(kZZ, f.nvars(), std::move(terms), f.order());
}

IntegerBasis integer_basis_for_exponents(const Multiarrangement& a,
                                         const std::vector<std::uint32_t>& exponents);

}  // namespace

FreenessReport decide_freeness(const Multiarrangement& a, FieldSpec field, bool with_certificate) {
  const Multiarrangement arr = arrangement_for_field(a, field);
  const std::size_t l = arr.dim();
  FreenessReport report;
  report.field = field;

  if (field.is_rational()) {
    KernelData<RationalField> kd = arrangement_kernel(arr, kQQ);
    report.generator_count = kd.mingens.size();
    report.generator_degrees = mingen_degrees(kd.mingens);
    if (report.generator_count < l)
      throw InternalError("kernel of rank " + std::to_string(l) + " has fewer generators");
    report.free = report.generator_count == l;
    if (report.free && with_certificate) {
      IntegerBasis ib = integer_basis_for_exponents(arr, report.generator_degrees);
      report.certificate = SaitoCertificate{ib.basis, ib.exponents, ib.det_constant};
      report.det_constant_prime_support = ib.prime_support;
    }
    return report;
  }

  PrimeField fp(field.characteristic);
  KernelData<PrimeField> kd = arrangement_kernel(arr, fp);
  report.generator_count = kd.mingens.size();
  report.generator_degrees = mingen_degrees(kd.mingens);
  if (report.generator_count < l)
    throw InternalError("kernel of rank " + std::to_string(l) + " has fewer generators");
  report.free = report.generator_count == l;
  if (report.free && with_certificate) {
    SaitoCertificate cert;
    cert.exponents = report.generator_degrees;
    // mingens already come sorted by (degree, leading term)
    std::vector<std::vector<PolyFp>> matrix;
    for (const auto& [g, deg] : kd.mingens) {
      matrix.push_back(g.components());
      std::vector<PolyZ> row;
      for (const auto& f : matrix.back()) row.push_back(fp_poly_to_int(f));
      cert.basis.push_back(std::move(row));
    }
    PolyFp det = determinant(matrix);
    PolyFp q = arr.defining_polynomial(fp);
    auto quot = poly_divides_exact(q, det);
    if (!quot || quot->is_zero() || !quot->is_constant())
      throw InternalError("free decision not certified: determinant is not cQ");
    cert.det_constant = mpz_class(static_cast<unsigned long>(quot->constant_coefficient()));
    report.certificate = std::move(cert);
  }
  return report;
}

namespace {

/// Integer coefficient lattice of the degree-d homogeneous part of Ker(phi_ZZ):
/// unknowns are the coefficients of (g_1..g_l) and of the cofactors h_i in
/// sum_j a_ij g_j = alpha_i^(m_i) h_i. Returns a lattice basis expressed in
/// the g-coordinates (one vector = l polynomials of degree d, flattened over
/// enumerate_monomials order).
std::vector<std::vector<mpz_class>> kernel_lattice_basis_at_degree(const Multiarrangement& a,
                                                                   std::uint32_t d) {
  const std::size_t l = a.dim();
  const std::size_t n = a.size();
  const std::vector<Monomial> bd = enumerate_monomials(l, d);
  const std::size_t gcols = l * bd.size();

  std::vector<PolyZ> powers;
  std::vector<std::size_t> h_offset(n, 0);
  std::vector<std::vector<Monomial>> h_basis(n);
  std::size_t hcols = 0;
  for (std::size_t i = 0; i < n; ++i) {
    powers.push_back(a.forms()[i].to_polynomial(kZZ).pow(a.mults()[i]));
    h_offset[i] = hcols;
    if (a.mults()[i] <= d) {
      h_basis[i] = enumerate_monomials(l, d - a.mults()[i]);
      hcols += h_basis[i].size();
    }
  }

  std::map<std::vector<std::uint32_t>, std::size_t> mono_index;
  for (std::size_t k = 0; k < bd.size(); ++k) mono_index.emplace(bd[k].exponents(), k);

  ZMatrix m(n * bd.size(), std::vector<mpz_class>(gcols + hcols, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < bd.size(); ++k) {
      auto& row = m[i * bd.size() + k];
      for (std::size_t j = 0; j < l; ++j) row[j * bd.size() + k] = a.forms()[i].coeffs()[j];
      for (std::size_t t = 0; t < h_basis[i].size(); ++t) {
        const Monomial& kappa = h_basis[i][t];
        if (!kappa.divides(bd[k])) continue;
        row[gcols + h_offset[i] + t] = -powers[i].coefficient(bd[k].quotient(kappa));
      }
    }
  }

  std::vector<std::vector<mpz_class>> kernel = integer_kernel_basis(m);
  std::vector<std::vector<mpz_class>> out;
  for (const auto& v : kernel) out.emplace_back(v.begin(), v.begin() + gcols);
  return out;
}

std::vector<PolyZ> lattice_vector_to_polys(const std::vector<mpz_class>& v, std::size_t l,
                                           const std::vector<Monomial>& bd) {
  std::vector<PolyZ> out;
  for (std::size_t j = 0; j < l; ++j) {
    std::vector<PolyZ::Term> terms;
    for (std::size_t k = 0; k < bd.size(); ++k) {
      const mpz_class& c = v[j * bd.size() + k];
      if (sgn(c) != 0) terms.push_back({bd[k], c});
    }
    out.push_back(PolyZ::from_terms(kZZ, l, std::move(terms)));
  }
  return out;
}

IntegerBasis integer_basis_for_exponents(const Multiarrangement& a,
                                         const std::vector<std::uint32_t>& exponents) {
  const std::size_t l = a.dim();
  if (exponents.size() != l)
    throw InternalError("integer basis requested for a non-free arrangement");
  IntegerBasis out;
  out.exponents = exponents;

  std::map<std::uint32_t, std::size_t> degree_mult;
  for (auto e : exponents) degree_mult[e]++;

  std::vector<std::pair<std::vector<PolyZ>, std::uint32_t>> chosen;  // (row, degree)
  for (const auto& [d, r] : degree_mult) {
    const std::vector<Monomial> bd = enumerate_monomials(l, d);
    std::vector<std::vector<mpz_class>> basis = kernel_lattice_basis_at_degree(a, d);
    // expected dim of D(A,m)_d for a free module with these exponents
    std::size_t expected = 0;
    for (auto e : exponents)
      if (e <= d) {
        std::size_t free_vars = l - 1, top = d - e + l - 1;
        // binom(d - e + l - 1, l - 1)
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), top, free_vars);
        expected += b.get_ui();
      }
    if (basis.size() != expected)
      throw InternalError("degree-" + std::to_string(d) + " kernel lattice has dimension " +
                          std::to_string(basis.size()) + ", expected " + std::to_string(expected));

    // monomial multiples of the rows already chosen, in g-coordinates
    std::vector<std::vector<mpz_class>> multiples;
    for (const auto& [row, e] : chosen) {
      for (const Monomial& kappa : enumerate_monomials(l, d - e)) {
        std::vector<mpz_class> v(l * bd.size(), 0);
        for (std::size_t j = 0; j < l; ++j) {
          for (const auto& t : row[j].terms()) {
            Monomial shifted = t.mono.mul(kappa);
            for (std::size_t k = 0; k < bd.size(); ++k)
              if (bd[k] == shifted) {
                v[j * bd.size() + k] = t.coeff;
                break;
              }
          }
        }
        multiples.push_back(std::move(v));
      }
    }

    std::vector<std::vector<mpz_class>> picks;
    if (multiples.empty()) {
      if (basis.size() != r)
        throw InternalError("first degree class dimension mismatch");
      picks = basis;
    } else {
      // coordinates of the multiples in the lattice basis
      const std::size_t s = basis.size();
      ZMatrix bmat(basis[0].size(), std::vector<mpz_class>(s));
      for (std::size_t col = 0; col < s; ++col)
        for (std::size_t rowi = 0; rowi < basis[0].size(); ++rowi)
          bmat[rowi][col] = basis[col][rowi];
      ZMatrix coords(s, std::vector<mpz_class>(multiples.size()));
      for (std::size_t mcol = 0; mcol < multiples.size(); ++mcol) {
        std::vector<mpz_class> x = solve_integer_in_basis(bmat, multiples[mcol]);
        for (std::size_t rowi = 0; rowi < s; ++rowi) coords[rowi][mcol] = x[rowi];
      }
      SmithDecomposition sd = smith_with_left_inverse(coords);
      std::vector<std::size_t> free_idx;
      for (std::size_t i = 0; i < s; ++i)
        if (i >= sd.diagonal.size() || sgn(sd.diagonal[i]) == 0) free_idx.push_back(i);
      if (free_idx.size() != r)
        throw InternalError("quotient lattice rank " + std::to_string(free_idx.size()) +
                            ", expected " + std::to_string(r));
      for (std::size_t i : free_idx) {
        std::vector<mpz_class> w(basis[0].size(), 0);
        for (std::size_t t = 0; t < s; ++t) {
          const mpz_class& z = sd.left_inverse[t][i];
          if (sgn(z) == 0) continue;
          for (std::size_t rowi = 0; rowi < w.size(); ++rowi) w[rowi] += z * basis[t][rowi];
        }
        picks.push_back(std::move(w));
      }
    }

    for (auto& v : picks) {
      mpz_class content = 0;
      for (const auto& c : v) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
      if (content != 1) throw InternalError("lattice basis vector is not primitive");
      chosen.emplace_back(lattice_vector_to_polys(v, l, bd), d);
      if (chosen.size() > l) throw InternalError("chose more basis rows than the rank");
    }
  }
  if (chosen.size() != l) throw InternalError("integer basis is incomplete");

  std::vector<std::vector<PolyZ>> matrix;
  for (auto& [row, deg] : chosen) matrix.push_back(row);
  PolyZ det = determinant(matrix);
  PolyZ q = a.defining_polynomial(kZZ);
  auto quot = poly_divides_exact(q, det);
  if (!quot || quot->is_zero() || !quot->is_constant())
    throw InternalError("integer basis determinant is not a constant multiple of Q");
  out.basis = std::move(matrix);
  out.det_constant = quot->constant_coefficient();
  if (abs(out.det_constant) != 1) out.prime_support = prime_factors_u64(out.det_constant);
  return out;
}

}  // namespace

IntegerBasis integer_basis_and_constant(const Multiarrangement& a) {
  FreenessReport r = decide_freeness(a, FieldSpec{0}, false);
  if (!r.free) throw InputError("integer_basis_and_constant: arrangement is not free over QQ");
  return integer_basis_for_exponents(a, r.generator_degrees);
}

SaitoVerifyResult saito_verify(const Multiarrangement& a,
                               const std::vector<std::vector<PolyQ>>& basis, FieldSpec field) {
  const Multiarrangement arr = arrangement_for_field(a, field);
  const std::size_t l = arr.dim();
  SaitoVerifyResult out;
  if (basis.size() != l) {
    out.reason = "expected " + std::to_string(l) + " derivations, got " +
                 std::to_string(basis.size());
    return out;
  }
  for (const auto& row : basis) {
    if (row.size() != l) {
      out.reason = "every derivation needs " + std::to_string(l) + " coefficients";
      return out;
    }
  }
  for (std::size_t i = 0; i < l; ++i) {
    std::optional<std::uint32_t> deg;
    for (const auto& f : basis[i]) {
      if (f.is_zero()) continue;
      if (!f.is_homogeneous()) {
        out.reason = "derivation " + std::to_string(i + 1) + " has a non-homogeneous coefficient";
        return out;
      }
      if (deg && *deg != f.degree()) {
        out.reason = "derivation " + std::to_string(i + 1) + " mixes coefficient degrees";
        return out;
      }
      deg = f.degree();
    }
  }

  auto run = [&arr, &out, l](auto ring, auto&& convert) -> void {
    using R = decltype(ring);
    std::vector<std::vector<Polynomial<R>>> b;
    std::vector<Polynomial<R>> alpha_powers;
    for (std::size_t i = 0; i < arr.size(); ++i)
      alpha_powers.push_back(arr.forms()[i].to_polynomial(ring).pow(arr.mults()[i]));
    for (std::size_t i = 0; i < l; ++i) {
      std::vector<Polynomial<R>> row;
      for (std::size_t j = 0; j < l; ++j) row.push_back(convert(ring, j, i));
      b.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < l; ++i) {
      for (std::size_t h = 0; h < arr.size(); ++h) {
        Polynomial<R> value(ring, l);
        for (std::size_t j = 0; j < l; ++j)
          value = value + b[i][j].scale(ring.from_mpz(arr.forms()[h].coeffs()[j]));
        if (value.is_zero()) continue;
        if (!poly_divides_exact(alpha_powers[h], value)) {
          out.reason = "derivation " + std::to_string(i + 1) +
                       " is not logarithmic at hyperplane " + std::to_string(h + 1);
          return;
        }
      }
    }
    Polynomial<R> det = determinant(b);
    if (det.is_zero()) {
      out.reason = "determinant of the coefficient matrix is zero";
      return;
    }
    Polynomial<R> q = arr.defining_polynomial(ring);
    auto quot = poly_divides_exact(q, det);
    if (!quot)
      throw InternalError("logarithmic derivations whose determinant Q does not divide");
    if (!quot->is_constant()) {
      out.reason = "determinant is a nonconstant multiple of the defining polynomial "
                   "(degrees do not sum to |m|)";
      return;
    }
    out.accepted = true;
    out.det_constant = ring.to_string(quot->constant_coefficient());
  };

  if (field.is_rational()) {
    run(kQQ, [&basis](const RationalField&, std::size_t j, std::size_t i) {
      return basis[i][j];
    });
  } else {
    PrimeField fp(field.characteristic);
    const mpz_class p(static_cast<unsigned long>(field.characteristic));
    for (const auto& row : basis)
      for (const auto& f : row)
        for (const auto& t : f.terms())
          if (mpz_divisible_p(t.coeff.get_den().get_mpz_t(), p.get_mpz_t()))
            throw BadPrimeError("basis coefficient denominator divisible by " + p.get_str());
    run(fp, [&basis, &fp](const PrimeField&, std::size_t j, std::size_t i) {
      std::vector<PolyFp::Term> terms;
      for (const auto& t : basis[i][j].terms()) {
        std::uint64_t num = fp.from_mpz(t.coeff.get_num());
        std::uint64_t den = fp.from_mpz(t.coeff.get_den());
        std::uint64_t c = fp.div(num, den);
        if (c != 0) terms.push_back({t.mono, c});
      }
      return PolyFp::from_terms(fp, basis[i][j].nvars(), std::move(terms));
    });
  }
  return out;
}

namespace {

template <class R>
std::vector<std::size_t> oracle_impl(const Multiarrangement& a, R ring, std::uint32_t d_max) {
  const std::size_t l = a.dim();
  const std::size_t n = a.size();
  std::vector<ZMatrix> subs;
  for (std::size_t i = 0; i < n; ++i) subs.push_back(unimodular_completion(a.forms()[i].coeffs()));

  std::vector<std::size_t> dims(d_max + 1, 0);
  for (std::uint32_t d = 0; d <= d_max; ++d) {
    const std::vector<Monomial> bd = enumerate_monomials(l, d);
    const std::size_t unknowns = l * bd.size();

    std::vector<std::vector<typename R::Elem>> rows;
    for (std::size_t i = 0; i < n; ++i) {
      // substituted basis monomials under x -> W_i y
      std::vector<Polynomial<R>> imgs;
      for (const Monomial& mu : bd)
        imgs.push_back(poly_substitute_linear(
            Polynomial<R>::from_term(ring, mu, ring.one()), subs[i]));
      std::vector<typename R::Elem> a_coeff;
      for (std::size_t j = 0; j < l; ++j) a_coeff.push_back(ring.from_mpz(a.forms()[i].coeffs()[j]));
      for (const Monomial& nu : bd) {
        if (nu[0] >= a.mults()[i]) continue;  // only low y_1-order coefficients must vanish
        std::vector<typename R::Elem> row(unknowns, ring.zero());
        for (std::size_t j = 0; j < l; ++j) {
          if (ring.is_zero(a_coeff[j])) continue;
          for (std::size_t k = 0; k < bd.size(); ++k) {
            typename R::Elem c = imgs[k].coefficient(nu);
            if (!ring.is_zero(c)) row[j * bd.size() + k] = ring.mul(a_coeff[j], c);
          }
        }
        rows.push_back(std::move(row));
      }
    }
    const std::size_t rank = rows.empty() ? 0 : matrix_rank(ring, std::move(rows));
    dims[d] = unknowns - rank;
  }
  return dims;
}

}  // namespace

std::vector<std::size_t> hilbert_oracle(const Multiarrangement& a, FieldSpec field,
                                        std::uint32_t d_max) {
  const Multiarrangement arr = arrangement_for_field(a, field);
  if (field.is_rational()) return oracle_impl(arr, kQQ, d_max);
  return oracle_impl(arr, PrimeField(field.characteristic), d_max);
}

std::vector<std::size_t> hilbert_by_groebner(const Multiarrangement& a, FieldSpec field,
                                             std::uint32_t d_max) {
  const Multiarrangement arr = arrangement_for_field(a, field);
  std::vector<std::size_t> dims(d_max + 1, 0);
  if (field.is_rational()) {
    auto kd = arrangement_kernel(arr, kQQ);
    for (std::uint32_t d = 0; d <= d_max; ++d) dims[d] = hilbert_dimension(kd.kernel, {}, d);
  } else {
    auto kd = arrangement_kernel(arr, PrimeField(field.characteristic));
    for (std::uint32_t d = 0; d <= d_max; ++d) dims[d] = hilbert_dimension(kd.kernel, {}, d);
  }
  return dims;
}

TransferVerdict transfer_check(const Multiarrangement& a, std::uint64_t p) {
  if (a.characteristic() != 0)
    throw DomainError("transfer_check: arrangement must be in characteristic 0");
  if (!is_prime_u64(p)) throw InputError("transfer_check: " + std::to_string(p) + " is not prime");
  TransferVerdict out;
  if (!is_good_prime(a, p)) {
    out.kind = TransferKind::hypothesis_fails;
    out.detail = "p = " + std::to_string(p) + " is not good (hyperplanes collide)";
    return out;
  }
  FreenessReport fp = decide_freeness(a, FieldSpec{p}, false);
  if (!fp.free) {
    out.kind = TransferKind::vacuous;
    out.detail = "the reduction mod " + std::to_string(p) + " is not free";
    return out;
  }
  out.exponents = fp.generator_degrees;
  ZeroDivisorReport zd = zero_divisor_primes(cokernel_presentation(a));
  if (std::find(zd.primes.begin(), zd.primes.end(), p) != zd.primes.end()) {
    out.kind = TransferKind::hypothesis_fails;
    out.detail = "p = " + std::to_string(p) + " is a zero divisor on coker(phi_ZZ)";
    return out;
  }
  out.kind = TransferKind::applies;
  out.detail = "good prime, not a zero divisor, reduction free: freeness lifts";
  FreenessReport q = decide_freeness(a, FieldSpec{0}, false);
  if (!q.free || q.generator_degrees != fp.generator_degrees)
    throw InternalError("transfer hypotheses hold but the QQ decision disagrees");
  out.char0_confirmed = true;
  return out;
}

ScanReport scan_primes(const Multiarrangement& a, std::uint64_t p_max, unsigned jobs) {
  if (a.characteristic() != 0)
    throw DomainError("scan_primes: arrangement must be in characteristic 0");
  if (p_max < 2) throw InputError("scan_primes: p_max must be at least 2");
  ScanReport out;
  out.char0 = decide_freeness(a, FieldSpec{0}, true);
  ZeroDivisorReport zd = zero_divisor_primes(cokernel_presentation(a));
  out.coker_zero_divisor_primes = zd.primes;

  const std::vector<std::uint64_t> primes = primes_in_range(2, p_max);
  out.rows.resize(primes.size());

  const mpz_class c = out.char0.free && out.char0.certificate
                          ? out.char0.certificate->det_constant
                          : mpz_class(0);

  auto analyze = [&](std::size_t k) {
    PrimeRow row;
    row.p = primes[k];
    row.good = is_good_prime(a, row.p);
    row.coker_zero_divisor =
        std::find(zd.primes.begin(), zd.primes.end(), row.p) != zd.primes.end();
    if (out.char0.free)
      row.divides_det_constant = mpz_divisible_ui_p(c.get_mpz_t(), row.p) != 0;
    if (!row.good) {
      row.comparison = "not-applicable";
      row.transfer = "hypothesis-fails: not a good prime";
      out.rows[k] = std::move(row);
      return;
    }
    FreenessReport fp = decide_freeness(a, FieldSpec{row.p}, false);
    row.fp_free = fp.free;
    if (fp.free) row.fp_exponents = fp.generator_degrees;
    if (fp.free != out.char0.free) {
      row.comparison = "differs";
    } else if (fp.free && fp.generator_degrees != out.char0.generator_degrees) {
      row.comparison = "differs";
    } else {
      row.comparison = "matches";
    }
    if (!fp.free) {
      row.transfer = "vacuous: reduction not free";
    } else if (row.coker_zero_divisor) {
      row.transfer = "hypothesis-fails: zero divisor on coker(phi_ZZ)";
    } else {
      row.transfer = "applies";
      if (!out.char0.free || out.char0.generator_degrees != fp.generator_degrees)
        throw InternalError("transfer hypotheses hold but the QQ decision disagrees (p = " +
                            std::to_string(row.p) + ")");
    }
    out.rows[k] = std::move(row);
  };

  const unsigned n_threads =
      std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(primes.size())));
  if (n_threads <= 1) {
    for (std::size_t k = 0; k < primes.size(); ++k) analyze(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
      while (true) {
        std::size_t k = next.fetch_add(1);
        if (k >= primes.size()) break;
        try {
          analyze(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    };
    std::vector<std::thread> threads;
    for (unsigned t = 1; t < n_threads; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
  }

  for (const auto& row : out.rows) {
    if (!row.good || row.comparison == "differs") out.exceptional.push_back(row.p);
  }
  return out;
}

}  // namespace multiarr
