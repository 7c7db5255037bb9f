#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multiarr/arrangement.hpp"
#include "multiarr/groebner_integer.hpp"
#include "multiarr/polynomial.hpp"

namespace multiarr {

/// Working coefficient field: QQ (characteristic 0) or GF(p).
struct FieldSpec {
  std::uint64_t characteristic = 0;
  bool is_rational() const { return characteristic == 0; }
  std::string name() const {
    return is_rational() ? "QQ" : "GF(" + std::to_string(characteristic) + ")";
  }
};

/// Certificate in the sense of Saito's criterion: l homogeneous logarithmic
/// derivations whose coefficient matrix has determinant c * Q(A,m), c a
/// nonzero constant. Basis entries are kept as integer polynomials; over
/// GF(p) they are the canonical representatives in [0, p).
struct SaitoCertificate {
  std::vector<std::vector<PolyZ>> basis;  // row i = derivation i, column j = coeff of d/dx_j
  std::vector<std::uint32_t> exponents;   // ascending, sums to |m|
  mpz_class det_constant;                 // char 0: exact integer c; char p: representative of c
};

struct FreenessReport {
  FieldSpec field;
  bool free = false;
  std::size_t generator_count = 0;
  std::vector<std::uint32_t> generator_degrees;  // minimal generator degrees, ascending
  std::optional<SaitoCertificate> certificate;   // present iff free and certificates requested
  std::vector<std::uint64_t> det_constant_prime_support;  // char 0, free only
};

/// Decide freeness of D(A,m) over the requested field. The decision is by
/// minimal generator count of Ker(phi) (equal to l iff free); when free the
/// Saito determinant identity is verified exactly as a cross-check.
/// For GF(p) the arrangement may be given in characteristic 0 (p must then be
/// good) or already reduced.
FreenessReport decide_freeness(const Multiarrangement& a, FieldSpec field,
                               bool with_certificate = true);

struct SaitoVerifyResult {
  bool accepted = false;
  std::string reason;          // empty when accepted
  std::string det_constant;    // c as a string in the working field, when accepted
};

/// Check a user-supplied candidate basis: l homogeneous derivations, each
/// logarithmic, with det = c * Q for a nonzero constant c.
SaitoVerifyResult saito_verify(const Multiarrangement& a,
                               const std::vector<std::vector<PolyQ>>& basis, FieldSpec field);

struct IntegerBasis {
  std::vector<std::vector<PolyZ>> basis;  // rows sorted by ascending degree
  std::vector<std::uint32_t> exponents;
  mpz_class det_constant;
  std::vector<std::uint64_t> prime_support;
};

/// Integer basis of D(A,m) for a QQ-free arrangement, chosen degreewise as a
/// lattice basis of the saturated integer kernel (so the determinant constant
/// is as small as this construction allows), together with c = det / Q and its
/// prime support.
IntegerBasis integer_basis_and_constant(const Multiarrangement& a);

/// Degreewise dimension of D(A,m) by dense exact linear algebra: for each
/// hyperplane a unimodular change of coordinates turns the divisibility
/// condition into vanishing of low-order coefficients. Independent of the
/// Groebner path.
std::vector<std::size_t> hilbert_oracle(const Multiarrangement& a, FieldSpec field,
                                        std::uint32_t d_max);

/// Degreewise dimension read off the kernel Groebner basis staircase.
std::vector<std::size_t> hilbert_by_groebner(const Multiarrangement& a, FieldSpec field,
                                             std::uint32_t d_max);

enum class TransferKind { applies, vacuous, hypothesis_fails };

struct TransferVerdict {
  TransferKind kind = TransferKind::vacuous;
  std::string detail;
  std::vector<std::uint32_t> exponents;  // GF(p) exponents when it is free
  bool char0_confirmed = false;          // set when kind == applies
};

/// Executable form of the lifting theorem: p good and not a zero divisor on
/// coker(phi_ZZ) and (A_p, m) free imply (A, m) free over QQ with the same
/// exponents. When the hypotheses hold the QQ decision is run and compared;
/// a mismatch is an InternalError.
TransferVerdict transfer_check(const Multiarrangement& a, std::uint64_t p);

struct PrimeRow {
  std::uint64_t p = 0;
  bool good = false;
  std::optional<bool> fp_free;            // empty when not good
  std::vector<std::uint32_t> fp_exponents;
  std::string comparison;                 // matches | differs | not-applicable
  std::optional<bool> divides_det_constant;
  bool coker_zero_divisor = false;
  std::string transfer;
};

struct ScanReport {
  FreenessReport char0;
  std::vector<std::uint64_t> coker_zero_divisor_primes;
  std::vector<PrimeRow> rows;
  std::vector<std::uint64_t> exceptional;  // non-good primes and good primes disagreeing with QQ
};

/// Per-prime freeness comparison for all primes p <= p_max. `jobs` bounds the
/// number of primes analyzed concurrently; the report order is deterministic.
ScanReport scan_primes(const Multiarrangement& a, std::uint64_t p_max, unsigned jobs = 1);

}  // namespace multiarr
