#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "multiarr/errors.hpp"
#include "multiarr/primes.hpp"

namespace multiarr {

// Exact coefficient domains. A ring is a small value object passed around
// with every polynomial; arithmetic goes through it so that the prime-field
// modulus has a home. Elements never leave the canonical range: mpq_class
// stays normalized with positive denominator, prime-field values stay in
// [0, p).

class RationalField {
 public:
  using Elem = mpq_class;
  static constexpr bool is_field = true;

  std::uint64_t characteristic() const { return 0; }
  bool same(const RationalField&) const { return true; }
  std::string name() const { return "QQ"; }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long v) const { return Elem(v); }
  Elem from_mpz(const mpz_class& v) const { return Elem(v); }

  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (is_zero(a)) throw DomainError("division by zero in QQ");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  std::string to_string(const Elem& a) const { return a.get_str(); }
};

class PrimeField {
 public:
  using Elem = std::uint64_t;
  static constexpr bool is_field = true;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (!is_prime_u64(p)) throw InputError("characteristic " + std::to_string(p) + " is not prime");
  }

  std::uint64_t characteristic() const { return p_; }
  bool same(const PrimeField& o) const { return p_ == o.p_; }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p_; }
  Elem from_int(long v) const {
    long r = v % static_cast<long>(p_);
    if (r < 0) r += static_cast<long>(p_);
    return static_cast<Elem>(r);
  }
  Elem from_mpz(const mpz_class& v) const {
    mpz_class r = v % mpz_class(static_cast<unsigned long>(p_));
    if (r < 0) r += mpz_class(static_cast<unsigned long>(p_));
    return r.get_ui();
  }

  bool is_zero(const Elem& a) const { return a == 0; }
  bool is_one(const Elem& a) const { return a == 1 % p_; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;  // p < 2^63 keeps this from wrapping
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<unsigned __int128>(a) * b % p_);
  }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem inv(Elem a) const {
    if (a == 0) throw DomainError("division by zero in " + name());
    // extended Euclid on (a, p)
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(p_), newr = static_cast<std::int64_t>(a);
    while (newr != 0) {
      std::int64_t q = r / newr;
      std::int64_t tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return static_cast<Elem>(t);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  std::string to_string(const Elem& a) const { return std::to_string(a); }

 private:
  std::uint64_t p_;
};

class IntegerRing {
 public:
  using Elem = mpz_class;
  static constexpr bool is_field = false;

  std::uint64_t characteristic() const { return 0; }
  bool same(const IntegerRing&) const { return true; }
  std::string name() const { return "ZZ"; }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long v) const { return Elem(v); }
  Elem from_mpz(const mpz_class& v) const { return v; }

  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }

  bool is_unit(const Elem& a) const { return a == 1 || a == -1; }
  Elem gcd(const Elem& a, const Elem& b) const {
    Elem g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }
  /// g = gcd(a,b) >= 0 together with u,v such that u*a + v*b = g.
  Elem xgcd(const Elem& a, const Elem& b, Elem& u, Elem& v) const {
    Elem g;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }
  /// Canonical division a = q*b + r with 0 <= r < |b|.
  void divmod(const Elem& a, const Elem& b, Elem& q, Elem& r) const {
    if (is_zero(b)) throw DomainError("division by zero in ZZ");
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (sgn(b) < 0 && sgn(r) != 0) {
      // mpz_fdiv gives 0 <= r < b only for b > 0; flip for negative b
      r -= b;
      q += 1;
    }
  }
  bool divides(const Elem& d, const Elem& a) const {
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
  }
  Elem divexact(const Elem& a, const Elem& d) const {
    Elem q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return q;
  }

  std::string to_string(const Elem& a) const { return a.get_str(); }
};

}  // namespace multiarr
