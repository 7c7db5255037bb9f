#include "multiarr/primes.hpp"

#include <algorithm>

#include "multiarr/errors.hpp"

namespace multiarr {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic for all n < 2^64.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 n = std::max<u64>(lo, 2); n <= hi; ++n) {
    if (is_prime_u64(n)) out.push_back(n);
    if (n == UINT64_MAX) break;
  }
  return out;
}

namespace {

mpz_class mpz_gcd_of(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// Pollard-Brent rho; n odd composite, no small factors.
mpz_class pollard_rho(const mpz_class& n) {
  if (n % 2 == 0) return 2;
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0xC0FFEEul);
  while (true) {
    mpz_class y = rng.get_z_range(n - 3) + 2;
    mpz_class c = rng.get_z_range(n - 2) + 1;
    mpz_class x = y, d = 1, q = 1, ys = y;
    unsigned long r = 1;
    const unsigned long m = 128;
    while (d == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned long k = 0;
      while (k < r && d == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        d = mpz_gcd_of(q, n);
        k += m;
      }
      r *= 2;
    }
    if (d == n) {
      d = 1;
      while (d == 1) {
        ys = (ys * ys + c) % n;
        d = mpz_gcd_of(abs(x - ys), n);
      }
    }
    if (d != n) return d;
  }
}

void factor_into(const mpz_class& n, std::vector<mpz_class>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40) != 0) {
    out.push_back(n);
    return;
  }
  mpz_class d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<mpz_class> prime_factors(const mpz_class& n) {
  if (n == 0) throw InputError("prime_factors: argument is zero");
  mpz_class m = abs(n);
  std::vector<mpz_class> out;
  for (u64 p = 2; p <= 100000 && mpz_class(p) * p <= m; p = (p == 2 ? 3 : p + 2)) {
    if (m % p == 0) {
      out.push_back(mpz_class((unsigned long)p));
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) factor_into(m, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<u64> prime_factors_u64(const mpz_class& n) {
  std::vector<u64> out;
  for (const mpz_class& f : prime_factors(n)) {
    if (!f.fits_ulong_p()) throw InternalError("prime factor exceeds machine word");
    out.push_back(f.get_ui());
  }
  return out;
}

}  // namespace multiarr
