#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace multiarr {

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// Primes p with lo <= p <= hi, ascending.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

/// Distinct prime factors of |n|, ascending. n must be nonzero.
/// Trial division first, Pollard-Brent rho for what survives.
std::vector<mpz_class> prime_factors(const mpz_class& n);

/// Distinct word-sized prime factors of |n|, ascending; throws if a factor
/// exceeds 64 bits (does not happen for the desk-scale inputs we produce).
std::vector<std::uint64_t> prime_factors_u64(const mpz_class& n);

}  // namespace multiarr
