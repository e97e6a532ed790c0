#pragma once

#include <cstddef>
#include <map>

#include "hvalab/rational.hpp"

namespace hvalab {

/// The i-th prime, 0-based: 2, 3, 5, 7, ...
unsigned long nth_prime(std::size_t i);

/// Prime factorization of |n| (n != 0) by trial division.
std::map<unsigned long, long> factorize(const BigInt& n);

/// Signed exponents of a positive rational: numerator primes positive,
/// denominator primes negative. Throws DomainError if q <= 0.
std::map<unsigned long, long> prime_exponents(const Rational& q);

}  // namespace hvalab
