#include "hvalab/primes.hpp"

#include <vector>

#include "hvalab/error.hpp"

namespace hvalab {

unsigned long nth_prime(std::size_t i) {
  static std::vector<unsigned long> cache{2};
  while (cache.size() <= i) {
    unsigned long candidate = cache.back() + 1;
    for (;; ++candidate) {
      bool is_prime = true;
      for (unsigned long p : cache) {
        if (p * p > candidate) break;
        if (candidate % p == 0) {
          is_prime = false;
          break;
        }
      }
      if (is_prime) break;
    }
    cache.push_back(candidate);
  }
  return cache[i];
}

std::map<unsigned long, long> factorize(const BigInt& n) {
  if (n == 0) throw DomainError("factorize(0)");
  BigInt rest = abs(n);
  std::map<unsigned long, long> out;
  for (unsigned long p = 2; rest > 1; p += (p == 2 ? 1 : 2)) {
    if (BigInt(p) * p > rest) {
      if (!rest.fits_ulong_p()) throw DomainError("prime factor too large for trial division");
      ++out[rest.get_ui()];
      break;
    }
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      rest /= p;
      ++out[p];
    }
  }
  return out;
}

std::map<unsigned long, long> prime_exponents(const Rational& q) {
  if (q.sign() <= 0) throw DomainError("prime exponents need a positive rational, got " + q.to_string());
  auto out = factorize(q.numerator());
  for (const auto& [p, e] : factorize(q.denominator())) out[p] -= e;
  return out;
}

}  // namespace hvalab
