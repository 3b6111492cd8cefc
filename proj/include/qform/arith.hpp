#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qform {

using Integer = mpz_class;
using Rational = mpq_class;
using Factorization = std::vector<std::pair<Integer, int>>;

// p-adic valuation; n must be nonzero.
int valuation(const Integer& n, const Integer& p);
int valuation(const Rational& x, const Integer& p);
int valuation(std::int64_t n, std::int64_t p);

bool is_prime(const Integer& n);
bool is_prime(std::int64_t n);

// Sieve of primes <= limit. Results for the largest limit seen are kept, so
// repeated calls are cheap.
const std::vector<std::int64_t>& primes_up_to(std::int64_t limit);

// Prime factorization of |n| (n != 0), primes ascending.
Factorization factor(const Integer& n);
std::vector<Integer> prime_divisors(const Integer& n);
std::vector<Integer> divisors(const Integer& n);

int legendre(const Integer& a, const Integer& p);
int kronecker(const Integer& a, const Integer& n);

int mobius(const Integer& n);
bool is_squarefree(const Integer& n);
Integer sigma(const Integer& n);
Integer radical(const Integer& n);
int big_omega(std::uint64_t n, const std::vector<std::uint32_t>& spf);
// Smallest-prime-factor table up to limit (inclusive).
std::vector<std::uint32_t> smallest_prime_factors(std::uint64_t limit);

Integer ipow(const Integer& base, unsigned long e);
Rational rpow(const Rational& base, long e);
Integer mod(const Integer& a, const Integer& m);  // result in [0, m)
Integer inverse_mod(const Integer& a, const Integer& m);
Integer floor_of(const Rational& x);
Integer ceil_of(const Rational& x);
Integer round_of(const Rational& x);  // nearest, ties toward +infinity
long double to_ld(const Integer& x);
long double to_ld(const Rational& x);
// log of a positive integer; safe beyond double range.
long double log_of(const Integer& x);
std::string to_string(const Rational& x);
Rational parse_rational(const std::string& text);

}  // namespace qform
