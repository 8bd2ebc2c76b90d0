#pragma once

#include <map>
#include <vector>

#include "cmbound/rational.hpp"

namespace cmbound {

/* Deterministic below 2^64; above that a strong probable-prime test. */
bool is_prime(const Integer& n);
bool is_certified_prime(const Integer& n);  // is_prime and n < 2^64

struct Factorization {
    std::map<Integer, unsigned> primes;
    Integer cofactor = 1;       // unfactored composite part (1 when complete)
    std::vector<Integer> probable;  // prime factors >= 2^64 (probable primes)
    bool complete() const { return cofactor == 1; }
};

/* Trial division to 10^6, then Pollard-Brent within `effort` iterations per split. */
Factorization factor(Integer n, unsigned long effort = 2000000);

/* Sign-preserving squarefree part; fails if |n| cannot be fully factored. */
Integer squarefree_part(const Integer& n);

/* p-adic valuation; x != 0. */
long ord_p(const Rational& x, const Integer& p);

/* Hilbert symbol (a,b)_p for a prime p, or p = 0 for the infinite place. */
int hilbert_symbol(const Integer& a, const Integer& b, const Integer& p);

Integer prev_prime_below(const Integer& n);  // largest prime < n, or 0

}  // namespace cmbound
