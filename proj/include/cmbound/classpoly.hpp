#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cmbound/poly.hpp"
#include "cmbound/rational.hpp"

namespace cmbound {

/* An entry value: exact ("p/q", "n") or a decimal approximation ("0.1428", "-3.5e-2"). */
struct ClassValue {
    std::string text;

    bool is_exact() const;
    Rational exact() const;
};

struct ClassInput {
    std::vector<std::pair<ClassValue, ClassValue>> entries;  // (j, j')
};

/* H = prod (X - j_C), H_hat = sum j'_C prod_{D != C} (X - j_D). */
std::pair<Poly, Poly> assemble(const std::vector<std::pair<Rational, Rational>>& entries);
/* All entries must be exact. */
std::pair<Poly, Poly> assemble(const ClassInput& input);

/* Approximate real entries: expand H, H_hat in interval arithmetic and reconstruct
 * each coefficient with denominator at most denominator_bound. */
std::pair<Poly, Poly> assemble_approximate(const ClassInput& input, const Integer& denominator_bound);

/* Exact value of a decimal string together with its half-ulp error radius. */
std::pair<Rational, Rational> parse_decimal(const std::string& text);

/* The unique p/q with q <= bound within half an ulp of x. */
Rational rational_reconstruct(const std::string& x, const Integer& denominator_bound);
/* The unique p/q with q <= bound in [lo, hi]. */
Rational reconstruct_in_interval(const Rational& lo, const Rational& hi, const Integer& denominator_bound);
/* Fraction of least denominator in [lo, hi]. */
Rational simplest_in_interval(const Rational& lo, const Rational& hi);

struct ClasspolyReport {
    Poly H, H_hat;
    Integer denominator = 1;  // lcm of all coefficient denominators
    std::map<Integer, unsigned> denominator_primes;
    std::map<Integer, std::string> verdicts;  // "within_bound" / "violation"
    Integer cofactor = 1;                      // unfactored part of the denominator
    std::string cofactor_verdict;              // empty when fully factored
    std::vector<Integer> probable_primes;
    Rational threshold;  // B^10 / 8

    bool has_violation() const;
};

ClasspolyReport certify_denominators(const Poly& H, const Poly& H_hat, const Integer& B,
                                     unsigned long effort = 2000000);

}  // namespace cmbound
