#pragma once

#include <optional>
#include <string>

#include "cmbound/mu_search.hpp"

namespace cmbound {

struct Interval {
    Rational lo, hi;
};

struct BoundReport {
    Integer B;
    Rational threshold;  // B^10 / 8
    Interval delta_threshold;  // contains B^7.5 / 4
    std::optional<Integer> largest_possible_bad_prime;
    std::optional<Integer> intrinsic;  // B bound from the order alone
    std::string intrinsic_case;        // "case1" / "case2"
};

BoundReport bound_from_B(const Integer& B);
/* p >= B^10/8 */
bool certified_good(const Integer& p, const Integer& B);
/* Interval of width < 2^-32 around B^7.5 / 4. */
Interval delta_bound(const Integer& B);

/* floor((6/pi)^(2/3) |disc|^(1/3)) */
Integer case1_bound(const Integer& disc);
/* floor(|d1| (1 + 2 sqrt|dplus|)) */
Integer case2_bound(const Integer& d1, const Integer& dplus);

BoundReport intrinsic_bound(const OrderBasis& o, const CMStructure& cm);

struct DiscCheck {
    Integer resultant_value;        // |disc(f_mu)|
    Integer product_formula_value;  // 2^6 e3 disc(h)^2
    Rational rhs;                   // 2^18 3^-15 B^15
    bool agree = false;
    bool holds = false;
};

DiscCheck disc_inequality_check(const MuCertificate& c, const OrderBasis& o);

}  // namespace cmbound
