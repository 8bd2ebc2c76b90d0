#pragma once

#include <functional>
#include <vector>

#include "cmbound/linalg.hpp"

namespace cmbound {

using LatticeVisitor = std::function<bool(const std::vector<Integer>& x, const Rational& q)>;

/* LLL reduction of a positive definite Gram matrix. Returns a unimodular U
 * whose rows express the reduced basis in the old one; U G U^T is reduced. */
ZMatrix lll_gram(const QMatrix& gram);

/* Fincke-Pohst: visits every nonzero x in Z^n with x^T G x <= bound, with
 * q = x^T G x computed exactly. Enumeration stops once visit returns false.
 * G must be positive definite. */
void enumerate_short(const QMatrix& gram, const Rational& bound, const LatticeVisitor& visit);

/* All nonzero vectors within the bound, in a deterministic order. */
std::vector<std::vector<Integer>> short_vectors(const QMatrix& gram, const Rational& bound);

Rational quad_form(const QMatrix& g, const std::vector<Integer>& x);

}  // namespace cmbound
