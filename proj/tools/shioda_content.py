"""Contents of Shioda's J2..J10 as polynomials in the octic coefficients.

Prints the values hard-coded in shioda_content(). Takes about a minute.
"""
import functools
from math import comb, factorial

import sympy as sp

x, z = sp.symbols("x z")
a = sp.symbols("a0:9")


def partial(f, nx, nz):
    if nx:
        f = sp.diff(f, x, nx)
    if nz:
        f = sp.diff(f, z, nz)
    return f


def transvectant(f, g, k):
    m = sp.Poly(f, x, z).total_degree()
    n = sp.Poly(g, x, z).total_degree()
    s = sum((-1) ** i * comb(k, i) * partial(f, k - i, i) * partial(g, i, k - i) for i in range(k + 1))
    return sp.expand(s * sp.Rational(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n)))


def main():
    f = sum(a[i] * x**i * z ** (8 - i) for i in range(9))
    g = transvectant(f, f, 4)
    k = transvectant(f, f, 6)
    h = transvectant(k, k, 2)
    m = transvectant(f, k, 4)
    n = transvectant(f, h, 4)
    p = transvectant(g, k, 4)
    q = transvectant(g, h, 4)
    invariants = [
        transvectant(f, f, 8), transvectant(f, g, 8), transvectant(k, k, 4),
        transvectant(m, k, 4), transvectant(k, h, 4), transvectant(m, h, 4),
        transvectant(p, h, 4), transvectant(n, h, 4), transvectant(q, h, 4),
    ]
    for deg, inv in enumerate(invariants, start=2):
        coeffs = [sp.Rational(c) for c in sp.Poly(inv, *a).coeffs()]
        num = functools.reduce(sp.gcd, [c.p for c in coeffs])
        den = functools.reduce(sp.ilcm, [c.q for c in coeffs])
        print(f"J{deg}: {sp.Rational(num, den)}")


if __name__ == "__main__":
    main()
