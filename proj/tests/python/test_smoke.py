import decimal
import json
import os
import subprocess
from fractions import Fraction

import pytest
import sympy as sp

import cmbound

PHI7 = [1, 1, 1, 1, 1, 1, 1]


def frac(s):
    return Fraction(s)


def test_zeta7_report():
    rep = cmbound.analyze_field(PHI7)
    assert rep["k1_discriminant"] == -7
    assert rep["cm_type_count"] == 8
    assert rep["primitive_cm_type_count"] == 6
    x = sp.symbols("x")
    kplus = sum(int(c) * x**i for i, c in enumerate(rep["kplus_poly"]))
    # minimal polynomial of 2 cos(2 pi / 7) up to translation
    assert sp.degree(kplus, x) == 3
    assert sp.discriminant(kplus, x) == 49


def test_find_mu_against_sympy():
    rep = cmbound.find_mu(PHI7, mode="exhaustive")
    cert = rep["certificate"]
    assert cert["B"] == 7
    assert cert["method"] == "exhaustive"
    zeta = sp.exp(2 * sp.pi * sp.I / 7)
    mu = sum(int(c) * zeta**i for i, c in enumerate(cert["mu"]))
    x = sp.symbols("x")
    mp = sp.minimal_polynomial(mu, x)
    coeffs = sp.Poly(mp, x).all_coeffs()[::-1]
    assert [int(c) for c in coeffs] == [int(c) for c in rep["mu_minpoly"]]
    # -1/2 Tr(mu^2) from the minimal polynomial: Tr(mu^2) = e1^2 - 2 e2
    e1 = -coeffs[5]
    e2 = coeffs[4]
    assert -(e1 * e1 - 2 * e2) / 2 == 7
    assert rep["bound"]["threshold"]["exact"] == str(Fraction(7**10, 8))


def test_minkowski_modes():
    rep = cmbound.find_mu(PHI7, mode="minkowski")
    cert = rep["certificate"]
    assert cert["method"] == "minkowski_case2"
    assert int(cert["bound_used"]) == 105
    assert 7 <= cert["B"] <= 105


def test_threshold_and_goodness():
    for B in range(2, 20):
        assert frac(cmbound.threshold(B)) == Fraction(B**10, 8)
    assert not cmbound.certified_good(127, 2)
    assert cmbound.certified_good(131, 2)


def test_reconstruction_matches_limit_denominator():
    import random

    rng = random.Random(3)
    for _ in range(200):
        q = rng.randint(1, 10**6)
        p = rng.randint(-3 * q, 3 * q)
        x = Fraction(p, q)
        # correctly rounded to 16 decimals
        with decimal.localcontext() as ctx:
            ctx.prec = 40
            text = str((decimal.Decimal(p) / decimal.Decimal(q)).quantize(decimal.Decimal("1e-16")))
        got = frac(cmbound.rational_reconstruct(text, 10**6))
        assert got == Fraction(text).limit_denominator(10**6)
        assert got == x
    with pytest.raises(cmbound.CmboundError):
        cmbound.rational_reconstruct("0.14", 1000)


def test_assemble():
    H, Hh = cmbound.assemble([(2, 5), (3, 7)])
    assert H == ["6", "-5", "1"]
    assert Hh == ["-29", "12"]


def test_picard_against_sympy():
    x = sp.symbols("x")
    inv = cmbound.picard_invariants(1, 0, 5)
    d = sp.discriminant(x**4 + x**2 + 5, x)
    assert d == 28880
    assert frac(inv["j1"]) == Fraction(1, 28880)
    assert frac(inv["j3"]) == Fraction(5, 28880)


def test_hyperelliptic_invariance():
    f = [3, -1, 0, 2, 5, 0, -4, 1, 2]
    j = cmbound.hyperelliptic_j(f)
    # f(x + 1) computed with sympy
    x = sp.symbols("x")
    g = sp.expand(sum(c * (x + 1) ** i for i, c in enumerate(f)))
    shifted = [int(g.coeff(x, i)) for i in range(9)]
    assert cmbound.hyperelliptic_j(shifted) == j
    with pytest.raises(cmbound.CmboundError, match="singular-curve"):
        cmbound.hyperelliptic_j([1, -2, 1, 0, 0, 0, 0, 0, 1 - 1])


def test_exit_codes_and_determinism(tmp_path):
    cli = os.environ.get("CMBOUND_CLI")
    if not cli:
        pytest.skip("CLI path not provided")
    field = tmp_path / "f.json"
    field.write_text(json.dumps({"poly": PHI7}))
    runs = [subprocess.run([cli, "find-mu", str(field), "--mode", "exhaustive"], capture_output=True) for _ in range(2)]
    assert runs[0].returncode == 0
    assert runs[0].stdout == runs[1].stdout
    assert json.loads(runs[0].stdout)["certificate"]["B"] == 7

    cp = tmp_path / "c.json"
    cp.write_text(json.dumps({"H": ["1/131", 1], "H_hat": [1]}))
    r = subprocess.run([cli, "certify-classpoly", str(cp), "--B", "2"], capture_output=True)
    assert r.returncode == 3
    report = json.loads(r.stdout)
    assert report["denominator_primes"] == [{"p": 131, "exponent": 1, "verdict": "violation"}]

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    r = subprocess.run([cli, "bound", str(bad)], capture_output=True)
    assert r.returncode == 1
    assert json.loads(r.stdout)["error"]["kind"] == "malformed-input"

    real = tmp_path / "real.json"
    real.write_text(json.dumps({"poly": [-2, 0, 0, 0, 0, 0, 1]}))
    r = subprocess.run([cli, "analyze-field", str(real)], capture_output=True)
    assert r.returncode == 2
    assert json.loads(r.stdout)["error"]["kind"] == "not-cm"

    out = tmp_path / "out.json"
    r = subprocess.run([cli, "bound", str(field), str(out)], capture_output=True)
    assert r.returncode == 0
    assert json.loads(out.read_text())["intrinsic"] == 105
