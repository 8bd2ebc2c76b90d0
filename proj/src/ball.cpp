#include "cmbound/ball.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <complex>

#include "cmbound/error.hpp"

namespace cmbound {

Complex round_dyadic(const Complex& z, long bits)
{
    return {cmbound::round_dyadic(z.re, bits), cmbound::round_dyadic(z.im, bits)};
}

long approx_log2(const Rational& x)
{
    if (x == 0)
        return LONG_MIN / 4;
    return static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
}

namespace {

long abs_bits(const Rational& rad)
{
    long b = 64;
    if (rad != 0)
        b = std::max(64L, 16 - approx_log2(rad));
    return std::min(b, 1L << 16);
}

}  // namespace

bool Ball::contains(const Complex& z) const
{
    return (z - mid).norm2() <= rad * rad;
}

bool Ball::overlaps(const Ball& other) const
{
    Rational r = rad + other.rad;
    return (mid - other.mid).norm2() <= r * r;
}

bool Ball::inside(const Ball& outer) const
{
    if (outer.rad < rad)
        return false;
    Rational slack = outer.rad - rad;
    return (mid - outer.mid).norm2() <= slack * slack;
}

int Ball::re_sign() const
{
    if (mid.re - rad > 0)
        return 1;
    if (mid.re + rad < 0)
        return -1;
    return 0;
}

int Ball::im_sign() const
{
    if (mid.im - rad > 0)
        return 1;
    if (mid.im + rad < 0)
        return -1;
    return 0;
}

Rational Ball::abs_upper() const
{
    return sqrt_upper(mid.norm2(), abs_bits(rad)) + rad;
}

Rational Ball::abs_lower() const
{
    Rational v = sqrt_lower(mid.norm2(), abs_bits(rad)) - rad;
    return v > 0 ? v : Rational(0);
}

Ball add(const Ball& a, const Ball& b)
{
    return Ball{a.mid + b.mid, a.rad + b.rad};
}

Ball sub(const Ball& a, const Ball& b)
{
    return Ball{a.mid - b.mid, a.rad + b.rad};
}

namespace {

Ball rounded(Complex exact_mid, Rational rad, long prec)
{
    Complex m = round_dyadic(exact_mid, prec);
    if (!(m == exact_mid))
        rad += power_of_two(-prec);
    if (rad != 0)
        rad = ceil_dyadic(rad, prec + 4);
    return Ball{std::move(m), std::move(rad)};
}

}  // namespace

Ball mul(const Ball& a, const Ball& b, long prec)
{
    Complex m = a.mid * b.mid;
    Rational rad(0);
    if (a.rad != 0 || b.rad != 0) {
        Ball am{a.mid, Rational(0)}, bm{b.mid, Rational(0)};
        rad = am.abs_upper() * b.rad + bm.abs_upper() * a.rad + a.rad * b.rad;
    }
    return rounded(std::move(m), std::move(rad), prec);
}

Ball scale(const Ball& a, const Rational& s, long prec)
{
    return rounded(Complex(a.mid.re * s, a.mid.im * s), a.rad * abs(s), prec);
}

Ball horner(const std::vector<Rational>& coeffs, const Ball& x, long prec)
{
    if (coeffs.empty())
        return Ball::exact(Rational(0));
    Ball acc = rounded(Complex(coeffs.back()), Rational(0), prec);
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
        acc = mul(acc, x, prec);
        acc = add(acc, rounded(Complex(coeffs[i]), Rational(0), prec));
    }
    return acc;
}

namespace {

Complex eval_exact(const Poly& f, const Complex& z)
{
    Complex acc;
    for (int i = f.degree(); i >= 0; --i)
        acc = acc * z + Complex(f.coeff(i));
    return acc;
}

std::vector<Complex> seed_roots(const Poly& f)
{
    using C = std::complex<long double>;
    int d = f.degree();
    std::vector<long double> c(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i)
        c[static_cast<std::size_t>(i)] = static_cast<long double>(Rational(f.coeff(i) / f.lc()).get_d());
    long double bound = 0;
    for (int i = 0; i < d; ++i)
        bound = std::max(bound, std::abs(c[static_cast<std::size_t>(i)]));
    bound = 1 + bound;
    auto eval = [&](C z, C& dz) {
        C v = 1, dv = 0;
        for (int i = d - 1; i >= 0; --i) {
            dv = dv * z + v;
            v = v * z + c[static_cast<std::size_t>(i)];
        }
        dz = dv;
        return v;
    };
    std::vector<C> z(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        long double ang = 2.0L * 3.14159265358979323846L * k / d + 0.4L;
        z[static_cast<std::size_t>(k)] = std::polar(bound * 0.7L, ang);
    }
    for (int it = 0; it < 800; ++it) {
        long double maxc = 0;
        for (int k = 0; k < d; ++k) {
            C dz;
            C v = eval(z[static_cast<std::size_t>(k)], dz);
            if (dz == C(0))
                dz = C(1e-12L);
            C n = v / dz;
            C s = 0;
            for (int j = 0; j < d; ++j)
                if (j != k) {
                    C diff = z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)];
                    if (diff == C(0))
                        diff = C(1e-15L);
                    s += C(1) / diff;
                }
            C den = C(1) - n * s;
            C w = (den == C(0)) ? n : n / den;
            z[static_cast<std::size_t>(k)] -= w;
            maxc = std::max(maxc, std::abs(w));
        }
        if (maxc < 1e-17L * bound)
            break;
    }
    std::vector<Complex> out;
    for (auto& v : z) {
        double re = static_cast<double>(v.real()), im = static_cast<double>(v.imag());
        if (!std::isfinite(re) || !std::isfinite(im))
            re = 0.5, im = 0.5;
        out.emplace_back(Rational(re), Rational(im));
    }
    return out;
}

/* One sweep of Aberth corrections at working precision w; returns max log2 of the corrections. */
long aberth_sweep(const Poly& f, const Poly& df, std::vector<Complex>& z, long w)
{
    long maxlog = LONG_MIN / 4;
    std::size_t d = z.size();
    for (std::size_t k = 0; k < d; ++k) {
        Complex fz = eval_exact(f, z[k]);
        if (fz.re == 0 && fz.im == 0)
            continue;
        Complex dfz = eval_exact(df, z[k]);
        if (dfz.norm2() == 0)
            dfz = Complex(power_of_two(-w));
        Complex n = round_dyadic(fz / dfz, w + 16);
        Complex s;
        for (std::size_t j = 0; j < d; ++j) {
            if (j == k)
                continue;
            Complex diff = z[k] - z[j];
            if (diff.norm2() == 0)
                diff = Complex(power_of_two(-w));
            s = s + round_dyadic(Complex(Rational(1)) / diff, w + 16);
        }
        Complex den = Complex(Rational(1)) - n * s;
        Complex corr = (den.norm2() == 0) ? n : round_dyadic(n / den, w + 16);
        z[k] = round_dyadic(z[k] - corr, w);
        long l = std::max(approx_log2(abs(corr.re)), approx_log2(abs(corr.im)));
        maxlog = std::max(maxlog, l);
    }
    return maxlog;
}

/* Smith's theorem: disks of radius d |f(z_k)| / (|lc| prod_{j!=k} |z_k - z_j|) contain all
 * roots, and a connected component made of m disks contains exactly m roots. */
bool certify(const Poly& f, const std::vector<Complex>& z, long precision_bits, long w,
             std::vector<Ball>& out)
{
    std::size_t d = z.size();
    Rational lc2 = f.lc() * f.lc();
    std::vector<Rational> rad(d);
    for (std::size_t k = 0; k < d; ++k) {
        Complex fz = eval_exact(f, z[k]);
        Rational num = fz.norm2();
        if (num == 0) {
            rad[k] = 0;
            continue;
        }
        Rational den(1);
        for (std::size_t j = 0; j < d; ++j)
            if (j != k)
                den *= (z[k] - z[j]).norm2();
        if (den == 0)
            return false;
        Rational r2 = Rational(static_cast<long>(d * d)) * num / (lc2 * den);
        rad[k] = sqrt_upper(r2, w + 8);
        if (rad[k] > power_of_two(-precision_bits))
            return false;
    }
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t j = k + 1; j < d; ++j) {
            Rational s = rad[k] + rad[j];
            if ((z[k] - z[j]).norm2() <= s * s)
                return false;
        }
    out.clear();
    for (std::size_t k = 0; k < d; ++k)
        out.push_back(Ball{z[k], rad[k]});
    return true;
}

std::vector<Ball> run_isolation(const Poly& f, std::vector<Complex> z, long precision_bits)
{
    if (f.degree() < 1)
        return {};
    if (!is_squarefree(f))
        fail(ErrorKind::DegenerateInput, "root isolation needs a squarefree polynomial");
    Poly df = f.derivative();
    long w = precision_bits + 32;
    long wmax = 8 * precision_bits + 2048;
    std::vector<Ball> out;
    while (w <= wmax) {
        for (auto& v : z)
            v = round_dyadic(v, w);
        for (int it = 0; it < 200; ++it) {
            long l = aberth_sweep(f, df, z, w);
            if (l < -(w - 6))
                break;
        }
        if (certify(f, z, precision_bits, w, out))
            return out;
        w *= 2;
    }
    fail(ErrorKind::PrecisionExhausted,
         "could not separate the roots at " + std::to_string(precision_bits) +
             " bits; retry with a higher precision");
}

}  // namespace

std::vector<Ball> isolate_roots(const Poly& f, long precision_bits)
{
    if (f.degree() < 1)
        return {};
    return run_isolation(f, seed_roots(f), precision_bits);
}

std::vector<Ball> refine_roots(const Poly& f, const std::vector<Ball>& approx, long precision_bits)
{
    std::vector<Complex> z;
    for (const auto& b : approx)
        z.push_back(b.mid);
    auto out = run_isolation(f, std::move(z), precision_bits);
    for (std::size_t k = 0; k < out.size(); ++k)
        for (std::size_t j = 0; j < approx.size(); ++j)
            if (out[k].overlaps(approx[j]) != (j == k))
                fail(ErrorKind::Internal, "root refinement changed the root order");
    return out;
}

}  // namespace cmbound
