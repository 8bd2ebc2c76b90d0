#include "doctest.h"

#include <random>

#include "cmbound/error.hpp"
#include "cmbound/quaternion.hpp"

using namespace cmbound;

namespace {

QuatElement random_element(const QuatAlgebra& alg, std::mt19937& rng, long span = 9)
{
    std::uniform_int_distribution<long> num(-span, span), den(1, 4);
    std::array<Rational, 4> c;
    for (auto& x : c) {
        x = Rational(num(rng)) / den(rng);
    }
    return QuatElement(alg, c);
}

/* Reduced norm form written out from the presentation. */
Rational norm_oracle(const QuatElement& x)
{
    const auto& c = x.coords();
    Rational a(x.algebra().a), b(x.algebra().b);
    return c[0] * c[0] - a * c[1] * c[1] - b * c[2] * c[2] + a * b * c[3] * c[3];
}

Rational bilinear_oracle(const QuatElement& x, const QuatElement& y)
{
    return norm_oracle(x + y) - norm_oracle(x) - norm_oracle(y);
}

}  // namespace

TEST_CASE("quaternion arithmetic")
{
    QuatAlgebra alg = QuatAlgebra::for_prime(11);
    CHECK(alg.a == -1);
    CHECK(alg.b == -11);
    auto one = QuatElement::basis(alg, 0), i = QuatElement::basis(alg, 1), j = QuatElement::basis(alg, 2),
         k = QuatElement::basis(alg, 3);
    CHECK(i * j == k);
    CHECK(j * i == -k);
    CHECK(i * i == QuatElement::scalar(alg, Rational(-1)));
    CHECK(k * k == QuatElement::scalar(alg, Rational(-11)));
    CHECK(i.norm() == 1);
    CHECK(i.trace() == 0);
    CHECK((one + i + j).norm() == 13);

    std::mt19937 rng(11);
    for (int t = 0; t < 300; ++t) {
        auto x = random_element(alg, rng), y = random_element(alg, rng);
        CHECK((x * y).norm() == x.norm() * y.norm());
        CHECK(x * x.conj() == QuatElement::scalar(alg, x.norm()));
        // x^2 - Tr(x) x + N(x) = 0
        CHECK(x * x - x.trace() * x + QuatElement::scalar(alg, x.norm()) == QuatElement::scalar(alg, Rational(0)));
        CHECK((x * y).conj() == y.conj() * x.conj());
        if (!x.is_zero())
            CHECK(x * x.inverse() == one);
    }

    QuatAlgebra other = QuatAlgebra::for_prime(23);
    CHECK_THROWS_AS(i * QuatElement::basis(other, 1), Error);
    CHECK_THROWS_AS(QuatAlgebra::for_prime(15), Error);
    CHECK_THROWS_AS(QuatAlgebra::create(11, -1, -3), Error);
}

TEST_CASE("presentations ramify exactly at p")
{
    for (long p : {2, 3, 5, 7, 11, 13, 17, 41, 73, 89, 97, 113, 193, 1009}) {
        QuatAlgebra alg = QuatAlgebra::for_prime(p);
        auto ram = alg.ramified_primes();
        REQUIRE(ram.size() == 1);
        CHECK(ram[0] == p);
        CHECK(alg.a < 0);
        CHECK(alg.b < 0);
    }
    CHECK(QuatAlgebra::for_prime(13).a == -2);
    CHECK(QuatAlgebra::for_prime(17).a == -3);
    CHECK(QuatAlgebra::for_prime(73).a == -7);
}

TEST_CASE("maximal orders")
{
    QuatOrder o11 = maximal_order(11);
    const QuatAlgebra& a11 = o11.algebra();
    Rational h(1, 2);
    CHECK(o11.basis()[2] == QuatElement(a11, {h, 0, h, 0}));
    CHECK(o11.basis()[3] == QuatElement(a11, {0, h, 0, h}));

    QuatOrder o2 = maximal_order(2);
    CHECK(o2.basis()[3] == QuatElement(o2.algebra(), {h, h, h, h}));

    for (long p = 2; p < 400; ++p) {
        bool prime = true;
        for (long d = 2; d * d <= p; ++d)
            prime = prime && p % d;
        if (!prime)
            continue;
        QuatOrder o = maximal_order(p);
        const auto& b = o.basis();
        QMatrix g(4, 4);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                g(r, c) = bilinear_oracle(b[r], b[c]);
        CHECK(det(g) == Rational(p * p));
        QMatrix m(4, 4);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                m(r, c) = b[r][c];
        for (const auto& x : b)
            for (const auto& y : b) {
                auto xy = x * y;
                auto sol = solve_left(m, std::vector<Rational>(xy.coords().begin(), xy.coords().end()));
                REQUIRE(sol);
                for (const auto& v : *sol)
                    CHECK(v.get_den() == 1);
            }
        CHECK(o.contains(QuatElement::scalar(o.algebra(), Rational(1))));
    }
}

TEST_CASE("commuting criterion")
{
    QuatOrder o = maximal_order(11);
    const QuatAlgebra& alg = o.algebra();
    auto i = QuatElement::basis(alg, 1), j = QuatElement::basis(alg, 2);
    auto r = commute_criterion(i, j, o);
    CHECK(r.norms_product == 11);
    CHECK(r.threshold == Rational(11, 4));
    CHECK(!r.must_commute);
    CHECK(!r.do_commute);
    CHECK(!r.contradiction);
    CHECK(commute_criterion(j, j, o).do_commute);

    auto small = o.elements_up_to(2);
    CHECK(!small.empty());
    for (const auto& x : small) {
        CHECK(x.norm() <= 2);
        CHECK(x.norm() == norm_oracle(x));
        // these all lie in Z[i]
        CHECK(x[2] == 0);
        CHECK(x[3] == 0);
        for (const auto& y : small) {
            auto c = commute_criterion(x, y, o);
            CHECK(c.do_commute);
            CHECK(!c.contradiction);
        }
    }
    // units of Z[i] plus the 4 elements 1 +- i, -1 +- i of norm 2
    CHECK(small.size() == 8);
    CHECK_THROWS_AS(commute_criterion(Rational(1, 3) * i, j, o), Error);
}

TEST_CASE("polarization identity")
{
    std::mt19937 rng(4);
    for (long p : {2, 11, 13, 17}) {
        QuatAlgebra alg = QuatAlgebra::for_prime(p);
        for (int t = 0; t < 200; ++t) {
            auto e = random_element(alg, rng), f = random_element(alg, rng);
            CHECK((e + f).norm() + (e - f).norm() == 2 * (e.norm() + f.norm()));
            CHECK(e.norm() <= 2 * ((e + f).norm() + f.norm()));
            CHECK((e.is_zero() || e.norm() > 0));
        }
    }
}

TEST_CASE("certificate verifier")
{
    QuatAlgebra alg = QuatAlgebra::create(7, -1, -7);
    auto zero = QuatElement::scalar(alg, Rational(0)), one = QuatElement::scalar(alg, Rational(1));
    auto s = QuatElement::basis(alg, 2);
    const Poly f{7, 0, 14, 0, 7, 0, 1};

    EmbeddingCertificate scalar;
    scalar.algebra = alg;
    auto two = QuatElement::scalar(alg, Rational(2));
    scalar.M = {{{two, zero, zero}, {zero, two, zero}, {zero, zero, two}}};
    scalar.alpha = 1;
    scalar.beta = zero;
    scalar.gamma = 1;
    scalar.n = 1;
    scalar.B = 7;
    scalar.f = f;
    auto rs = verify_certificate(scalar);
    CHECK(!rs["polynomial"].pass);
    CHECK(!rs["shape"].pass);
    CHECK(rs.checks.size() == 8);

    EmbeddingCertificate comp = scalar;
    comp.M = {{{s, zero, s}, {one, zero, zero}, {zero, one, zero}}};
    auto rc = verify_certificate(comp);
    CHECK(rc["shape"].pass);
    CHECK(rc["polynomial"].pass);
    CHECK(!rc["rosati"].pass);
    CHECK(rc.checks.size() == 8);
    // the companion matrix satisfies t^3 - s t^2 - s = 0
    auto m2 = quat_matrix_mul(comp.M, comp.M);
    auto m3 = quat_matrix_mul(m2, comp.M);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) {
            auto v = m3[r][c] - s * m2[r][c] - (r == c ? s : zero);
            CHECK(v.is_zero());
        }

    EmbeddingCertificate bad = comp;
    bad.n = 2;
    CHECK_THROWS_AS(verify_certificate(bad), Error);
}

TEST_CASE("generated certificates satisfy the trace decomposition")
{
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> coef(-3, 3), pos(1, 4);
    int generated = 0;
    for (long p : {11, 13, 17, 101}) {
        QuatOrder o = maximal_order(p);
        const QuatAlgebra& alg = o.algebra();
        auto pure = [&]() {
            // trace-zero element of the order
            while (true) {
                std::vector<Integer> x(4);
                for (auto& v : x)
                    v = coef(rng);
                auto e = o.combine(x);
                e = e - QuatElement::scalar(alg, e.trace() / 2);
                if (o.contains(e))
                    return e;
            }
        };
        for (int t = 0; t < 25; ++t) {
            auto x = pure(), beta = pure(), d0 = pure();
            Integer alpha = 1;
            Integer gamma = floor(beta.norm()) + pos(rng);
            Rational n = Rational(alpha * gamma) - beta.norm();
            auto d = n * d0;
            auto cert = make_certificate(alg, x, alpha, beta, gamma, d);
            auto rep = verify_certificate(cert);
            REQUIRE(rep["rosati"].pass);
            REQUIRE(rep["identities"].pass);
            REQUIRE(rep["trace_d"].pass);
            CHECK(rep["trace_decomposition"].pass);
            CHECK(rep["bounds"].pass);
            CHECK(rep["shape"].pass);
            ++generated;
        }
    }
    CHECK(generated == 100);
}

TEST_CASE("eigen-splitting")
{
    Integer delta = 5;
    Field k = NumberField::create(Poly{5, 0, 1});
    auto s = FieldElement::generator(k);
    auto z = FieldElement::zero(k);
    auto one = FieldElement::one(k);
    QuadMatrix d = {{s, z, z}, {z, s, z}, {z, z, -s}};
    auto r = conjugation_split(d, delta);
    CHECK(r.m_plus == 2);
    CHECK(r.m_minus == 1);
    QuadMatrix id = {{one, z, z}, {z, one, z}, {z, z, one}};
    CHECK(r.P == id);

    QuadMatrix sc = {{s, z, z}, {z, s, z}, {z, z, s}};
    auto rs = conjugation_split(sc, delta);
    CHECK(rs.m_plus == 3);
    CHECK(rs.m_minus == 0);

    std::mt19937 rng(5);
    std::uniform_int_distribution<long> e(-2, 2);
    for (int t = 0; t < 30; ++t) {
        // product of elementary matrices is unimodular
        QuadMatrix p0 = id;
        for (int step = 0; step < 6; ++step) {
            std::size_t i = static_cast<std::size_t>(rng() % 3), j = static_cast<std::size_t>(rng() % 3);
            if (i == j)
                continue;
            QuadMatrix el = id;
            el[i][j] = FieldElement::scalar(k, Rational(e(rng)));
            p0 = quad_matrix_mul(p0, el);
        }
        auto m = quad_matrix_mul(quad_matrix_mul(p0, d), quad_matrix_inverse(p0));
        auto rr = conjugation_split(m, delta);
        CHECK(rr.m_plus == 2);
        CHECK(rr.m_minus == 1);
        auto diag = quad_matrix_mul(quad_matrix_mul(quad_matrix_inverse(rr.P), m), rr.P);
        CHECK(diag == d);
    }
    QuadMatrix notsq = {{s, one, z}, {z, s, z}, {z, z, s}};
    CHECK_THROWS_AS(conjugation_split(notsq, delta), Error);
}
