#include "doctest.h"

#include <algorithm>
#include <random>

#include "cmbound/classpoly.hpp"
#include "cmbound/error.hpp"

using namespace cmbound;

namespace {

/* Elementary symmetric functions by the subset-sum recurrence. */
std::vector<Rational> elementary(const std::vector<Rational>& xs)
{
    std::vector<Rational> e{Rational(1)};
    for (const auto& x : xs) {
        e.push_back(Rational(0));
        for (std::size_t k = e.size() - 1; k > 0; --k)
            e[k] += e[k - 1] * x;
    }
    return e;
}

Rational horner(const Poly& p, const Rational& x)
{
    Rational r = 0;
    for (int i = p.degree(); i >= 0; --i)
        r = r * x + p.coeff(i);
    return r;
}

}  // namespace

TEST_CASE("assembly")
{
    auto [h, hh] = assemble({{Rational(2), Rational(5)}, {Rational(3), Rational(7)}});
    CHECK(h == Poly{6, -5, 1});
    CHECK(hh == Poly{-29, 12});
    auto [h1, hh1] = assemble({{Rational(4), Rational(9)}});
    CHECK(h1 == Poly{-4, 1});
    CHECK(hh1 == Poly{9});

    std::mt19937 rng(6);
    std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
    for (int t = 0; t < 20; ++t) {
        std::vector<std::pair<Rational, Rational>> ent;
        std::vector<Rational> js;
        for (int i = 0; i < 5; ++i) {
            Rational j = Rational(num(rng)) / den(rng) + Rational(100 * i);
            ent.emplace_back(j, Rational(num(rng)) / den(rng));
            js.push_back(j);
        }
        auto [H, Hh] = assemble(ent);
        auto e = elementary(js);
        for (std::size_t k = 0; k <= js.size(); ++k) {
            Rational coeff = H.coeff(static_cast<int>(js.size() - k));
            CHECK(coeff == (k % 2 ? -e[k] : e[k]));
        }
        for (std::size_t c = 0; c < ent.size(); ++c) {
            Rational prod = ent[c].second;
            for (std::size_t d = 0; d < ent.size(); ++d)
                if (d != c)
                    prod *= ent[c].first - ent[d].first;
            CHECK(horner(Hh, ent[c].first) == prod);
        }
        auto perm = ent;
        std::shuffle(perm.begin(), perm.end(), rng);
        auto [H2, Hh2] = assemble(perm);
        CHECK(H2 == H);
        CHECK(Hh2 == Hh);
        CHECK(Hh.degree() < H.degree());
    }

    ClassInput mixed;
    mixed.entries = {{ClassValue{"2"}, ClassValue{"5"}}, {ClassValue{"3.0001"}, ClassValue{"7"}}};
    CHECK_THROWS_AS(assemble(mixed), Error);
}

TEST_CASE("rational reconstruction")
{
    CHECK(rational_reconstruct("0.142857142857142857", 10) == Rational(1, 7));
    CHECK(rational_reconstruct("3.5", 10) == Rational(7, 2));
    CHECK(rational_reconstruct("-3.5", 10) == Rational(-7, 2));
    CHECK(rational_reconstruct("35e-1", 10) == Rational(7, 2));
    CHECK_THROWS_AS(rational_reconstruct("0.14", 1000), Error);
    CHECK_THROWS_AS(rational_reconstruct("abc", 10), Error);
    try {
        rational_reconstruct("0.14", 1000);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AmbiguousReconstruction);
    }

    std::mt19937 rng(12);
    std::uniform_int_distribution<long> qd(1, 1000000);
    for (int t = 0; t < 500; ++t) {
        long q = qd(rng);
        std::uniform_int_distribution<long> pd(-3 * q, 3 * q);
        Rational x = Rational(pd(rng)) / q;
        // 2 * 10^-digits/2 < 1/q^2 needs digits > 2 log10(q)
        std::string s = to_decimal(x, 14);
        CHECK(rational_reconstruct(s, q) == x);
        CHECK(rational_reconstruct(s, 1000000) == x);
    }
    for (int t = 0; t < 50; ++t) {
        long q = 100000 + qd(rng) % 900000;
        Rational x = Rational(1) / q;
        CHECK_THROWS_AS(rational_reconstruct(to_decimal(x, 8), 1000000), Error);
    }
}

TEST_CASE("approximate assembly")
{
    ClassInput in;
    in.entries = {{ClassValue{"0.3333333333333"}, ClassValue{"2"}}, {ClassValue{"-1.2500000000000"}, ClassValue{"0.142857142857143"}}};
    auto [h, hh] = assemble_approximate(in, 100);
    auto [eh, ehh] = assemble({{Rational(1, 3), Rational(2)}, {Rational(-5, 4), Rational(1, 7)}});
    CHECK(h == eh);
    CHECK(hh == ehh);
}

TEST_CASE("denominator certification")
{
    Poly h{1, 0, 1};
    Rational v47 = Rational(Integer(25) * 101 * 1186127) / (512 * 49);
    Poly hh(std::vector<Rational>{v47});
    auto r = certify_denominators(h, hh, 2);
    CHECK(r.denominator_primes.size() == 2);
    CHECK(r.denominator_primes[2] == 9);
    CHECK(r.denominator_primes[7] == 2);
    CHECK(r.verdicts[2] == "within_bound");
    CHECK(r.verdicts[7] == "within_bound");
    CHECK(!r.has_violation());

    auto integral = certify_denominators(Poly{1, 2, 3}, Poly{4}, 2);
    CHECK(integral.denominator_primes.empty());
    CHECK(!integral.has_violation());

    Poly v(std::vector<Rational>{Rational(1, 131), Rational(1)});
    auto rv = certify_denominators(v, Poly{1}, 2);
    CHECK(rv.verdicts[131] == "violation");
    CHECK(rv.has_violation());
    CHECK(!certify_denominators(v, Poly{1}, 3).has_violation());
    CHECK_THROWS_AS(certify_denominators(v, Poly{1}, 1), Error);
}
