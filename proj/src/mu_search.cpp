#include "cmbound/mu_search.hpp"

#include "cmbound/bounds.hpp"
#include "cmbound/error.hpp"
#include "cmbound/lattice.hpp"

namespace cmbound {

const char* method_name(MuMethod m)
{
    switch (m) {
    case MuMethod::Exhaustive: return "exhaustive";
    case MuMethod::MinkowskiCase1: return "minkowski_case1";
    case MuMethod::MinkowskiCase2: return "minkowski_case2";
    }
    return "unknown";
}

MuMethod parse_method(const std::string& s)
{
    if (s == "exhaustive")
        return MuMethod::Exhaustive;
    if (s == "minkowski_case1" || s == "case1")
        return MuMethod::MinkowskiCase1;
    if (s == "minkowski_case2" || s == "case2")
        return MuMethod::MinkowskiCase2;
    fail(ErrorKind::MalformedInput, "unknown mode '" + s + "'");
}

Integer B_of(const FieldElement& mu)
{
    Rational b = -(mu * mu).trace() / 2;
    if (b.get_den() != 1)
        fail(ErrorKind::NotIntegral, "-Tr(mu^2)/2 is not an integer");
    return b.get_num();
}

std::optional<QMatrix> order_conjugation(const OrderBasis& o, const CMStructure& cm)
{
    std::size_t n = o.rank();
    QMatrix c(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto x = o.coords(cm.conj(o.element(i)));
        for (std::size_t j = 0; j < n; ++j) {
            if (x[j].get_den() != 1)
                return std::nullopt;
            c(i, j) = x[j];
        }
    }
    return c;
}

bool is_conjugation_stable(const OrderBasis& o, const CMStructure& cm)
{
    return order_conjugation(o, cm).has_value();
}

OrderBasis conjugation_stable_part(const OrderBasis& o, const CMStructure& cm)
{
    std::size_t n = o.rank();
    std::vector<FieldElement> e, ce;
    Integer l(1);
    for (std::size_t i = 0; i < n; ++i) {
        e.push_back(o.element(i));
        ce.push_back(cm.conj(e.back()));
        for (const auto* v : {&e.back(), &ce.back()})
            for (const auto& c : v->coords())
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    ZMatrix a(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a(j, i) = Rational(e[i][j] * l).get_num();
            a(j, n + i) = -Rational(ce[i][j] * l).get_num();
        }
    ZMatrix ker = integer_kernel(a);
    std::vector<FieldElement> gens;
    for (std::size_t r = 0; r < ker.rows(); ++r) {
        FieldElement s = FieldElement::zero(o.field());
        for (std::size_t i = 0; i < n; ++i)
            if (ker(r, i) != 0)
                s = s + Rational(ker(r, i)) * e[i];
        gens.push_back(s);
    }
    OrderBasis lat = OrderBasis::lattice(o.field(), gens);
    return OrderBasis::create(o.field(), lat.basis(), lat.den());
}

namespace {

ZMatrix to_integer(const QMatrix& m)
{
    ZMatrix z(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            z(i, j) = m(i, j).get_num();
    return z;
}

QMatrix require_stable(const OrderBasis& o, const CMStructure& cm)
{
    auto c = order_conjugation(o, cm);
    if (!c)
        fail(ErrorKind::NotConjugationStable, "order is not stable under complex conjugation");
    return *c;
}

std::vector<FieldElement> eigen_lattice(const OrderBasis& o, const CMStructure& cm, int sign)
{
    QMatrix c = require_stable(o, cm);
    std::size_t n = o.rank();
    for (std::size_t i = 0; i < n; ++i)
        c(i, i) -= Rational(sign);
    ZMatrix ker = integer_kernel(to_integer(c.transpose()));
    std::vector<FieldElement> out;
    for (std::size_t r = 0; r < ker.rows(); ++r)
        out.push_back(o.combine(ker.row(r)));
    return out;
}

constexpr long max_bits = 8192;

/* Certified sign of the real part of phi_i(a) for a nonzero a. */
int real_sign(const FieldElement& a, EmbeddingSet& e, std::size_t i)
{
    while (true) {
        int s = embed(a, e, i).re_sign();
        if (s != 0)
            return s;
        if (e.precision_bits * 2 > max_bits)
            fail(ErrorKind::PrecisionExhausted, "sign decision ran out of precision");
        e = refine_embeddings(e, e.precision_bits * 2);
    }
}

struct Best {
    bool found = false;
    FieldElement mu;
    Integer B;

    void offer(const FieldElement& m, const Integer& b)
    {
        if (!found || b < B || (b == B && m.coords() < mu.coords())) {
            found = true;
            mu = m;
            B = b;
        }
    }
};

MuCertificate exhaustive(const OrderBasis& o, const CMStructure& cm)
{
    MinusLattice ml = minus_lattice(o, cm);
    Rational radius = ml.gram(0, 0);
    for (std::size_t i = 1; i < 3; ++i)
        radius = std::min(radius, ml.gram(i, i));
    Best best;
    for (int round = 0; round < 64 && !best.found; ++round, radius *= 2) {
        enumerate_short(ml.gram, radius, [&](const std::vector<Integer>& x, const Rational& q) {
            Integer b = Rational(q / 2).get_num();
            if (best.found && b > best.B)
                return true;
            FieldElement mu = FieldElement::zero(o.field());
            for (std::size_t i = 0; i < 3; ++i)
                if (x[i] != 0)
                    mu = mu + Rational(x[i]) * ml.basis[i];
            if (mu.degree() == 6)
                best.offer(mu, b);
            return true;
        });
    }
    if (!best.found)
        fail(ErrorKind::Internal, "no generator found in the minus lattice");
    MuCertificate c;
    c.mu = best.mu;
    c.B = best.B;
    c.method = MuMethod::Exhaustive;
    return c;
}

MuCertificate minkowski_case1(const OrderBasis& o, const CMStructure& cm)
{
    if (cm.k1_discriminant)
        fail(ErrorKind::CaseMismatch,
             "the field has an imaginary quadratic subfield; use the case-2 construction");
    require_stable(o, cm);
    Integer bound = case1_bound(order_discriminant(o));
    std::size_t n = o.rank();
    std::vector<FieldElement> e;
    for (std::size_t i = 0; i < n; ++i)
        e.push_back(o.element(i));
    // lam sum eta_i^2 + sum |nu_i|^2 <= 3 lam + bound/4 contains the box |eta_i| <= 1, B(mu) <= bound
    Rational lam = std::max(Rational(1), Rational(Rational(bound) / 12));
    std::vector<FieldElement> eta, nu;
    for (const auto& x : e) {
        eta.push_back(Rational(1, 2) * (x + cm.conj(x)));
        nu.push_back(Rational(1, 2) * (x - cm.conj(x)));
    }
    QMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            h(i, j) = lam * (eta[i] * eta[j]).trace() / 2 - (nu[i] * nu[j]).trace() / 2;
            h(j, i) = h(i, j);
        }
    EmbeddingSet emb = cm.embeddings;
    Best best;
    Rational limit = 3 * lam + Rational(bound) / 4;
    FieldElement one = FieldElement::one(o.field());
    enumerate_short(h, limit, [&](const std::vector<Integer>& x, const Rational&) {
        FieldElement g = o.combine(x);
        FieldElement gb = cm.conj(g);
        FieldElement mu = g - gb;
        if (mu.is_zero())
            return true;
        Integer b = B_of(mu);
        if (b > bound || (best.found && b > best.B))
            return true;
        FieldElement eta = Rational(1, 2) * (g + gb);
        FieldElement gap = one - eta * eta;
        if (!gap.is_zero())
            for (std::size_t i = 0; i < 3; ++i)
                if (real_sign(gap, emb, i) < 0)
                    return true;
        if (mu.degree() == 6)
            best.offer(mu, b);
        return true;
    });
    if (!best.found)
        fail(ErrorKind::Internal, "case-1 box contains no generator");
    MuCertificate c;
    c.mu = best.mu;
    c.B = best.B;
    c.method = MuMethod::MinkowskiCase1;
    c.bound_used = bound;
    return c;
}

MuCertificate minkowski_case2(const OrderBasis& o, const CMStructure& cm)
{
    if (!cm.k1_discriminant)
        fail(ErrorKind::CaseMismatch, "the field has no imaginary quadratic subfield; use case 1");
    auto plus = plus_lattice(o, cm);
    auto k1 = k1_lattice(o, cm);
    FieldElement root = k1[0] * cm.conj(k1[1]) - k1[1] * cm.conj(k1[0]);
    FieldElement d1e = root * root;
    if (!d1e.is_rational())
        fail(ErrorKind::Internal, "discriminant of O_1 is not rational");
    Integer d1 = d1e[0].get_num();
    Integer dplus = plus_discriminant(o, cm);
    Integer bound = case2_bound(d1, dplus);
    QMatrix g(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i; j < 3; ++j) {
            g(i, j) = (plus[i] * plus[j]).trace() / 2;
            g(j, i) = g(i, j);
        }
    Integer tmax = 1 + isqrt(4 * abs(dplus));
    EmbeddingSet emb = cm.embeddings;
    FieldElement one = FieldElement::one(o.field());
    Rational dp(abs(dplus));
    Best best;
    enumerate_short(g, Rational(tmax), [&](const std::vector<Integer>& x, const Rational& q) {
        FieldElement gamma = FieldElement::zero(o.field());
        for (std::size_t i = 0; i < 3; ++i)
            if (x[i] != 0)
                gamma = gamma + Rational(x[i]) * plus[i];
        if (gamma.is_rational())
            return true;
        Integer b = abs(d1) * q.get_num();
        if (best.found && b > best.B)
            return true;
        FieldElement g2 = gamma * gamma;
        FieldElement small = one - g2;
        FieldElement large = FieldElement::scalar(o.field(), dp) - g2 * g2;
        int in_small[3], in_large[3];
        for (std::size_t i = 0; i < 3; ++i) {
            in_small[i] = real_sign(small, emb, i) > 0;
            in_large[i] = real_sign(large, emb, i) > 0;
        }
        bool inside = false;
        for (int a = 0; a < 3; ++a)
            inside = inside || (in_small[a] && in_large[(a + 1) % 3] && in_large[(a + 2) % 3]);
        if (!inside)
            return true;
        FieldElement mu = root * gamma;
        if (mu.degree() == 6)
            best.offer(mu, B_of(mu));
        return true;
    });
    if (!best.found)
        fail(ErrorKind::Internal, "case-2 box contains no admissible element");
    MuCertificate c;
    c.mu = best.mu;
    c.B = best.B;
    c.method = MuMethod::MinkowskiCase2;
    c.bound_used = bound;
    return c;
}

}  // namespace

MinusLattice minus_lattice(const OrderBasis& o, const CMStructure& cm)
{
    if (cm.field->degree() != 6)
        fail(ErrorKind::UnsupportedDegree, "minus lattice needs a sextic CM field");
    QMatrix c = require_stable(o, cm);
    std::size_t n = o.rank();
    for (std::size_t i = 0; i < n; ++i)
        c(i, i) += 1;
    MinusLattice ml;
    ml.coords = integer_kernel(to_integer(c.transpose()));
    if (ml.coords.rows() != 3)
        fail(ErrorKind::Internal, "minus lattice does not have rank 3");
    for (std::size_t r = 0; r < 3; ++r)
        ml.basis.push_back(o.combine(ml.coords.row(r)));
    ml.gram = QMatrix(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i; j < 3; ++j) {
            ml.gram(i, j) = -(ml.basis[i] * ml.basis[j]).trace();
            ml.gram(j, i) = ml.gram(i, j);
        }
    return ml;
}

std::vector<FieldElement> plus_lattice(const OrderBasis& o, const CMStructure& cm)
{
    auto v = eigen_lattice(o, cm, 1);
    if (v.size() != 3)
        fail(ErrorKind::Internal, "plus lattice does not have rank 3");
    return v;
}

std::vector<FieldElement> k1_lattice(const OrderBasis& o, const CMStructure& cm)
{
    if (!cm.sqrt_k1)
        fail(ErrorKind::CaseMismatch, "the field has no imaginary quadratic subfield");
    std::size_t n = o.rank();
    QMatrix span(2, n);
    span.set_row(0, o.coords(FieldElement::one(o.field())));
    span.set_row(1, o.coords(*cm.sqrt_k1));
    ZMatrix sat = saturate(span);
    std::vector<FieldElement> out;
    for (std::size_t r = 0; r < sat.rows(); ++r)
        out.push_back(o.combine(sat.row(r)));
    return out;
}

Integer plus_discriminant(const OrderBasis& o, const CMStructure& cm)
{
    auto v = plus_lattice(o, cm);
    Rational d = det(trace_gram(v)) / 8;
    if (d.get_den() != 1)
        fail(ErrorKind::Internal, "discriminant of O_+ is not an integer");
    return d.get_num();
}

Integer k1_order_discriminant(const OrderBasis& o, const CMStructure& cm)
{
    auto k1 = k1_lattice(o, cm);
    FieldElement root = k1[0] * cm.conj(k1[1]) - k1[1] * cm.conj(k1[0]);
    FieldElement sq = root * root;
    if (!sq.is_rational() || sq[0].get_den() != 1)
        fail(ErrorKind::Internal, "discriminant of O_1 is not an integer");
    return sq[0].get_num();
}

void check_mu_certificate(const MuCertificate& c, const CMStructure& cm)
{
    if (cm.conj(c.mu) != -c.mu)
        fail(ErrorKind::Internal, "mu is not totally imaginary");
    if (c.mu.degree() != 6)
        fail(ErrorKind::NotAGenerator, "mu does not generate the field");
    if (B_of(c.mu) != c.B)
        fail(ErrorKind::Internal, "B does not match -Tr(mu^2)/2");
    if (c.B < 2)
        fail(ErrorKind::InvalidB, "B = " + to_string(c.B) + " violates B >= 2");
    FieldElement sq = c.mu * c.mu;
    if (sq.minpoly().degree() != 3)
        fail(ErrorKind::Internal, "mu^2 does not generate the real subfield");
    EmbeddingSet e = cm.embeddings;
    for (std::size_t i = 0; i < 3; ++i)
        if (real_sign(sq, e, i) >= 0)
            fail(ErrorKind::Internal, "mu^2 is not totally negative");
    if (c.bound_used && c.B > *c.bound_used)
        fail(ErrorKind::Internal, "B exceeds the bound of the construction");
}

MuCertificate find_mu(const OrderBasis& o0, const CMStructure& cm, MuMethod mode)
{
    if (cm.field->degree() != 6)
        fail(ErrorKind::UnsupportedDegree, "mu search needs a sextic CM field");
    std::vector<std::string> warnings;
    OrderBasis o = o0;
    if (!is_conjugation_stable(o, cm)) {
        o = conjugation_stable_part(o, cm);
        warnings.push_back("order is not stable under conjugation; using O intersected with its conjugate");
    }
    MuCertificate c;
    switch (mode) {
    case MuMethod::Exhaustive: c = exhaustive(o, cm); break;
    case MuMethod::MinkowskiCase1: c = minkowski_case1(o, cm); break;
    case MuMethod::MinkowskiCase2: c = minkowski_case2(o, cm); break;
    }
    c.warnings = std::move(warnings);
    check_mu_certificate(c, cm);
    return c;
}

}  // namespace cmbound
