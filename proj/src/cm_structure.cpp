#include "cmbound/cm_structure.hpp"

#include "cmbound/arith.hpp"
#include "cmbound/error.hpp"

namespace cmbound {

FieldElement CMStructure::conj(const FieldElement& a) const
{
    std::size_t d = a.coords().size();
    std::vector<Rational> c(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (a[j] != 0)
                c[i] += conjugation(i, j) * a[j];
    return FieldElement(field, std::move(c));
}

namespace {

constexpr long max_bits = 8192;

/* Unique root ball overlapping b, or -1. */
long unique_overlap(const Ball& b, const EmbeddingSet& e)
{
    long hit = -1;
    for (std::size_t j = 0; j < e.roots.size(); ++j)
        if (b.overlaps(e.roots[j])) {
            if (hit >= 0)
                return -2;
            hit = static_cast<long>(j);
        }
    return hit;
}

/* Conjugation as a polynomial in theta; nullopt when no such automorphism exists. */
std::optional<FieldElement> find_conjugation(EmbeddingSet& e)
{
    const Field& k = e.field;
    Integer scale = abs(poly_discriminant(k->poly()).get_num());
    FieldElement theta = FieldElement::generator(k);
    while (true) {
        std::vector<Ball> targets;
        for (std::size_t i = 0; i < e.roots.size(); ++i)
            targets.push_back(e.roots[e.conj_index(i)]);
        Interpolation r = interpolate(e, targets, scale);
        if (r.status == InterpStatus::NoElement)
            return std::nullopt;
        if (r.status == InterpStatus::Found) {
            const FieldElement& c = r.element;
            if (c == theta || !evaluate(k->poly(), c).is_zero())
                return std::nullopt;
            if (evaluate(c.as_poly(), c) != theta)
                return std::nullopt;
            bool certified = true;
            for (std::size_t i = 0; i < e.roots.size() && certified; ++i) {
                long j = unique_overlap(embed(c, e, i), e);
                if (j == -1)
                    return std::nullopt;
                if (j == -2)
                    certified = false;
                else if (static_cast<std::size_t>(j) != e.conj_index(i))
                    return std::nullopt;
            }
            if (certified)
                return c;
        }
        if (e.precision_bits * 2 > max_bits)
            fail(ErrorKind::PrecisionExhausted, "conjugation search ran out of precision");
        e = refine_embeddings(e, e.precision_bits * 2);
    }
}

Ball real_sqrt(const Ball& b, long prec)
{
    Rational lo = b.mid.re - b.rad, hi = b.mid.re + b.rad;
    if (lo <= 0)
        fail(ErrorKind::PrecisionExhausted, "square root of a ball touching zero");
    Rational l = sqrt_lower(lo, prec), u = sqrt_upper(hi, prec);
    Rational mid = round_dyadic((l + u) / 2, prec);
    Rational rad = ceil_dyadic(std::max(u - mid, mid - l), prec + 4);
    return Ball{Complex(mid), rad};
}

void find_k1(CMStructure& cm)
{
    const Field& k = cm.field;
    FieldElement theta = FieldElement::generator(k);
    FieldElement iota = theta - cm.conj_theta;
    FieldElement big_d = iota * iota;
    Rational nk = big_d.norm();  // N_K(D) = N_{K+}(D)^2, and N_{K+}(D) < 0
    Integer nplus = -isqrt(nk.get_num());
    if (Rational(nplus * nplus) != nk)
        fail(ErrorKind::Internal, "norm of D is not a square");
    Integer d = squarefree_part(nplus);
    FieldElement target = Rational(Rational(1) / d) * big_d;
    Integer scale = abs(d * poly_discriminant(k->poly()).get_num());
    EmbeddingSet& e = cm.embeddings;
    std::size_t s = static_cast<std::size_t>(e.pair_count());
    while (true) {
        bool need = false;
        std::vector<Ball> root(s);
        for (std::size_t i = 0; i < s; ++i)
            root[i] = real_sqrt(embed(target, e, i), e.precision_bits + 16);
        for (unsigned signs = 0; signs < (1u << (s - 1)); ++signs) {
            std::vector<Ball> t(2 * s);
            for (std::size_t i = 0; i < s; ++i) {
                Ball v = root[i];
                if (i > 0 && (signs >> (i - 1)) & 1u)
                    v.mid = Complex(-v.mid.re);
                t[i] = v;
                t[i + s] = v;
            }
            Interpolation r = interpolate(e, t, scale);
            if (r.status == InterpStatus::NeedPrecision) {
                need = true;
                continue;
            }
            if (r.status == InterpStatus::Found && r.element * r.element == target) {
                FieldElement sq = iota * r.element.inverse();
                if (sq * sq != FieldElement::scalar(k, Rational(d)))
                    fail(ErrorKind::Internal, "square root of d failed to verify");
                cm.k1_discriminant = d;
                cm.sqrt_k1 = sq;
                return;
            }
        }
        if (!need)
            return;
        if (e.precision_bits * 2 > max_bits)
            fail(ErrorKind::PrecisionExhausted, "subfield search ran out of precision");
        e = refine_embeddings(e, e.precision_bits * 2);
    }
}

}  // namespace

CMStructure detect_cm(const Field& k, long precision_bits)
{
    int d = k->degree();
    if (d != 2 && d != 6)
        fail(ErrorKind::UnsupportedDegree, "CM detection supports degree 6 (and 2), got " + std::to_string(d));
    CMStructure cm;
    cm.field = k;
    FieldElement theta = FieldElement::generator(k);
    if (d == 2) {
        if (poly_discriminant(k->poly()) >= 0)
            fail(ErrorKind::NotCM, "real quadratic field is not CM");
        cm.embeddings = compute_embeddings(k, precision_bits);
        cm.conj_theta = FieldElement::scalar(k, -k->poly().coeff(1)) - theta;
    } else {
        cm.embeddings = compute_embeddings(k, precision_bits);
        if (cm.embeddings.real_count > 0)
            fail(ErrorKind::NotCM, "field has a real embedding");
        auto c = find_conjugation(cm.embeddings);
        if (!c)
            fail(ErrorKind::NotCM, "no automorphism acts as complex conjugation");
        cm.conj_theta = *c;
    }
    std::size_t n = static_cast<std::size_t>(d);
    cm.conjugation = QMatrix(n, n);
    FieldElement p = FieldElement::one(k);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i)
            cm.conjugation(i, j) = p[i];
        p = p * cm.conj_theta;
    }
    if (!(cm.conjugation * cm.conjugation == QMatrix::identity(n)))
        fail(ErrorKind::Internal, "conjugation is not an involution");
    if (d == 2) {
        cm.kplus_generator = FieldElement::one(k);
        cm.kplus_poly = Poly{-1, 1};
        return cm;
    }
    const FieldElement& c = cm.conj_theta;
    std::vector<FieldElement> candidates{theta + c, theta * c, theta * theta + c * c,
                                         theta * theta * theta + c * c * c};
    for (int t = 2; t < 6; ++t)
        candidates.push_back(theta + Rational(t) * c + theta * c);
    for (const auto& g : candidates) {
        if (g.degree() == 3) {
            cm.kplus_generator = g;
            cm.kplus_poly = g.minpoly();
            break;
        }
    }
    if (cm.kplus_poly.degree() != 3)
        fail(ErrorKind::Internal, "no generator of the real subfield found");
    if (count_real_roots(cm.kplus_poly) != 3)
        fail(ErrorKind::Internal, "real subfield is not totally real");
    find_k1(cm);
    return cm;
}

std::optional<Integer> imaginary_quadratic_subfield(const CMStructure& cm)
{
    if (cm.field->degree() != 6)
        fail(ErrorKind::UnsupportedDegree, "imaginary quadratic subfield detection needs a sextic field");
    return cm.k1_discriminant;
}

std::vector<CMType> enumerate_cm_types(const CMStructure& cm)
{
    if (cm.field->degree() != 6)
        fail(ErrorKind::UnsupportedDegree, "CM types are enumerated for sextic fields only");
    EmbeddingSet e = cm.embeddings;
    std::vector<int> im_sign(6, 0);
    if (cm.sqrt_k1) {
        while (true) {
            bool ok = true;
            for (std::size_t i = 0; i < 6; ++i) {
                im_sign[i] = embed(*cm.sqrt_k1, e, i).im_sign();
                ok = ok && im_sign[i] != 0;
            }
            if (ok)
                break;
            if (e.precision_bits * 2 > max_bits)
                fail(ErrorKind::PrecisionExhausted, "could not separate sqrt(d) from zero");
            e = refine_embeddings(e, e.precision_bits * 2);
        }
    }
    std::vector<CMType> out;
    for (unsigned mask = 0; mask < 8; ++mask) {
        CMType t;
        t.mask = mask;
        for (std::size_t k = 0; k < 3; ++k)
            t.embeddings.push_back((mask >> k) & 1u ? e.conj_index(k) : k);
        if (cm.sqrt_k1) {
            int s0 = im_sign[t.embeddings[0]];
            t.primitive = !(im_sign[t.embeddings[1]] == s0 && im_sign[t.embeddings[2]] == s0);
        }
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace cmbound
