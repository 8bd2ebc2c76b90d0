#include "cmbound/quaternion.hpp"

#include <algorithm>

#include "cmbound/arith.hpp"
#include "cmbound/error.hpp"
#include "cmbound/lattice.hpp"

namespace cmbound {

namespace {

void require_same(const QuatAlgebra& x, const QuatAlgebra& y)
{
    if (!(x == y))
        fail(ErrorKind::MixedAlgebras, "quaternion elements from different algebras");
}

Integer mod(const Integer& x, long m)
{
    Integer r = x % m;
    if (r < 0)
        r += m;
    return r;
}

QuatElement q(const QuatAlgebra& alg, Rational a, Rational b, Rational c, Rational d)
{
    return QuatElement(alg, {a, b, c, d});
}

QuatElement zero_of(const QuatAlgebra& alg)
{
    return QuatElement::scalar(alg, Rational(0));
}

}  // namespace

QuatAlgebra QuatAlgebra::for_prime(const Integer& p)
{
    if (!is_prime(p))
        fail(ErrorKind::NotPrime, to_string(p) + " is not prime");
    if (p == 2)
        return create(p, -1, -1);
    if (mod(p, 4) == 3)
        return create(p, -1, -p);
    if (mod(p, 8) == 5)
        return create(p, -2, -p);
    for (Integer l = 3;; l += 4) {
        if (is_prime(l) && mpz_legendre(l.get_mpz_t(), p.get_mpz_t()) == -1)
            return create(p, -l, -p);
    }
}

QuatAlgebra QuatAlgebra::create(const Integer& p, const Integer& a, const Integer& b)
{
    if (!is_prime(p))
        fail(ErrorKind::NotPrime, to_string(p) + " is not prime");
    if (a >= 0 || b >= 0)
        fail(ErrorKind::MalformedInput, "quaternion presentation needs a, b < 0");
    QuatAlgebra alg{p, a, b};
    auto ram = alg.ramified_primes();
    if (ram.size() != 1 || ram[0] != p)
        fail(ErrorKind::MalformedInput,
             "(" + to_string(a) + ", " + to_string(b) + ") is not ramified exactly at " + to_string(p) + " and infinity");
    return alg;
}

std::vector<Integer> QuatAlgebra::ramified_primes() const
{
    std::vector<Integer> cand{2};
    for (const Integer& v : {a, b}) {
        Factorization fa = factor(v);
        if (!fa.complete())
            fail(ErrorKind::Internal, "could not factor " + to_string(v));
        for (const auto& [l, e] : fa.primes)
            cand.push_back(l);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::vector<Integer> out;
    for (const Integer& l : cand)
        if (hilbert_symbol(a, b, l) == -1)
            out.push_back(l);
    return out;
}

QuatElement::QuatElement(const QuatAlgebra& alg, std::array<Rational, 4> coords)
    : alg_(alg), c_(std::move(coords))
{
}

QuatElement QuatElement::scalar(const QuatAlgebra& alg, const Rational& c)
{
    return QuatElement(alg, {c, Rational(0), Rational(0), Rational(0)});
}

QuatElement QuatElement::basis(const QuatAlgebra& alg, int k)
{
    std::array<Rational, 4> c;
    c[static_cast<std::size_t>(k)] = 1;
    return QuatElement(alg, c);
}

bool QuatElement::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
}

bool QuatElement::is_scalar() const
{
    return c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
}

QuatElement QuatElement::operator-() const
{
    return QuatElement(alg_, {-c_[0], -c_[1], -c_[2], -c_[3]});
}

QuatElement operator+(const QuatElement& x, const QuatElement& y)
{
    require_same(x.alg_, y.alg_);
    std::array<Rational, 4> r;
    for (std::size_t i = 0; i < 4; ++i)
        r[i] = x.c_[i] + y.c_[i];
    return QuatElement(x.alg_, r);
}

QuatElement operator-(const QuatElement& x, const QuatElement& y)
{
    return x + (-y);
}

QuatElement operator*(const QuatElement& x, const QuatElement& y)
{
    require_same(x.alg_, y.alg_);
    const Rational a(x.alg_.a), b(x.alg_.b);
    const auto& u = x.c_;
    const auto& v = y.c_;
    std::array<Rational, 4> r;
    r[0] = u[0] * v[0] + a * u[1] * v[1] + b * u[2] * v[2] - a * b * u[3] * v[3];
    r[1] = u[0] * v[1] + u[1] * v[0] - b * u[2] * v[3] + b * u[3] * v[2];
    r[2] = u[0] * v[2] + u[2] * v[0] + a * u[1] * v[3] - a * u[3] * v[1];
    r[3] = u[0] * v[3] + u[3] * v[0] + u[1] * v[2] - u[2] * v[1];
    return QuatElement(x.alg_, r);
}

QuatElement operator*(const Rational& s, const QuatElement& x)
{
    std::array<Rational, 4> r;
    for (std::size_t i = 0; i < 4; ++i)
        r[i] = s * x.c_[i];
    return QuatElement(x.alg_, r);
}

bool operator==(const QuatElement& x, const QuatElement& y)
{
    return x.alg_ == y.alg_ && x.c_ == y.c_;
}

QuatElement QuatElement::conj() const
{
    return QuatElement(alg_, {c_[0], -c_[1], -c_[2], -c_[3]});
}

Rational QuatElement::norm() const
{
    const Rational a(alg_.a), b(alg_.b);
    return c_[0] * c_[0] - a * c_[1] * c_[1] - b * c_[2] * c_[2] + a * b * c_[3] * c_[3];
}

Rational QuatElement::trace() const
{
    return 2 * c_[0];
}

QuatElement QuatElement::inverse() const
{
    Rational nm = norm();
    if (nm == 0)
        fail(ErrorKind::DegenerateInput, "inverse of zero quaternion");
    return Rational(1 / nm) * conj();
}

std::string to_string(const QuatElement& x)
{
    static const char* names[] = {"", "i", "j", "k"};
    std::string s;
    for (std::size_t t = 0; t < 4; ++t) {
        if (x[t] == 0)
            continue;
        std::string c = to_string(x[t]);
        if (!s.empty())
            s += c[0] == '-' ? " - " : " + ";
        else if (c[0] == '-')
            s += "-";
        if (c[0] == '-')
            c = c.substr(1);
        if (t == 0)
            s += c;
        else
            s += (c == "1" ? std::string() : c + "*") + names[t];
    }
    return s.empty() ? "0" : s;
}

QuatOrder QuatOrder::create(const QuatAlgebra& alg, std::vector<QuatElement> basis)
{
    if (basis.size() != 4)
        fail(ErrorKind::MalformedInput, "a quaternion lattice needs 4 basis elements");
    QMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        require_same(alg, basis[i].algebra());
        for (std::size_t j = 0; j < 4; ++j)
            m(i, j) = basis[i][j];
    }
    auto inv = inverse(m);
    if (!inv)
        fail(ErrorKind::NotAnOrder, "quaternion basis is not of full rank");
    QuatOrder o;
    o.alg_ = alg;
    o.basis_ = std::move(basis);
    o.inv_ = *inv;
    return o;
}

std::vector<Rational> QuatOrder::coords(const QuatElement& x) const
{
    require_same(alg_, x.algebra());
    std::vector<Rational> r(4);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 4; ++i)
            r[j] += x[i] * inv_(i, j);
    return r;
}

bool QuatOrder::contains(const QuatElement& x) const
{
    for (const Rational& c : coords(x))
        if (c.get_den() != 1)
            return false;
    return true;
}

QuatElement QuatOrder::combine(const std::vector<Integer>& x) const
{
    QuatElement r = zero_of(alg_);
    for (std::size_t i = 0; i < 4; ++i)
        if (x[i] != 0)
            r = r + Rational(x[i]) * basis_[i];
    return r;
}

QMatrix QuatOrder::norm_gram() const
{
    QMatrix g(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            g(i, j) = (basis_[i] * basis_[j].conj()).trace() / 2;
    return g;
}

Rational QuatOrder::trace_discriminant() const
{
    QMatrix g(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            g(i, j) = (basis_[i] * basis_[j].conj()).trace();
    return det(g);
}

bool QuatOrder::is_order() const
{
    if (!contains(QuatElement::scalar(alg_, Rational(1))))
        return false;
    for (const auto& x : basis_)
        for (const auto& y : basis_)
            if (!contains(x * y))
                return false;
    return true;
}

std::vector<QuatElement> QuatOrder::elements_up_to(const Rational& bound) const
{
    std::vector<QuatElement> out;
    for (const auto& x : short_vectors(norm_gram(), bound))
        out.push_back(combine(x));
    return out;
}

QuatOrder maximal_order(const Integer& p)
{
    QuatAlgebra alg = QuatAlgebra::for_prime(p);
    const Rational h(1, 2), z(0), o(1);
    std::vector<QuatElement> b;
    if (p == 2) {
        b = {q(alg, o, z, z, z), q(alg, z, o, z, z), q(alg, z, z, o, z), q(alg, h, h, h, h)};
    } else if (mod(p, 4) == 3) {
        b = {q(alg, o, z, z, z), q(alg, z, o, z, z), q(alg, h, z, h, z), q(alg, z, h, z, h)};
    } else if (mod(p, 8) == 5) {
        const Rational f(1, 4);
        b = {q(alg, h, z, h, h), q(alg, z, f, h, f), q(alg, z, z, o, z), q(alg, z, z, z, o)};
    } else {
        Integer l = -alg.a;
        Integer c = 0;
        while ((c * c * p + 1) % l != 0)
            c += 1;
        Rational il = Rational(1) / l;
        b = {q(alg, h, h, z, z), q(alg, z, z, h, -h), q(alg, z, il, z, Rational(-c * il)), q(alg, z, z, z, o)};
    }
    QuatOrder ord = QuatOrder::create(alg, b);
    if (!ord.is_order() || ord.trace_discriminant() != Rational(p * p))
        fail(ErrorKind::Internal, "maximal order construction failed for p = " + to_string(p));
    return ord;
}

CommuteReport commute_criterion(const QuatElement& x, const QuatElement& y, const QuatOrder& order)
{
    if (!order.contains(x) || !order.contains(y))
        fail(ErrorKind::NotIntegral, "elements are not in the given order");
    CommuteReport r;
    r.norms_product = x.norm() * y.norm();
    r.threshold = Rational(order.algebra().p) / 4;
    r.must_commute = r.norms_product < r.threshold;
    r.do_commute = x * y == y * x;
    r.contradiction = r.must_commute && !r.do_commute;
    return r;
}

QuatMatrix quat_matrix_mul(const QuatMatrix& x, const QuatMatrix& y)
{
    QuatMatrix r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            QuatElement s = zero_of(x[0][0].algebra());
            for (std::size_t k = 0; k < 3; ++k)
                s = s + x[i][k] * y[k][j];
            r[i][j] = s;
        }
    return r;
}

QuatMatrix quat_matrix_dual(const QuatMatrix& x)
{
    QuatMatrix r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            r[i][j] = x[j][i].conj();
    return r;
}

namespace {

QuatMatrix scalar_matrix(const QuatAlgebra& alg, const Rational& s)
{
    QuatMatrix r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            r[i][j] = QuatElement::scalar(alg, i == j ? s : Rational(0));
    return r;
}

QuatMatrix add(const QuatMatrix& x, const QuatMatrix& y)
{
    QuatMatrix r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            r[i][j] = x[i][j] + y[i][j];
    return r;
}

QuatMatrix scale(const Rational& s, const QuatMatrix& x)
{
    QuatMatrix r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            r[i][j] = s * x[i][j];
    return r;
}

bool is_one(const QuatElement& x)
{
    return x == QuatElement::scalar(x.algebra(), Rational(1));
}

std::string pos(std::size_t i, std::size_t j)
{
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

CheckResult result(const std::string& name, const std::vector<std::string>& failures, const std::string& ok)
{
    CheckResult r;
    r.check = name;
    r.pass = failures.empty();
    if (r.pass) {
        r.details = ok;
    } else {
        for (std::size_t i = 0; i < failures.size(); ++i)
            r.details += (i ? "; " : "") + failures[i];
    }
    return r;
}

}  // namespace

CertificateEntries certificate_entries(const EmbeddingCertificate& cert)
{
    auto bad = [](const std::string& m) { fail(ErrorKind::MalformedCertificate, m); };
    for (const auto& row : cert.M)
        for (const auto& e : row)
            if (!(e.algebra() == cert.algebra))
                bad("matrix entries must lie in the certificate's algebra");
    if (!(cert.beta.algebra() == cert.algebra))
        bad("beta must lie in the certificate's algebra");
    if (cert.alpha <= 0 || cert.gamma <= 0)
        bad("alpha and gamma must be positive");
    if (cert.n <= 0)
        bad("n must be positive");
    if (Rational(cert.n) != Rational(cert.alpha * cert.gamma) - cert.beta.norm())
        bad("n must equal alpha gamma - N(beta)");
    Rational nn(cert.n);
    return {cert.M[0][0], cert.M[0][1], cert.M[0][2], nn * cert.M[1][2], nn * cert.M[2][2]};
}

QuatMatrix polarization_matrix(const EmbeddingCertificate& cert)
{
    QuatMatrix l = scalar_matrix(cert.algebra, Rational(0));
    l[0][0] = QuatElement::scalar(cert.algebra, Rational(1));
    l[1][1] = QuatElement::scalar(cert.algebra, Rational(cert.alpha));
    l[1][2] = cert.beta;
    l[2][1] = cert.beta.conj();
    l[2][2] = QuatElement::scalar(cert.algebra, Rational(cert.gamma));
    return l;
}

bool CheckReport::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult& CheckReport::operator[](const std::string& name) const
{
    for (const auto& c : checks)
        if (c.check == name)
            return c;
    fail(ErrorKind::Internal, "no check named " + name);
}

CheckReport verify_certificate(const EmbeddingCertificate& cert)
{
    CertificateEntries e = certificate_entries(cert);
    const QuatAlgebra& alg = cert.algebra;
    const Rational alpha(cert.alpha), gamma(cert.gamma), n(cert.n), B(cert.B);
    CheckReport rep;

    {
        std::vector<std::string> f;
        if (!is_one(cert.M[1][0]) || !cert.M[2][0].is_zero())
            f.push_back("first column must be (x, 1, 0)");
        if (!cert.M[1][1].is_zero() || !is_one(cert.M[2][1]))
            f.push_back("second column must be (a, 0, 1)");
        rep.checks.push_back(result("shape", f, "columns (x,1,0), (a,0,1), (b,c/n,d/n)"));
    }

    {
        std::vector<std::string> f;
        if (cert.f.degree() != 6) {
            f.push_back("f must have degree 6");
        } else {
            QuatMatrix acc = scalar_matrix(alg, Rational(0));
            for (int i = 6; i >= 0; --i)
                acc = add(quat_matrix_mul(acc, cert.M), scalar_matrix(alg, cert.f.coeff(i)));
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    if (!acc[i][j].is_zero())
                        f.push_back("f(M)" + pos(i, j) + " = " + to_string(acc[i][j]));
        }
        rep.checks.push_back(result("polynomial", f, "f(M) = 0"));
    }

    QuatMatrix lam = polarization_matrix(cert);
    {
        QuatMatrix lhs = scale(Rational(-1), quat_matrix_mul(lam, cert.M));
        QuatMatrix rhs = quat_matrix_mul(quat_matrix_dual(cert.M), lam);
        std::vector<std::string> f;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                if (lhs[i][j] != rhs[i][j])
                    f.push_back(pos(i, j) + ": " + to_string(lhs[i][j]) + " != " + to_string(rhs[i][j]));
        rep.checks.push_back(result("rosati", f, "-lambda M = M^v lambda"));
    }

    {
        std::vector<std::string> f;
        if (e.x.trace() != 0)
            f.push_back("Tr(x) = " + to_string(e.x.trace()));
        if (e.a != QuatElement::scalar(alg, -alpha))
            f.push_back("a != -alpha");
        if (e.b != -cert.beta)
            f.push_back("b != -beta");
        QuatElement g = Rational(-alpha / n) * e.c - Rational(1 / n) * (cert.beta * e.d);
        if (g != QuatElement::scalar(alg, gamma))
            f.push_back("gamma != -alpha c/n - beta d/n (got " + to_string(g) + ")");
        Rational t = (cert.beta.conj() * e.c).trace() + gamma * e.d.trace();
        if (t != 0)
            f.push_back("Tr(beta^v c) + Tr(gamma d) = " + to_string(t));
        rep.checks.push_back(result("identities", f, "all identities hold"));
    }

    {
        std::vector<std::string> f;
        if (e.d.trace() != 0)
            f.push_back("Tr(d) = " + to_string(e.d.trace()));
        rep.checks.push_back(result("trace_d", f, "Tr(d) = 0"));
    }

    std::vector<Rational> terms{e.x.norm(), 2 * alpha, gamma / alpha, n / (alpha * alpha),
                                (Rational(1 / alpha) * cert.beta + Rational(1 / n) * e.d.conj()).norm()};
    {
        std::vector<std::string> f;
        QuatMatrix sq = quat_matrix_mul(cert.M, cert.M);
        Rational tr = 0;
        for (std::size_t i = 0; i < 3; ++i)
            tr += sq[i][i].trace();
        Rational bm = -tr / 2;
        if (bm != B)
            f.push_back("-1/2 sum Tr(M^2)_ii = " + to_string(bm) + " != B");
        Rational sum = 0;
        for (const auto& t : terms) {
            sum += t;
            if (t < 0)
                f.push_back("negative term " + to_string(t));
        }
        if (sum != B)
            f.push_back("N(x) + 2 alpha + gamma/alpha + n/alpha^2 + N(beta/alpha + d^v/n) = " + to_string(sum) + " != B");
        std::string ok = "B = " + to_string(terms[0]);
        for (std::size_t i = 1; i < terms.size(); ++i)
            ok += " + " + to_string(terms[i]);
        rep.checks.push_back(result("trace_decomposition", f, ok));
    }

    {
        std::vector<std::string> f;
        auto le = [&](const Rational& v, const Rational& bound, const std::string& what) {
            if (v > bound)
                f.push_back(what + " = " + to_string(v) + " > " + to_string(bound));
        };
        le(e.x.norm(), B, "N(x)");
        le(2 * alpha, B, "2 alpha");
        le(gamma / alpha, B, "gamma/alpha");
        le(cert.beta.norm() / (alpha * alpha), B, "N(beta)/alpha^2");
        le(n, B * B * B / 4, "n");
        le(e.d.norm(), Rational(ipow(cert.B, 7)) / 8, "N(d)");
        rep.checks.push_back(result("bounds", f, "all six bounds hold"));
    }

    {
        std::vector<std::string> f;
        std::string ok;
        Rational thr = Rational(ipow(cert.B, 10)) / 8;
        if (Rational(alg.p) > thr) {
            const QuatElement* els[] = {&e.x, &cert.beta, &e.d};
            const char* names[] = {"x", "beta", "d"};
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    if (*els[i] * *els[j] != *els[j] * *els[i])
                        f.push_back(std::string(names[i]) + " and " + names[j] + " do not commute");
            ok = "x, beta, d commute pairwise";
        } else {
            ok = "not required: p <= B^10/8";
        }
        rep.checks.push_back(result("commuting", f, ok));
    }
    return rep;
}

EmbeddingCertificate make_certificate(const QuatAlgebra& alg, const QuatElement& x, const Integer& alpha,
                                      const QuatElement& beta, const Integer& gamma, const QuatElement& d)
{
    if (x.trace() != 0 || beta.trace() != 0 || d.trace() != 0)
        fail(ErrorKind::MalformedCertificate, "x, beta and d must have trace zero");
    if (alpha <= 0)
        fail(ErrorKind::MalformedCertificate, "alpha must be positive");
    Rational nq = Rational(alpha * gamma) - beta.norm();
    if (nq <= 0 || nq.get_den() != 1)
        fail(ErrorKind::MalformedCertificate, "alpha gamma - N(beta) must be a positive integer");
    Rational n = nq, a(alpha);
    QuatElement c = Rational(-1 / a) * (Rational(n * gamma) * QuatElement::scalar(alg, Rational(1)) + beta * d);
    EmbeddingCertificate cert;
    cert.algebra = alg;
    cert.alpha = alpha;
    cert.beta = beta;
    cert.gamma = gamma;
    cert.n = n.get_num();
    QuatElement zero = zero_of(alg), one = QuatElement::scalar(alg, Rational(1));
    cert.M = {{{x, QuatElement::scalar(alg, -a), -beta},
               {one, zero, Rational(1 / n) * c},
               {zero, one, Rational(1 / n) * d}}};
    QuatMatrix sq = quat_matrix_mul(cert.M, cert.M);
    Rational tr = 0;
    for (std::size_t i = 0; i < 3; ++i)
        tr += sq[i][i].trace();
    Rational B = -tr / 2;
    if (B.get_den() != 1)
        fail(ErrorKind::MalformedCertificate, "-1/2 Tr(M^2) is not an integer");
    cert.B = B.get_num();
    return cert;
}

namespace {

using Vec = std::vector<FieldElement>;

/* Basis of {v : A v = 0} over a number field. */
std::vector<Vec> field_kernel(QuadMatrix a, const Field& k)
{
    std::size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c].is_zero())
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[r]);
        FieldElement inv = a[r][c].inverse();
        for (auto& x : a[r])
            x = x * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero())
                continue;
            FieldElement m = a[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                a[i][j] = a[i][j] - m * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<Vec> out;
    for (std::size_t fc = 0; fc < cols; ++fc) {
        if (std::find(pivots.begin(), pivots.end(), fc) != pivots.end())
            continue;
        Vec v(cols, FieldElement::zero(k));
        v[fc] = FieldElement::one(k);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -a[i][fc];
        out.push_back(v);
    }
    return out;
}

}  // namespace

QuadMatrix quad_matrix_mul(const QuadMatrix& x, const QuadMatrix& y)
{
    const Field& k = x[0][0].field();
    QuadMatrix r(x.size(), Vec(y[0].size(), FieldElement::zero(k)));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y[0].size(); ++j)
            for (std::size_t t = 0; t < y.size(); ++t)
                r[i][j] = r[i][j] + x[i][t] * y[t][j];
    return r;
}

QuadMatrix quad_matrix_inverse(const QuadMatrix& m)
{
    std::size_t n = m.size();
    const Field& k = m[0][0].field();
    QuadMatrix a(n, Vec(2 * n, FieldElement::zero(k)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = m[i][j];
        a[i][n + i] = FieldElement::one(k);
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c].is_zero())
            ++piv;
        if (piv == n)
            fail(ErrorKind::DegenerateInput, "singular matrix");
        std::swap(a[piv], a[c]);
        FieldElement inv = a[c][c].inverse();
        for (auto& x : a[c])
            x = x * inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c].is_zero())
                continue;
            FieldElement f = a[i][c];
            for (std::size_t j = 0; j < 2 * n; ++j)
                a[i][j] = a[i][j] - f * a[c][j];
        }
    }
    QuadMatrix r(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r[i][j] = a[i][n + j];
    return r;
}

SplitResult conjugation_split(const QuadMatrix& M, const Integer& delta)
{
    if (delta <= 0)
        fail(ErrorKind::MalformedInput, "delta must be positive");
    if (M.size() != 3 || M[0].size() != 3 || M[1].size() != 3 || M[2].size() != 3)
        fail(ErrorKind::MalformedInput, "M must be 3x3");
    const Field& k = M[0][0].field();
    Poly expect(std::vector<Rational>{Rational(delta), Rational(0), Rational(1)});
    for (const auto& row : M)
        for (const auto& x : row)
            if (x.field() != k)
                fail(ErrorKind::MalformedInput, "entries of M must share one field");
    if (!k || k->poly() != expect)
        fail(ErrorKind::MalformedInput, "entries of M must lie in Q[s]/(s^2 + delta)");
    QuadMatrix sq = quad_matrix_mul(M, M);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (sq[i][j] != FieldElement::scalar(k, i == j ? Rational(-delta) : Rational(0)))
                fail(ErrorKind::DegenerateInput, "M^2 != -delta I");
    FieldElement s = FieldElement::generator(k);
    SplitResult r;
    r.field = k;
    std::vector<Vec> cols;
    for (int sign : {1, -1}) {
        QuadMatrix a = M;
        for (std::size_t i = 0; i < 3; ++i)
            a[i][i] = a[i][i] - (sign > 0 ? s : -s);
        auto ker = field_kernel(a, k);
        (sign > 0 ? r.m_plus : r.m_minus) = static_cast<int>(ker.size());
        cols.insert(cols.end(), ker.begin(), ker.end());
    }
    if (r.m_plus + r.m_minus != 3)
        fail(ErrorKind::Internal, "eigenspaces do not span");
    r.P.assign(3, Vec(3));
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 3; ++i)
            r.P[i][j] = cols[j][i];
    return r;
}

}  // namespace cmbound
