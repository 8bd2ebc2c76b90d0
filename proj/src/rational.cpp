#include "cmbound/rational.hpp"

#include <cctype>

#include "cmbound/error.hpp"

namespace cmbound {

const char* Error::kind_name() const noexcept
{
    switch (kind_) {
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::NotIrreducible: return "not-irreducible";
    case ErrorKind::NotCM: return "not-cm";
    case ErrorKind::UnsupportedDegree: return "unsupported-degree";
    case ErrorKind::NotAnOrder: return "not-an-order";
    case ErrorKind::NotConjugationStable: return "not-conjugation-stable";
    case ErrorKind::InvalidB: return "invalid-B";
    case ErrorKind::NotAGenerator: return "not-a-generator";
    case ErrorKind::CaseMismatch: return "case-mismatch";
    case ErrorKind::PrecisionExhausted: return "precision-exhausted";
    case ErrorKind::MixedAlgebras: return "mixed-algebras";
    case ErrorKind::NotIntegral: return "not-integral";
    case ErrorKind::NotPrime: return "not-prime";
    case ErrorKind::MalformedCertificate: return "malformed-certificate";
    case ErrorKind::SingularCurve: return "singular-curve";
    case ErrorKind::InvalidInvariants: return "invalid-invariants";
    case ErrorKind::MixedInput: return "mixed-input";
    case ErrorKind::AmbiguousReconstruction: return "ambiguous-reconstruction";
    case ErrorKind::MalformedInput: return "malformed-input";
    case ErrorKind::Internal: return "internal";
    }
    return "unknown";
}

bool is_domain_error(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::MalformedInput:
    case ErrorKind::MalformedCertificate:
    case ErrorKind::MixedInput:
    case ErrorKind::PrecisionExhausted:
    case ErrorKind::Internal:
        return false;
    default:
        return true;
    }
}

namespace {

Integer parse_integer(std::string_view s, std::string_view whole)
{
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-'))
        ++i;
    if (i == s.size())
        fail(ErrorKind::MalformedInput, "not a rational: '" + std::string(whole) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            fail(ErrorKind::MalformedInput, "not a rational: '" + std::string(whole) + "'");
    std::string digits(s);
    if (digits[0] == '+')
        digits.erase(0, 1);
    return Integer(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text, text));
    Integer num = parse_integer(text.substr(0, slash), text);
    Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0)
        fail(ErrorKind::MalformedInput, "zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Integer& x)
{
    return x.get_str();
}

std::string to_string(const Rational& x)
{
    if (x.get_den() == 1)
        return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_decimal(const Rational& x, int digits)
{
    Integer scale = ipow(10, static_cast<unsigned long>(digits));
    Rational scaled = abs(x) * scale;
    Integer n = floor(scaled + Rational(1, 2));
    std::string s = n.get_str();
    if (digits > 0) {
        if (static_cast<int>(s.size()) <= digits)
            s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    if (x < 0 && n != 0)
        s.insert(0, "-");
    return s;
}

Integer floor(const Rational& x)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Integer ceil(const Rational& x)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Integer isqrt(const Integer& x)
{
    if (x < 0)
        fail(ErrorKind::Internal, "isqrt of a negative number");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

bool is_square(const Integer& x)
{
    return x >= 0 && mpz_perfect_square_p(x.get_mpz_t()) != 0;
}

Integer ipow(const Integer& base, unsigned long exp)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Rational qpow(const Rational& base, long exp)
{
    if (exp < 0) {
        if (base == 0)
            fail(ErrorKind::DegenerateInput, "zero to a negative power");
        return qpow(Rational(1) / base, -exp);
    }
    Rational r(ipow(base.get_num(), static_cast<unsigned long>(exp)),
               ipow(base.get_den(), static_cast<unsigned long>(exp)));
    r.canonicalize();
    return r;
}

Rational round_dyadic(const Rational& x, long bits)
{
    Rational scaled = x * power_of_two(bits);
    Integer n = (x >= 0) ? floor(scaled + Rational(1, 2)) : ceil(scaled - Rational(1, 2));
    return Rational(n) * power_of_two(-bits);
}

Rational ceil_dyadic(const Rational& x, long bits)
{
    return Rational(ceil(x * power_of_two(bits))) * power_of_two(-bits);
}

Rational sqrt_lower(const Rational& x, long bits)
{
    if (x <= 0)
        return Rational(0);
    // floor(sqrt(x * 4^bits)) / 2^bits
    Integer scaled = floor(x * power_of_two(2 * bits));
    return Rational(isqrt(scaled)) * power_of_two(-bits);
}

Rational sqrt_upper(const Rational& x, long bits)
{
    if (x <= 0)
        return Rational(0);
    Integer scaled = ceil(x * power_of_two(2 * bits));
    Integer r = isqrt(scaled);
    if (r * r < scaled)
        r += 1;
    return Rational(r) * power_of_two(-bits);
}

int sign(const Rational& x)
{
    return sgn(x);
}

int sign(const Integer& x)
{
    return sgn(x);
}

}  // namespace cmbound
