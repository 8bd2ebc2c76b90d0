#include "cmbound/api.hpp"

#include "cmbound/arith.hpp"
#include "cmbound/bounds.hpp"
#include "cmbound/error.hpp"

namespace cmbound::api {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        fail(ErrorKind::MalformedInput, std::string("missing field '") + key + "'");
    return j.at(key);
}

const Json& array_field(const Json& j, const char* key)
{
    const Json& a = field(j, key);
    if (!a.is_array())
        fail(ErrorKind::MalformedInput, std::string("field '") + key + "' must be an array");
    return a;
}

Json element_to_json(const FieldElement& a)
{
    Json out = Json::array();
    for (const auto& c : a.coords())
        out.push_back(to_json(c));
    return out;
}

Json matrix_to_json(const QMatrix& m)
{
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(to_json(m(i, j)));
        out.push_back(row);
    }
    return out;
}

Json bound_report_to_json(const BoundReport& r)
{
    Json out;
    out["B"] = to_json(r.B);
    out["threshold"] = exact_and_decimal(r.threshold, 3);
    out["largest_possible_bad_prime"] = r.largest_possible_bad_prime ? to_json(*r.largest_possible_bad_prime) : Json();
    Json d;
    d["lo"] = exact_and_decimal(r.delta_threshold.lo, 6);
    d["hi"] = exact_and_decimal(r.delta_threshold.hi, 6);
    out["delta_threshold"] = d;
    Rational constant = Rational(ipow(2, 18)) / ipow(3, 15);
    Json disc;
    disc["constant"] = exact_and_decimal(constant, 6);
    disc["constant_rounded_up"] = "0.019";
    disc["rhs"] = exact_and_decimal(Rational(constant * ipow(r.B, 15)), 3);
    out["discriminant_bound"] = disc;
    if (r.intrinsic) {
        out["intrinsic"] = to_json(*r.intrinsic);
        out["intrinsic_case"] = r.intrinsic_case;
    }
    return out;
}

Json disc_check_to_json(const MuCertificate& c, const OrderBasis& o)
{
    Json out;
    try {
        DiscCheck d = disc_inequality_check(c, o);
        out["applicable"] = true;
        out["resultant_value"] = to_json(d.resultant_value);
        out["product_formula_value"] = to_json(d.product_formula_value);
        out["rhs"] = exact_and_decimal(d.rhs, 3);
        out["agree"] = d.agree;
        out["holds"] = d.holds;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotAGenerator && e.kind() != ErrorKind::UnsupportedDegree)
            throw;
        out["applicable"] = false;
        out["reason"] = e.what();
    }
    return out;
}

MuMethod resolve_mode(const Json& in, const Options& opt, const CMStructure& cm)
{
    std::string mode = opt.mode;
    if (mode.empty() && in.is_object() && in.contains("mode")) {
        if (!in["mode"].is_string())
            fail(ErrorKind::MalformedInput, "field 'mode' must be a string");
        mode = in["mode"].get<std::string>();
    }
    if (mode.empty())
        mode = "exhaustive";
    if (mode == "minkowski")
        return cm.k1_discriminant ? MuMethod::MinkowskiCase2 : MuMethod::MinkowskiCase1;
    return parse_method(mode);
}

std::string value_text(const Json& j)
{
    if (j.is_string())
        return j.get<std::string>();
    if (j.is_number())
        return j.dump();
    fail(ErrorKind::MalformedInput, "class polynomial values must be strings or numbers");
}

Json invariant_vector_to_json(const InvariantVector& v)
{
    Json vals;
    for (const auto& [name, x] : v.values)
        vals[name] = to_json(x);
    return vals;
}

Json bad_reduction_to_json(const BadReduction& r)
{
    Json out;
    out["certified_bad"] = r.certified_bad;
    out["inconclusive"] = r.inconclusive;
    out["conjectural"] = r.conjectural;
    out["valuation"] = r.valuation ? Json(*r.valuation) : Json();
    out["reason"] = r.reason;
    return out;
}

}  // namespace

Rational rational_from_json(const Json& j)
{
    if (j.is_number_integer())
        return j.is_number_unsigned() ? Rational(Integer(std::to_string(j.get<unsigned long long>()), 10))
                                      : Rational(Integer(std::to_string(j.get<long long>()), 10));
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    fail(ErrorKind::MalformedInput, "expected an exact rational, got " + j.dump());
}

Integer integer_from_json(const Json& j)
{
    Rational x = rational_from_json(j);
    if (x.get_den() != 1)
        fail(ErrorKind::MalformedInput, "expected an integer, got " + j.dump());
    return x.get_num();
}

Json to_json(const Rational& x)
{
    return to_string(x);
}

Json to_json(const Integer& x)
{
    if (x.fits_slong_p())
        return Json(x.get_si());
    return to_string(x);
}

Json poly_to_json(const Poly& p)
{
    Json out = Json::array();
    for (const auto& c : p.coeffs())
        out.push_back(to_json(c));
    return out;
}

Poly poly_from_json(const Json& j)
{
    if (!j.is_array())
        fail(ErrorKind::MalformedInput, "polynomial must be an array of coefficients");
    std::vector<Rational> c;
    for (const auto& x : j)
        c.push_back(rational_from_json(x));
    return Poly(c);
}

OrderBasis order_from_json(const Json& j)
{
    Poly f = poly_from_json(field(j, "poly"));
    if (!f.is_monic() || !f.has_integer_coeffs())
        fail(ErrorKind::MalformedInput, "field polynomial must be monic with integer coefficients");
    Field k = NumberField::create(f);
    if (!j.contains("basis"))
        return OrderBasis::equation_order(k);
    const Json& rows = array_field(j, "basis");
    std::size_t d = static_cast<std::size_t>(k->degree());
    if (rows.size() != d)
        fail(ErrorKind::MalformedInput, "basis must have one row per degree");
    ZMatrix b(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        if (!rows[i].is_array() || rows[i].size() != d)
            fail(ErrorKind::MalformedInput, "basis rows must have length " + std::to_string(d));
        for (std::size_t c = 0; c < d; ++c)
            b(i, c) = integer_from_json(rows[i][c]);
    }
    Integer den = j.contains("den") ? integer_from_json(j["den"]) : Integer(1);
    if (den <= 0)
        fail(ErrorKind::MalformedInput, "den must be positive");
    return OrderBasis::create(k, b, den);
}

Json order_to_json(const OrderBasis& o)
{
    Json out;
    out["poly"] = poly_to_json(o.field()->poly());
    Json rows = Json::array();
    for (std::size_t i = 0; i < o.basis().rows(); ++i) {
        Json row = Json::array();
        for (std::size_t c = 0; c < o.basis().cols(); ++c)
            row.push_back(to_json(o.basis()(i, c)));
        rows.push_back(row);
    }
    out["basis"] = rows;
    out["den"] = to_json(o.den());
    return out;
}

Json certificate_to_json(const MuCertificate& c)
{
    Json out;
    out["mu"] = element_to_json(c.mu);
    out["B"] = to_json(c.B);
    out["method"] = method_name(c.method);
    out["bound_used"] = c.bound_used ? Json(to_string(*c.bound_used)) : Json();
    return out;
}

QuatElement quat_from_json(const QuatAlgebra& alg, const Json& j)
{
    if (!j.is_array() || j.size() != 4)
        fail(ErrorKind::MalformedInput, "quaternion entries are 4-vectors, got " + j.dump());
    std::array<Rational, 4> c;
    for (std::size_t i = 0; i < 4; ++i)
        c[i] = rational_from_json(j[i]);
    return QuatElement(alg, c);
}

Json quat_to_json(const QuatElement& x)
{
    Json out = Json::array();
    for (const auto& c : x.coords())
        out.push_back(to_json(c));
    return out;
}

EmbeddingCertificate embedding_certificate_from_json(const Json& j)
{
    Integer p = integer_from_json(field(j, "p"));
    EmbeddingCertificate c;
    if (j.contains("a") || j.contains("b"))
        c.algebra = QuatAlgebra::create(p, integer_from_json(field(j, "a")), integer_from_json(field(j, "b")));
    else
        c.algebra = QuatAlgebra::for_prime(p);
    const Json& m = array_field(j, "M");
    if (m.size() != 3)
        fail(ErrorKind::MalformedInput, "M must be 3x3");
    for (std::size_t r = 0; r < 3; ++r) {
        if (!m[r].is_array() || m[r].size() != 3)
            fail(ErrorKind::MalformedInput, "M must be 3x3");
        for (std::size_t s = 0; s < 3; ++s)
            c.M[r][s] = quat_from_json(c.algebra, m[r][s]);
    }
    c.alpha = integer_from_json(field(j, "alpha"));
    c.beta = quat_from_json(c.algebra, field(j, "beta"));
    c.gamma = integer_from_json(field(j, "gamma"));
    c.n = integer_from_json(field(j, "n"));
    c.B = integer_from_json(field(j, "B"));
    if (j.contains("f"))
        c.f = poly_from_json(j["f"]);
    return c;
}

Json embedding_certificate_to_json(const EmbeddingCertificate& c)
{
    Json out;
    out["p"] = to_json(c.algebra.p);
    out["a"] = to_json(c.algebra.a);
    out["b"] = to_json(c.algebra.b);
    Json m = Json::array();
    for (const auto& row : c.M) {
        Json r = Json::array();
        for (const auto& x : row)
            r.push_back(quat_to_json(x));
        m.push_back(r);
    }
    out["M"] = m;
    out["alpha"] = to_json(c.alpha);
    out["beta"] = quat_to_json(c.beta);
    out["gamma"] = to_json(c.gamma);
    out["n"] = to_json(c.n);
    out["B"] = to_json(c.B);
    out["f"] = poly_to_json(c.f);
    return out;
}

ClassInput class_input_from_json(const Json& j)
{
    ClassInput in;
    for (const auto& e : array_field(j, "entries")) {
        if (e.is_array() && e.size() == 2)
            in.entries.emplace_back(ClassValue{value_text(e[0])}, ClassValue{value_text(e[1])});
        else if (e.is_object())
            in.entries.emplace_back(ClassValue{value_text(field(e, "j"))}, ClassValue{value_text(field(e, "jprime"))});
        else
            fail(ErrorKind::MalformedInput, "entries are [j, j'] pairs or {\"j\", \"jprime\"} objects");
    }
    return in;
}

Json exact_and_decimal(const Rational& x, int digits)
{
    Json out;
    out["exact"] = to_string(x);
    out["decimal"] = to_decimal(x, digits);
    return out;
}

Json analyze_field(const Json& in, const Options& opt)
{
    OrderBasis o = order_from_json(in);
    CMStructure cm = detect_cm(o.field(), opt.precision_bits);
    Json out;
    out["poly"] = poly_to_json(o.field()->poly());
    out["degree"] = o.field()->degree();
    out["cm"] = true;
    out["kplus_poly"] = poly_to_json(cm.kplus_poly);
    out["kplus_generator"] = element_to_json(cm.kplus_generator);
    out["conjugation"] = matrix_to_json(cm.conjugation);
    out["conj_theta"] = element_to_json(cm.conj_theta);
    out["k1_discriminant"] = cm.k1_discriminant ? to_json(*cm.k1_discriminant) : Json();
    out["sqrt_k1"] = cm.sqrt_k1 ? element_to_json(*cm.sqrt_k1) : Json();
    out["order_discriminant"] = to_json(order_discriminant(o));
    out["conjugation_stable"] = is_conjugation_stable(o, cm);
    Json types = Json::array();
    int primitive = 0;
    for (const auto& t : enumerate_cm_types(cm)) {
        Json ty;
        ty["mask"] = t.mask;
        ty["embeddings"] = t.embeddings;
        ty["primitive"] = t.primitive;
        types.push_back(ty);
        primitive += t.primitive ? 1 : 0;
    }
    out["cm_type_count"] = types.size();
    out["primitive_cm_type_count"] = primitive;
    out["cm_types"] = types;
    return out;
}

Json find_mu(const Json& in, const Options& opt)
{
    OrderBasis o = order_from_json(in);
    CMStructure cm = detect_cm(o.field(), opt.precision_bits);
    MuCertificate c = find_mu(o, cm, resolve_mode(in, opt, cm));
    check_mu_certificate(c, cm);
    Json out;
    out["certificate"] = certificate_to_json(c);
    out["mu_minpoly"] = poly_to_json(c.mu.minpoly());
    out["warnings"] = c.warnings;
    out["bound"] = bound_report_to_json(bound_from_B(c.B));
    OrderBasis stable = is_conjugation_stable(o, cm) ? o : conjugation_stable_part(o, cm);
    out["discriminant_check"] = disc_check_to_json(c, stable);
    return out;
}

Json bound(const Json& in, const Options& opt)
{
    BoundReport r;
    if (opt.B) {
        r = bound_from_B(*opt.B);
    } else if (in.is_object() && in.contains("B")) {
        r = bound_from_B(integer_from_json(in["B"]));
    } else {
        OrderBasis o = order_from_json(in);
        CMStructure cm = detect_cm(o.field(), opt.precision_bits);
        r = intrinsic_bound(o, cm);
    }
    Json out = bound_report_to_json(r);
    if (in.is_object() && in.contains("primes")) {
        Json primes = Json::array();
        for (const auto& pj : array_field(in, "primes")) {
            Integer p = integer_from_json(pj);
            if (!is_prime(p))
                fail(ErrorKind::NotPrime, to_string(p) + " is not prime");
            Json e;
            e["p"] = to_json(p);
            e["certified_good"] = certified_good(p, r.B);
            primes.push_back(e);
        }
        out["primes"] = primes;
    }
    return out;
}

Json verify_quat_cert(const Json& in, const Options&)
{
    EmbeddingCertificate c = embedding_certificate_from_json(in);
    CheckReport rep = verify_certificate(c);
    Json out;
    Json alg;
    alg["p"] = to_json(c.algebra.p);
    alg["a"] = to_json(c.algebra.a);
    alg["b"] = to_json(c.algebra.b);
    out["algebra"] = alg;
    Json checks = Json::array();
    for (const auto& r : rep.checks) {
        Json e;
        e["check"] = r.check;
        e["pass"] = r.pass;
        e["details"] = r.details;
        checks.push_back(e);
    }
    out["checks"] = checks;
    out["all_pass"] = rep.all_pass();
    out["violation"] = !rep.all_pass();
    return out;
}

Json curve_invariants(const Json& in, const Options&)
{
    std::string kind = field(in, "kind").is_string() ? in["kind"].get<std::string>() : "";
    InvariantVector v;
    Json out;
    out["kind"] = kind;
    if (kind == "hyperelliptic") {
        Poly f = poly_from_json(field(in, "coeffs"));
        if (f.degree() > 8 || f.degree() < 0)
            fail(ErrorKind::MalformedInput, "hyperelliptic genus-3 curves need deg f <= 8");
        BinaryForm form{f.coeffs()};
        form.c.resize(9);
        v = hyperelliptic_j(form);
        ShiodaInvariants s = shioda_invariants(form);
        Json sh;
        for (int k = 2; k <= 10; ++k)
            sh["J" + std::to_string(k)] = to_json(s.I(k));
        out["shioda"] = sh;
    } else if (kind == "picard") {
        PicardQuartic q;
        if (in.contains("a")) {
            const Json& a = array_field(in, "a");
            if (a.size() != 3)
                fail(ErrorKind::MalformedInput, "field 'a' must be [a2, a3, a4]");
            q = {rational_from_json(a[0]), rational_from_json(a[1]), rational_from_json(a[2])};
        } else {
            q = normalize_quartic(poly_from_json(field(in, "coeffs")));
        }
        out["a"] = Json::array({to_json(q.a2), to_json(q.a3), to_json(q.a4)});
        v = picard_invariants(q);
    } else {
        fail(ErrorKind::MalformedInput, "kind must be \"hyperelliptic\" or \"picard\"");
    }
    out["disc"] = to_json(v.disc);
    out["invariants"] = invariant_vector_to_json(v);
    if (kind == "picard") {
        PicardModel m = picard_normal_form(v);
        Json nf;
        nf["case"] = m.case_number;
        nf["A"] = m.A ? to_json(*m.A) : Json();
        nf["B"] = m.B ? to_json(*m.B) : Json();
        nf["model"] = Json::array({to_json(m.model.a2), to_json(m.model.a3), to_json(m.model.a4)});
        out["normal_form"] = nf;
    }
    if (in.contains("primes")) {
        Json primes = Json::array();
        for (const auto& pj : array_field(in, "primes")) {
            Integer p = integer_from_json(pj);
            Json e;
            e["p"] = to_json(p);
            bool bad = false;
            Json per;
            for (const auto& [name, x] : v.values) {
                BadReduction r = bad_reduction_certificate(x, p, kind);
                bad = bad || r.certified_bad;
                per[name] = bad_reduction_to_json(r);
            }
            e["certified_bad"] = bad;
            e["conjectural"] = kind == "picard";
            e["invariants"] = per;
            primes.push_back(e);
        }
        out["bad_reduction"] = primes;
    }
    return out;
}

Json certify_classpoly(const Json& in, const Options& opt)
{
    Integer B;
    if (opt.B)
        B = *opt.B;
    else if (in.is_object() && in.contains("B"))
        B = integer_from_json(in["B"]);
    else
        fail(ErrorKind::MalformedInput, "certify-classpoly needs B (--B or an input field)");
    Poly H, Hh;
    bool reconstructed = false;
    if (in.contains("H")) {
        H = poly_from_json(in["H"]);
        Hh = poly_from_json(field(in, "H_hat"));
    } else {
        ClassInput ci = class_input_from_json(in);
        bool exact = true;
        for (const auto& [j, jp] : ci.entries)
            exact = exact && j.is_exact() && jp.is_exact();
        if (exact) {
            std::tie(H, Hh) = assemble(ci);
        } else {
            Integer bound = opt.denominator_bound ? *opt.denominator_bound
                            : in.contains("denominator_bound") ? integer_from_json(in["denominator_bound"])
                                                               : Integer(0);
            if (bound <= 0)
                fail(ErrorKind::MixedInput, "approximate entries need a denominator bound (--denominator-bound)");
            std::tie(H, Hh) = assemble_approximate(ci, bound);
            reconstructed = true;
        }
    }
    ClasspolyReport r = certify_denominators(H, Hh, B, opt.effort);
    Json out;
    out["B"] = to_json(B);
    out["threshold"] = exact_and_decimal(r.threshold, 3);
    out["reconstructed"] = reconstructed;
    out["H"] = poly_to_json(r.H);
    out["H_hat"] = poly_to_json(r.H_hat);
    out["denominator"] = to_json(r.denominator);
    Json primes = Json::array();
    for (const auto& [p, e] : r.denominator_primes) {
        Json x;
        x["p"] = to_json(p);
        x["exponent"] = e;
        x["verdict"] = r.verdicts.at(p);
        primes.push_back(x);
    }
    out["denominator_primes"] = primes;
    Json probable = Json::array();
    for (const auto& p : r.probable_primes)
        probable.push_back(to_json(p));
    out["probable_primes"] = probable;
    out["cofactor"] = to_json(r.cofactor);
    out["cofactor_verdict"] = r.cofactor_verdict.empty() ? Json() : Json(r.cofactor_verdict);
    out["violation"] = r.has_violation();
    return out;
}

bool is_verb(const std::string& verb)
{
    return verb == "analyze-field" || verb == "find-mu" || verb == "bound" || verb == "verify-quat-cert" ||
           verb == "curve-invariants" || verb == "certify-classpoly";
}

Outcome run(const std::string& verb, const Json& in, const Options& opt)
{
    Outcome o;
    try {
        if (verb == "analyze-field")
            o.report = analyze_field(in, opt);
        else if (verb == "find-mu")
            o.report = find_mu(in, opt);
        else if (verb == "bound")
            o.report = bound(in, opt);
        else if (verb == "verify-quat-cert")
            o.report = verify_quat_cert(in, opt);
        else if (verb == "curve-invariants")
            o.report = curve_invariants(in, opt);
        else if (verb == "certify-classpoly")
            o.report = certify_classpoly(in, opt);
        else
            fail(ErrorKind::MalformedInput, "unknown verb '" + verb + "'");
        if (o.report.contains("violation") && o.report["violation"].get<bool>())
            o.exit_code = Violation;
    } catch (const Error& e) {
        Json err;
        err["kind"] = e.kind_name();
        err["message"] = e.what();
        o.report = Json();
        o.report["error"] = err;
        o.exit_code = is_domain_error(e.kind()) ? Domain : Malformed;
    } catch (const Json::exception& e) {
        Json err;
        err["kind"] = "malformed-input";
        err["message"] = e.what();
        o.report = Json();
        o.report["error"] = err;
        o.exit_code = Malformed;
    }
    return o;
}

Outcome run_text(const std::string& verb, const std::string& text, const Options& opt)
{
    Json in;
    try {
        in = Json::parse(text);
    } catch (const Json::parse_error& e) {
        Outcome o;
        o.report["error"] = Json{{"kind", "malformed-input"}, {"message", e.what()}};
        o.exit_code = Malformed;
        return o;
    }
    return run(verb, in, opt);
}

}  // namespace cmbound::api
