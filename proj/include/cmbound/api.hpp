#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "cmbound/classpoly.hpp"
#include "cmbound/curve_invariants.hpp"
#include "cmbound/mu_search.hpp"
#include "cmbound/quaternion.hpp"

namespace cmbound::api {

using Json = nlohmann::ordered_json;

struct Options {
    std::string mode;  // exhaustive, minkowski, case1, case2; empty: input or exhaustive
    long precision_bits = 128;
    std::optional<Integer> denominator_bound;
    unsigned long effort = 2000000;
    std::optional<Integer> B;
};

enum ExitCode { Ok = 0, Malformed = 1, Domain = 2, Violation = 3 };

struct Outcome {
    Json report;
    int exit_code = Ok;
};

/* JSON conversions. Rationals are written as "p/q" strings and read from
 * strings or JSON integers. */
Rational rational_from_json(const Json& j);
Integer integer_from_json(const Json& j);
Json to_json(const Rational& x);
Json to_json(const Integer& x);  // a number when it fits in 64 bits
Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j);

/* {"poly": [...], "basis": [[...]], "den": m}; basis defaults to Z[theta]. */
OrderBasis order_from_json(const Json& j);
Json order_to_json(const OrderBasis& o);

Json certificate_to_json(const MuCertificate& c);

QuatElement quat_from_json(const QuatAlgebra& alg, const Json& j);
Json quat_to_json(const QuatElement& x);
EmbeddingCertificate embedding_certificate_from_json(const Json& j);
Json embedding_certificate_to_json(const EmbeddingCertificate& c);

ClassInput class_input_from_json(const Json& j);

/* Exact value together with a fixed-point rendering. */
Json exact_and_decimal(const Rational& x, int digits = 6);

Json analyze_field(const Json& in, const Options& opt);
Json find_mu(const Json& in, const Options& opt);
Json bound(const Json& in, const Options& opt);
Json verify_quat_cert(const Json& in, const Options& opt);
Json curve_invariants(const Json& in, const Options& opt);
Json certify_classpoly(const Json& in, const Options& opt);

/* Dispatches a verb and maps errors and violations to exit codes. */
Outcome run(const std::string& verb, const Json& in, const Options& opt);
Outcome run_text(const std::string& verb, const std::string& text, const Options& opt);

bool is_verb(const std::string& verb);

}  // namespace cmbound::api
