#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cmbound/api.hpp"
#include "cmbound/error.hpp"

using namespace cmbound;

namespace {

std::optional<Integer> parse_opt_integer(const std::string& s, const char* flag)
{
    if (s.empty())
        return std::nullopt;
    Rational x = parse_rational(s);
    if (x.get_den() != 1)
        fail(ErrorKind::MalformedInput, std::string(flag) + " needs an integer");
    return x.get_num();
}

int emit(const api::Outcome& o, const std::string& output)
{
    std::string text = o.report.dump(2) + "\n";
    if (output.empty() || output == "-") {
        std::cout << text;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) {
            std::cerr << "cmbound: cannot write " << output << "\n";
            return api::Malformed;
        }
        out << text;
    }
    return o.exit_code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bad-reduction bounds for genus-3 CM curves"};
    app.require_subcommand(1);

    std::string input, output, mode, denominator_bound, B;
    long precision_bits = 128;
    unsigned long effort = 2000000;

    const char* verbs[][2] = {
        {"analyze-field", "CM structure, conjugation, K1 and CM types of a sextic field"},
        {"find-mu", "Totally imaginary generator mu with its B"},
        {"bound", "Threshold B^10/8 from B or from an order"},
        {"verify-quat-cert", "Check a quaternion embedding certificate"},
        {"curve-invariants", "Hyperelliptic or Picard invariants and normal forms"},
        {"certify-classpoly", "Assemble class polynomials and certify their denominators"},
    };
    for (const auto& v : verbs) {
        CLI::App* sub = app.add_subcommand(v[0], v[1]);
        sub->add_option("input", input, "Input JSON file ('-' for stdin)")->required();
        sub->add_option("output", output, "Report path (default stdout)");
        sub->add_option("--mode", mode, "exhaustive, minkowski, case1 or case2")
            ->check(CLI::IsMember({"exhaustive", "minkowski", "case1", "case2"}));
        sub->add_option("--precision-bits", precision_bits, "Initial embedding precision")->check(CLI::Range(32L, 1L << 20));
        sub->add_option("--denominator-bound", denominator_bound, "Denominator bound for reconstruction");
        sub->add_option("--effort", effort, "Pollard-Brent iterations per split");
        sub->add_option("--B", B, "Override B");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        api::Outcome o;
        o.report["error"] = api::Json{{"kind", "malformed-input"}, {"message", e.what()}};
        o.exit_code = api::Malformed;
        return emit(o, "");
    }

    std::string verb = app.get_subcommands().front()->get_name();
    api::Options opt;
    opt.mode = mode;
    opt.precision_bits = precision_bits;
    opt.effort = effort;
    try {
        opt.denominator_bound = parse_opt_integer(denominator_bound, "--denominator-bound");
        opt.B = parse_opt_integer(B, "--B");
    } catch (const Error& e) {
        api::Outcome o;
        o.report["error"] = api::Json{{"kind", e.kind_name()}, {"message", e.what()}};
        o.exit_code = api::Malformed;
        return emit(o, output);
    }

    std::stringstream buf;
    if (input == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(input, std::ios::binary);
        if (!in) {
            api::Outcome o;
            o.report["error"] = api::Json{{"kind", "malformed-input"}, {"message", "cannot read " + input}};
            o.exit_code = api::Malformed;
            return emit(o, output);
        }
        buf << in.rdbuf();
    }
    return emit(api::run_text(verb, buf.str(), opt), output);
}
