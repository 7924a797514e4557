// Command-line driver: run the torsion-rank pipeline, verify the built-in
// value tables, and expose the individual algebraic operations for scripting.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "thhk/json_io.hpp"
#include "thhk/thhk.hpp"
#include "thhk/verify.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNotInImage = 3;
constexpr int kExitPrecision = 4;
constexpr int kExitIndeterminate = 5;

struct ErrorJson {
    int code;
    std::string kind;
    std::string message;
};

void print_error(const ErrorJson& e) {
    thhk::json j;
    j["error"] = thhk::json{{"code", e.code}, {"kind", e.kind}, {"message", e.message}};
    std::cout << j.dump() << "\n";
}

thhk::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    thhk::json j;
    in >> j;
    return j;
}

int run_compute(std::int64_t prime, int precision, int truncation, const std::string& summand,
                std::int64_t coeff, bool has_line, std::int64_t line_a,
                const std::string& example, const std::string& spec_file, bool as_json) {
    thhk::ExtensionSpec spec;
    if (!spec_file.empty()) {
        spec = thhk::spec_from_json(load_json_file(spec_file));
    } else {
        spec.prime = prime;
        spec.precision = precision;
        spec.truncation = truncation;
        if (has_line) {
            spec.factor = thhk::ExtensionSpec::Factor::line_bundle;
            spec.line_a = line_a;
        } else if (summand == "B" || summand.empty()) {
            spec.factor = thhk::ExtensionSpec::Factor::b_summand;
        } else if (summand == "B2") {
            spec.factor = thhk::ExtensionSpec::Factor::b2;
        } else {
            spec.factor = thhk::ExtensionSpec::Factor::summand_k;
            spec.summand_index = (int)std::stol(summand);
            spec.coeff = coeff;
        }
        if (!example.empty()) {
            if (example != "beta-l")
                throw std::invalid_argument("unknown --example (supported: beta-l)");
            spec.b_poly = thhk::ExtensionSpec::BPoly::beta_l;
        }
    }
    thhk::ThhReport rep = thhk::torsion_rank(spec);
    if (as_json) {
        std::cout << thhk::to_json(rep).dump() << "\n";
    } else {
        std::cout << "prime              " << rep.spec.prime << "\n";
        std::cout << "factor             " << thhk::factor_name(rep.spec.factor);
        if (rep.spec.factor == thhk::ExtensionSpec::Factor::summand_k)
            std::cout << " k=" << rep.spec.summand_index << " coeff=" << rep.spec.coeff;
        if (rep.spec.factor == thhk::ExtensionSpec::Factor::line_bundle)
            std::cout << " a=" << rep.spec.line_a;
        std::cout << "\n";
        std::cout << "truncation         " << rep.truncation_m << " (doubled to "
                  << 2 * rep.truncation_m << ")\n";
        std::cout << "table precision    " << rep.precision_used << "\n";
        if (rep.unit) std::cout << "unit               " << thhk::to_text(*rep.unit) << "\n";
        std::cout << "normal form        v=" << rep.profile_v << ", k=" << rep.profile_k << "\n";
        auto print_divs = [](const std::vector<int>& d) {
            std::string s = "[";
            for (std::size_t i = 0; i < d.size(); ++i)
                s += (i ? ", " : "") + std::to_string(d[i]);
            return s + "]";
        };
        std::cout << "divisors @ M       " << print_divs(rep.divisors_m) << "\n";
        std::cout << "divisors @ 2M      " << print_divs(rep.divisors_2m) << "\n";
        std::cout << "det valuation      " << rep.detval_m << " @ M, " << rep.detval_2m
                  << " @ 2M\n";
        std::cout << "torsion rank       " << rep.rank << "\n";
        std::cout << "homotopy           even: " << rep.homotopy_even
                  << "   odd: " << rep.homotopy_odd << "\n";
    }
    return 0;
}

int run_verify(std::int64_t prime, bool as_json) {
    std::vector<thhk::verify::Row> rows = thhk::verify::run_all(prime);
    if (as_json) {
        thhk::json arr = thhk::json::array();
        for (const auto& r : rows) {
            arr.push_back(thhk::json{{"criterion", r.criterion},
                                     {"name", r.name},
                                     {"applicable", r.applicable},
                                     {"pass", r.pass},
                                     {"expected", r.expected},
                                     {"actual", r.actual}});
        }
        std::cout << arr.dump() << "\n";
    } else {
        for (const auto& r : rows) {
            std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.criterion << ": "
                      << r.name << "\n";
            std::cout << "       expected: " << r.expected << "\n";
            std::cout << "       actual:   " << r.actual << "\n";
        }
    }
    return thhk::verify::all_pass(rows) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact p-adic K-theory engine: Adams projectors, the unit logarithm "
                 "and its inversion, and the torsion of u - 1"};
    app.require_subcommand(1);

    std::int64_t prime = 3;
    int precision = 4;
    int truncation = 0;
    bool as_json = false;

    // compute
    auto* compute = app.add_subcommand("compute", "run the full pipeline for one extension");
    std::string summand, example, spec_file;
    std::int64_t coeff = 1, line_a = 0;
    bool has_line = false;
    compute->add_option("--prime", prime, "odd prime p");
    compute->add_option("--precision", precision, "digits carried (default 4)");
    compute->add_option("--trunc", truncation, "truncation M (default 2p)");
    auto* summand_opt =
        compute->add_option("--summand", summand, "B, B2 or a summand index in 2..p-2");
    compute->add_option("--coeff", coeff, "scalar coefficient for a summand index");
    auto* line_opt =
        compute->add_option("--line-bundle", line_a, "line-bundle integer exponent a");
    line_opt->excludes(summand_opt);
    compute->add_option("--example", example, "built-in degree-2 datum (beta-l)");
    compute->add_option("--spec", spec_file, "extension spec as a JSON file");
    compute->add_flag("--json", as_json, "emit JSON");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the built-in verification table");
    verify_cmd->add_option("--prime", prime, "one of 3, 5, 7")->required();
    verify_cmd->add_flag("--json", as_json, "emit JSON rows");

    // log
    auto* log_cmd = app.add_subcommand("log", "logarithm of a unit series");
    std::string unit_text;
    log_cmd->add_option("--prime", prime, "odd prime p");
    log_cmd->add_option("--precision", precision, "digits carried (default 4)");
    log_cmd->add_option("--trunc", truncation, "truncation M (default p)");
    std::string log_spec_file;
    log_cmd->add_option("--unit", unit_text, "unit series, e.g. \"(1-x)^2\"");
    log_cmd->add_option("--spec", log_spec_file, "unit series as a JSON file");
    log_cmd->add_flag("--json", as_json, "emit JSON");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "invert the logarithm");
    std::string target_text;
    std::int64_t omega = 1, line_param = 0;
    solve_cmd->add_option("--prime", prime, "odd prime p");
    solve_cmd->add_option("--precision", precision, "digits carried (default 4)");
    solve_cmd->add_option("--trunc", truncation, "truncation M (default p)");
    std::string solve_spec_file;
    solve_cmd->add_option("--target", target_text, "target series");
    solve_cmd->add_option("--spec", solve_spec_file, "target series as a JSON file");
    solve_cmd->add_option("--omega", omega, "Teichmueller kernel residue (default 1)");
    solve_cmd->add_option("--line", line_param, "line-bundle kernel exponent (default 0)");
    solve_cmd->add_flag("--json", as_json, "emit JSON");

    // project
    auto* project_cmd = app.add_subcommand("project", "apply an Adams-summand projector");
    std::string input_text, kclass_file;
    int proj_k = 0, weight = 0;
    project_cmd->add_option("--prime", prime, "odd prime p");
    project_cmd->add_option("--precision", precision, "digits carried (default 4)");
    project_cmd->add_option("--trunc", truncation, "truncation M (default p)");
    project_cmd->add_option("--k", proj_k, "projector index in 0..p-2")->required();
    project_cmd->add_option("--input", input_text, "series to project");
    project_cmd->add_option("--weight", weight, "Bott weight of the class (default 0)");
    project_cmd->add_option("--spec", kclass_file, "K-class as a JSON file {weight, series}");
    project_cmd->add_flag("--json", as_json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (compute->parsed()) {
            has_line = line_opt->count() > 0;
            return run_compute(prime, precision, truncation, summand, coeff, has_line, line_a,
                               example, spec_file, as_json);
        }
        if (verify_cmd->parsed()) return run_verify(prime, as_json);

        if (truncation == 0) truncation = (int)prime;
        if (precision < 2 || truncation < 2)
            throw std::invalid_argument("precision and truncation must both be >= 2");
        if (log_cmd->parsed()) {
            if (unit_text.empty() && log_spec_file.empty())
                throw std::invalid_argument("log: need --unit or --spec");
            thhk::TruncatedSeries u =
                log_spec_file.empty()
                    ? thhk::parse_series(unit_text, prime, precision, truncation)
                    : thhk::series_from_json(load_json_file(log_spec_file));
            thhk::TruncatedSeries lg = thhk::rezk_log(thhk::UnitSeries(u));
            std::cout << (as_json ? thhk::to_json(lg).dump() : thhk::to_text(lg)) << "\n";
            return 0;
        }
        if (solve_cmd->parsed()) {
            if (target_text.empty() && solve_spec_file.empty())
                throw std::invalid_argument("solve: need --target or --spec");
            thhk::TruncatedSeries t =
                solve_spec_file.empty()
                    ? thhk::parse_series(target_text, prime, precision, truncation)
                    : thhk::series_from_json(load_json_file(solve_spec_file));
            thhk::UnitSeries u =
                thhk::solve_unit(t, omega,
                                 thhk::PadicInt::from_int(t.prime(),
                                                          t.min_precision() + t.truncation(),
                                                          line_param));
            std::cout << (as_json ? thhk::to_json(u.body()).dump() : thhk::to_text(u.body()))
                      << "\n";
            return 0;
        }
        if (project_cmd->parsed()) {
            thhk::KClass cls(0, thhk::TruncatedSeries::zero(prime, precision, truncation));
            if (!kclass_file.empty())
                cls = thhk::kclass_from_json(load_json_file(kclass_file));
            else if (!input_text.empty())
                cls = thhk::KClass(weight,
                                   thhk::parse_series(input_text, prime, precision, truncation));
            else
                throw std::invalid_argument("project: need --input or --spec");
            thhk::KClass out = thhk::projector(proj_k, cls);
            std::cout << (as_json ? thhk::to_json(out).dump() : thhk::to_text(out.body()))
                      << "\n";
            return 0;
        }
    } catch (const thhk::not_in_image_error& e) {
        print_error({kExitNotInImage, "not_in_image", e.what()});
        return kExitNotInImage;
    } catch (const thhk::precision_error& e) {
        print_error({kExitPrecision, "precision_exhausted", e.what()});
        return kExitPrecision;
    } catch (const thhk::indeterminate_error& e) {
        print_error({kExitIndeterminate, "indeterminate", e.what()});
        return kExitIndeterminate;
    } catch (const std::invalid_argument& e) {
        print_error({kExitUsage, "usage", e.what()});
        return kExitUsage;
    } catch (const std::domain_error& e) {
        print_error({kExitUsage, "usage", e.what()});
        return kExitUsage;
    } catch (const std::exception& e) {
        print_error({1, "internal", e.what()});
        return 1;
    }
    return kExitUsage;
}
