#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qc/report.hpp"

namespace qc::cli {

enum class Format { text, json, csv };

namespace detail {

inline void render(const VerificationReport& report, Format fmt, std::ostream& out) {
    switch (fmt) {
    case Format::text: write_report_text(out, report); return;
    case Format::json: write_report_json(out, report); return;
    case Format::csv: write_report_csv(out, report); return;
    }
}

inline unsigned default_jobs() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

} // namespace detail

/// Runs one invocation; arguments exclude the program name. Reports go to
/// `out`, usage errors to `err`. Exit code 0 on success/PASS, 1 when a
/// verification FAILs, 2 on usage or validation errors.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact verification lab for max-type contractive conditions"};
    app.name("qclab");

    Format fmt = Format::text;
    unsigned jobs = detail::default_jobs();
    app.add_option("--format", fmt, "output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{
                {"text", Format::text}, {"json", Format::json}, {"csv", Format::csv}},
            CLI::ignore_case))
        ->default_val("text");
    app.add_option("--jobs", jobs, "worker threads for grid scans")
        ->check(CLI::PositiveNumber);
    app.fallthrough();
    app.require_subcommand(1);

    // verify
    std::string verify_subject;
    int k = 2;
    std::string family_name_arg;
    int spec_a = 0, spec_b = 0;
    std::int64_t max_exp = 16;
    int a_max = 8, b_max = 8;
    auto* verify = app.add_subcommand("verify", "verify a claim, lemma or the full theorem");
    verify->add_option("subject", verify_subject, "claim1|claim2|lemma1|lemma2|theorem")
        ->required()
        ->check(CLI::IsMember({"claim1", "claim2", "lemma1", "lemma2", "theorem"}));
    verify->add_option("--k", k, "orbit offset for claim1 (D = d(T^(k+1)x, T^k y))");
    auto* vf = verify->add_option("--family", family_name_arg, "relaxation family for claim2");
    auto* va = verify->add_option("--a", spec_a, "relaxation exponent a");
    auto* vb = verify->add_option("--b", spec_b, "relaxation exponent b");
    vf->needs(va)->needs(vb);
    verify->add_option("--max-exp", max_exp, "grid cap on exponents");
    verify->add_option("--a-max", a_max, "family cap on a (theorem)");
    verify->add_option("--b-max", b_max, "family cap on b (theorem)");

    // scan
    std::string scan_example_arg, scan_condition;
    auto* scan = app.add_subcommand("scan", "sup of squared ratios for a condition over a grid");
    scan->add_option("--example", scan_example_arg, "pow2|zeta")
        ->required()
        ->check(CLI::IsMember({"pow2", "zeta"}));
    scan->add_option("--condition", scan_condition, "c1|c2|c3|cx")
        ->required()
        ->check(CLI::IsMember({"c1", "c2", "c3", "cx"}));
    auto* sk = scan->add_option("--k", k, "claim1-shaped extra term for cx");
    auto* sf = scan->add_option("--family", family_name_arg, "relaxation family for cx");
    auto* sa = scan->add_option("--a", spec_a, "relaxation exponent a");
    auto* sb = scan->add_option("--b", spec_b, "relaxation exponent b");
    sf->needs(sa)->needs(sb)->excludes(sk);
    scan->add_option("--max-exp", max_exp, "grid cap on exponents");

    // classify
    auto* classify = app.add_subcommand("classify", "which example defeats a relaxation");
    classify->add_option("--family", family_name_arg, "relaxation family")->required();
    classify->add_option("--a", spec_a, "relaxation exponent a")->required();
    classify->add_option("--b", spec_b, "relaxation exponent b")->required();

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "list family members under caps");
    enumerate->add_option("--a-max", a_max, "cap on a");
    enumerate->add_option("--b-max", b_max, "cap on b");

    // iterate
    std::string map_name = "demo-banach";
    std::string alpha_str = "1/2", beta_str = "0", x0_str = "0";
    std::string tol_sq_str = "1/1000000";
    std::size_t max_iter = 100;
    auto* iterate = app.add_subcommand("iterate", "Picard iteration on a demo map");
    iterate->add_option("--map", map_name, "demo-banach")->required();
    iterate->add_option("--alpha", alpha_str, "map slope (rational P/Q)");
    iterate->add_option("--beta", beta_str, "map offset (rational P/Q)");
    iterate->add_option("--x0", x0_str, "starting point (rational P/Q)");
    iterate->add_option("--tol-sq", tol_sq_str, "squared convergence tolerance (rational P/Q)");
    iterate->add_option("--max-iter", max_iter, "iteration cap");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        err << app.help();
        return 2;
    }

    auto parse_family = [&]() {
        auto fam = family_from_name(family_name_arg);
        if (!fam) {
            throw validation_error("unknown family '" + family_name_arg +
                                   "' (expected xy-a3, xy-b2, xx or yy)");
        }
        return RelaxationSpec::make(*fam, spec_a, spec_b);
    };

    try {
        if (verify->parsed()) {
            VerificationReport report;
            if (verify_subject == "claim1") {
                report = verify_claim1(k, max_exp, jobs);
            } else if (verify_subject == "claim2") {
                if (!*vf) {
                    throw validation_error("verify claim2 requires --family, --a, --b");
                }
                report = verify_claim2(parse_family(), max_exp, jobs);
            } else if (verify_subject == "lemma1") {
                report = verify_lemma1(max_exp, max_exp);
            } else if (verify_subject == "lemma2") {
                report = verify_lemma2(max_exp, max_exp);
            } else {
                report = verify_theorem(a_max, b_max, max_exp, jobs);
            }
            detail::render(report, fmt, out);
            return report.status == Status::pass ? 0 : 1;
        }

        if (scan->parsed()) {
            ConditionTemplate cond;
            std::string label = scan_condition;
            if (scan_condition == "c1") {
                cond = make_c1();
            } else if (scan_condition == "c2") {
                cond = make_c2();
            } else if (scan_condition == "c3") {
                cond = make_c3();
            } else {
                RelaxationSpec spec = *sf ? parse_family()
                                          : RelaxationSpec::make(Family::xy_a3, k + 1, k);
                cond = make_cx(spec);
                label = "cx:" + spec.str();
            }
            ExampleKind kind =
                scan_example_arg == "pow2" ? ExampleKind::pow2 : ExampleKind::zeta;
            VerificationReport report = scan_example(kind, cond, label, max_exp, jobs);
            detail::render(report, fmt, out);
            return report.status == Status::pass ? 0 : 1;
        }

        if (classify->parsed()) {
            VerificationReport report = classify_report(parse_family());
            detail::render(report, fmt, out);
            return 0;
        }

        if (enumerate->parsed()) {
            std::vector<RelaxationSpec> specs = enumerate_family(a_max, b_max);
            switch (fmt) {
            case Format::text: write_enumerate_text(out, specs, a_max, b_max); break;
            case Format::json: write_enumerate_json(out, specs, a_max, b_max); break;
            case Format::csv: write_enumerate_csv(out, specs); break;
            }
            return 0;
        }

        if (iterate->parsed()) {
            if (map_name != "demo-banach") {
                throw validation_error("unknown map '" + map_name + "' (expected demo-banach)");
            }
            Rational alpha = Rational::parse(alpha_str);
            Rational beta = Rational::parse(beta_str);
            Rational x0 = Rational::parse(x0_str);
            IterationConfig cfg;
            cfg.max_iter = max_iter;
            cfg.tol_sq = Rational::parse(tol_sq_str);
            Space space = Space::demo_affine(alpha, beta);
            FixedPointResult res = picard_iterate(space, PointRef::demo_point(x0), cfg);
            std::vector<std::pair<std::string, std::string>> params = {
                {"map", map_name},       {"alpha", alpha.str()},
                {"beta", beta.str()},    {"x0", x0.str()},
                {"tol_sq", cfg.tol_sq.str()}, {"max_iter", std::to_string(max_iter)}};
            switch (fmt) {
            case Format::text: write_iterate_text(out, res); break;
            case Format::json: write_iterate_json(out, res, params); break;
            case Format::csv: write_iterate_csv(out, res); break;
            }
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    err << "error: no command given\n" << app.help();
    return 2;
}

} // namespace qc::cli
