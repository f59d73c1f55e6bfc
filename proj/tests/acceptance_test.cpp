#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "qc/cli.hpp"

using nlohmann::ordered_json;
using namespace qc;

namespace {

// Each criterion collects its failed checks and prints one summary line.
struct Criterion {
    int number;
    std::string name;
    std::vector<std::string> errors;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            errors.push_back(what);
        }
    }

    bool finish() const {
        std::cout << "[criterion " << number << "] " << name << ": "
                  << (errors.empty() ? "PASS" : "FAIL") << "\n";
        for (const std::string& e : errors) {
            std::cout << "    failed: " << e << "\n";
        }
        std::cout.flush();
        return errors.empty();
    }
};

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

int run_cli(const std::vector<std::string>& args, std::string& out) {
    std::ostringstream o, e;
    int code = cli::run(args, o, e);
    out = o.str();
    return code;
}

Int jint(const ordered_json& v) {
    if (v.is_string()) {
        return Int(v.get<std::string>());
    }
    return Int(v.get<long long>());
}

Rational jrat(const ordered_json& v) { return Rational(jint(v["num"]), jint(v["den"])); }

} // namespace

TEST_CASE("criterion 1: claim 1 reproduction") {
    Criterion crit{1, "claim1 reproduction (q^2 = 9/16, witness (0,2), k = 2..5)"};

    Timer timer;
    std::string out;
    int code = run_cli({"verify", "claim1", "--k", "2", "--max-exp", "16", "--format", "json"}, out);
    double elapsed = timer.seconds();
    crit.check(code == 0, "exit code 0");
    auto j = ordered_json::parse(out);
    crit.check(j["status"] == "PASS", "status PASS");
    crit.check(j["params"]["q_sq"] == "9/16", "verified factor is 9/16");
    crit.check(jrat(j["grid"]["sup_ratio_sq"]) == Rational(9, 16), "grid sup equals 9/16 exactly");
    crit.check(j["grid"]["witness"]["m"] == 0 && j["grid"]["witness"]["n"] == 2,
               "witness is (m,n) = (0,2)");
    crit.check(j["failures"].empty(), "zero violating pairs");
    crit.check(elapsed < 1.0, "runtime under 1 second");

    for (int k : {3, 4, 5}) {
        std::string out_k;
        int code_k = run_cli({"verify", "claim1", "--k", std::to_string(k), "--max-exp", "16",
                              "--format", "json"}, out_k);
        crit.check(code_k == 0, "k=" + std::to_string(k) + " exit code 0");
        auto jk = ordered_json::parse(out_k);
        crit.check(jk["status"] == "PASS", "k=" + std::to_string(k) + " status PASS");
        crit.check(jrat(jk["grid"]["sup_ratio_sq"]) < Rational(9, 16),
                   "k=" + std::to_string(k) + " sup strictly below 9/16");
    }
    REQUIRE(crit.finish());
}

TEST_CASE("criterion 2: lemma reproduction") {
    Criterion crit{2, "lemma minima 21 and 49 with exact base cases"};

    const std::vector<Rational> lemma1_bases = {Rational(21), Rational(28), Rational(112),
                                                Rational(49), Rational(84), Rational(112)};
    const std::vector<Rational> lemma2_bases = {Rational(49), Rational(84), Rational(112)};

    for (const std::vector<std::string>& extra :
         std::vector<std::vector<std::string>>{{}, {"--max-exp", "12"}}) {
        for (int which : {1, 2}) {
            std::vector<std::string> args = {"verify", which == 1 ? "lemma1" : "lemma2",
                                             "--format", "json"};
            args.insert(args.end(), extra.begin(), extra.end());
            Timer timer;
            std::string out;
            int code = run_cli(args, out);
            double elapsed = timer.seconds();
            std::string label = (which == 1 ? "lemma1" : "lemma2") +
                                std::string(extra.empty() ? " (default grid)" : " (grid 12)");
            crit.check(code == 0, label + " exit code 0");
            auto j = ordered_json::parse(out);
            crit.check(j["status"] == "PASS", label + " status PASS");
            crit.check(jrat(j["grid"]["min_sq"]) == (which == 1 ? Rational(21) : Rational(49)),
                       label + " exact grid minimum");
            crit.check(j["grid"]["witness"]["u"] == 0 && j["grid"]["witness"]["v"] == 0,
                       label + " minimum attained at (0,0)");
            const auto& bases = which == 1 ? lemma1_bases : lemma2_bases;
            const auto& checks = j["certificates"][0]["boundary_checks"];
            crit.check(checks.size() == bases.size(), label + " base case count");
            for (std::size_t i = 0; i < bases.size() && i < checks.size(); ++i) {
                crit.check(jrat(checks[i]["lhs_sq"]) == bases[i],
                           label + " base case " + std::to_string(i) + " exact value");
                crit.check(checks[i]["pass"] == true,
                           label + " base case " + std::to_string(i) + " passes");
            }
            crit.check(elapsed < 1.0, label + " runtime under 1 second");
        }
    }
    REQUIRE(crit.finish());
}

TEST_CASE("criterion 3: claim 2 reproduction on representative specs") {
    Criterion crit{3, "claim2 representative specs with working q^2 <= 25/28"};

    const std::vector<std::vector<std::string>> specs = {
        {"xy-a3", "3", "0"}, {"xy-a3", "4", "1"}, {"xy-b2", "0", "2"},
        {"xx", "3", "0"},    {"yy", "2", "0"},
    };
    Timer timer;
    for (const auto& s : specs) {
        std::string label = s[0] + "(a=" + s[1] + ",b=" + s[2] + ")";
        std::string out;
        int code = run_cli({"verify", "claim2", "--family", s[0], "--a", s[1], "--b", s[2],
                            "--max-exp", "12", "--format", "json"}, out);
        crit.check(code == 0, label + " exit code 0");
        auto j = ordered_json::parse(out);
        crit.check(j["status"] == "PASS", label + " status PASS");
        crit.check(jrat(j["grid"]["sup_ratio_sq"]) <= Rational(25, 28),
                   label + " working q^2 <= 25/28");

        bool found = false;
        for (const auto& cert : j["certificates"]) {
            if (cert["case_id"] != "claim2/m=n+1") {
                continue;
            }
            found = true;
            crit.check(jrat(cert["q_sq"]) == Rational(1, 3), label + " q2^2 = 1/3");
            const auto& checks = cert["boundary_checks"];
            bool instance = false;
            for (const auto& b : checks) {
                if (b["m"] == 1 && b["n"] == 0 && jrat(b["lhs_sq"]) == Rational(28) &&
                    jrat(b["rhs_sq"]) == Rational(84) && b["pass"] == true) {
                    instance = true;
                }
            }
            crit.check(instance, label + " equality instance (L,R) = (28,84) in certificate");
        }
        crit.check(found, label + " m=n+1 certificate present");
    }
    crit.check(timer.seconds() < 2.0, "total runtime under 2 seconds");
    REQUIRE(crit.finish());
}

TEST_CASE("criterion 4: theorem sweep") {
    Criterion crit{4, "theorem sweep over the capped family"};

    Timer timer;
    std::string out;
    int code = run_cli({"verify", "theorem", "--a-max", "8", "--b-max", "8", "--max-exp",
                        "12", "--format", "json"}, out);
    double elapsed = timer.seconds();
    crit.check(code == 0, "exit code 0");
    auto j = ordered_json::parse(out);
    crit.check(j["status"] == "PASS", "status PASS");

    // Closed-form count of the four constraint sets, computed independently.
    std::size_t expected = qc::testing::family_count(8, 8);
    crit.check(j["specs"].size() == expected,
               "enumerated " + std::to_string(j["specs"].size()) + " specs, closed form says " +
                   std::to_string(expected));

    std::size_t pow2_specs = 0, zeta_specs = 0;
    for (const auto& s : j["specs"]) {
        crit.check(s["status"] == "PASS", "spec " + s["family"].get<std::string>() + "(" +
                                              std::to_string(s["a"].get<int>()) + "," +
                                              std::to_string(s["b"].get<int>()) + ") PASS");
        if (s["example"] == "pow2") {
            ++pow2_specs;
        } else if (s["example"] == "zeta") {
            ++zeta_specs;
        } else {
            crit.check(false, "spec classified to an unknown example");
        }
        auto fam = family_from_name(s["family"].get<std::string>());
        crit.check(fam.has_value(), "family name round-trips");
        if (fam) {
            auto spec = RelaxationSpec::make(*fam, s["a"].get<int>(), s["b"].get<int>());
            crit.check(example_name(classify_relaxation(spec)) == s["example"],
                       "classification matches the library");
        }
    }
    crit.check(pow2_specs + zeta_specs == expected, "each spec classified to exactly one example");
    crit.check(j["params"]["no_fixed_point"] == "PASS", "no fixed point on either grid");
    crit.check(elapsed < 30.0, "runtime under 30 seconds");
    REQUIRE(crit.finish());
}

TEST_CASE("criterion 5: negative controls") {
    Criterion crit{5, "C1/C2/C3 genuinely fail without the extra term"};

    std::string out;
    int code = run_cli({"scan", "--example", "pow2", "--condition", "c1", "--max-exp", "12",
                        "--format", "json"}, out);
    crit.check(code == 0, "pow2 c1 scan exit code 0");
    crit.check(jrat(ordered_json::parse(out)["grid"]["sup_ratio_sq"]) > Rational(1),
               "pow2 c1 sup ratio squared > 1");

    for (const std::string& cond : {"c2", "c3"}) {
        Rational best(0);
        for (const std::string& example : {"pow2", "zeta"}) {
            std::string scan_out;
            int scan_code = run_cli({"scan", "--example", example, "--condition", cond,
                                     "--max-exp", "12", "--format", "json"}, scan_out);
            crit.check(scan_code == 0, example + " " + cond + " scan exit code 0");
            Rational sup = jrat(ordered_json::parse(scan_out)["grid"]["sup_ratio_sq"]);
            if (sup > best) {
                best = sup;
            }
        }
        crit.check(best >= Rational(1), cond + " sup ratio squared >= 1 on at least one example");
    }
    REQUIRE(crit.finish());
}

TEST_CASE("criterion 6: solver sanity") {
    Criterion crit{6, "Picard iteration on the demo contraction and both examples"};

    std::string out;
    int code = run_cli({"iterate", "--map", "demo-banach", "--alpha", "1/2", "--beta", "1",
                        "--x0", "0", "--tol-sq", "1/1000000000000", "--max-iter", "100",
                        "--format", "json"}, out);
    crit.check(code == 0, "iterate exit code 0");
    auto j = ordered_json::parse(out);
    crit.check(j["verdict"] == "CONVERGED", "verdict CONVERGED");

    const Rational tol_sq(Int(1), Int("1000000000000"));
    Rational final = jrat(j["final_point"]);
    Rational gap = final - Rational(2);
    crit.check(gap * gap <= tol_sq, "final point within tolerance of 2");

    const auto& steps = j["step_distances_sq"];
    crit.check(!steps.empty(), "step distances recorded");
    if (!steps.empty()) {
        Rational step0 = jrat(steps[0]);
        bool all = true;
        for (std::size_t n = 0; n < steps.size(); ++n) {
            all = all && apriori_bound_check(Rational(1, 4), step0, n, jrat(steps[n]));
        }
        crit.check(all, "a-priori bound with q^2 = 1/4 holds exactly at every step");
    }

    IterationConfig cfg;
    cfg.max_iter = 20;
    cfg.tol_sq = Rational(1);
    for (Space space : {Space::pow2(), Space::zeta()}) {
        auto res = picard_iterate(space, space.point(0), cfg);
        crit.check(res.verdict == Verdict::diverged,
                   space_name(space.tag()) + " iteration DIVERGED");
        crit.check(res.steps <= 20, space_name(space.tag()) + " within 20 steps");
    }
    REQUIRE(crit.finish());
}

TEST_CASE("criterion 7: property suites") {
    Criterion crit{7, "ring, metric, monotonicity and shift-invariance properties"};

    // Ring multiplicativity on 10^4 random elements.
    {
        std::mt19937_64 rng(424242);
        std::uniform_int_distribution<long long> coeff(-1000000, 1000000);
        std::size_t bad = 0;
        for (int i = 0; i < 10000; ++i) {
            RingElem a(Int(coeff(rng)), Int(coeff(rng)));
            RingElem b(Int(coeff(rng)), Int(coeff(rng)));
            if (sqnorm(a * b) != sqnorm(a) * sqnorm(b)) {
                ++bad;
            }
        }
        crit.check(bad == 0, "ring multiplicativity (10^4 random cases)");
    }

    // Metric axioms on both example spaces, exponents <= 12.
    {
        std::size_t bad = 0;
        auto triangle_ok = [](const Rational& a2, const Rational& b2, const Rational& c2) {
            if (a2 <= b2 + c2) {
                return true;
            }
            Rational diff = a2 - b2 - c2;
            return diff * diff <= Rational(4) * b2 * c2;
        };
        for (Space space : {Space::pow2(), Space::zeta()}) {
            for (std::int64_t m = 0; m <= 12; ++m) {
                for (std::int64_t n = 0; n <= 12; ++n) {
                    Rational mn = space.dist_sq(space.point(m), space.point(n)).value();
                    Rational nm = space.dist_sq(space.point(n), space.point(m)).value();
                    if (mn != nm || mn.is_zero() != (m == n)) {
                        ++bad;
                    }
                    for (std::int64_t p = 0; p <= 12; ++p) {
                        Rational mp = space.dist_sq(space.point(m), space.point(p)).value();
                        Rational np = space.dist_sq(space.point(n), space.point(p)).value();
                        if (!triangle_ok(mp, mn, np)) {
                            ++bad;
                        }
                    }
                }
            }
        }
        crit.check(bad == 0, "metric axioms (symmetry, identity, triangle) on both spaces");
    }

    // Max-monotonicity across C1 within C2 within C3 within C.
    {
        std::size_t bad = 0;
        for (Space space : {Space::pow2(), Space::zeta()}) {
            RelaxationSpec d = space.tag() == SpaceTag::pow2
                                   ? RelaxationSpec::make(Family::xy_a3, 3, 2)
                                   : RelaxationSpec::make(Family::yy, 2, 0);
            for (std::int64_t m = 0; m <= 10; ++m) {
                for (std::int64_t n = 0; n <= 10; ++n) {
                    PointRef x = space.point(m), y = space.point(n);
                    auto v1 = rhs_max_sq(space, make_c1(), x, y).value;
                    auto v2 = rhs_max_sq(space, make_c2(), x, y).value;
                    auto v3 = rhs_max_sq(space, make_c3(), x, y).value;
                    auto vx = rhs_max_sq(space, make_cx(d), x, y).value;
                    if (!(v1 <= v2 && v2 <= v3 && v3 <= vx)) {
                        ++bad;
                    }
                }
            }
        }
        crit.check(bad == 0, "max-monotonicity across C1, C2, C3, C");
    }

    // Shift-invariance of ratio suprema on shift-closed grids.
    {
        std::size_t bad = 0;
        for (Space space : {Space::pow2(), Space::zeta()}) {
            RelaxationSpec d = space.tag() == SpaceTag::pow2
                                   ? RelaxationSpec::make(Family::xy_a3, 3, 2)
                                   : RelaxationSpec::make(Family::xy_b2, 0, 2);
            ConditionTemplate cond = make_cx(d);
            std::vector<std::pair<PointRef, PointRef>> base, shifted;
            for (std::int64_t m = 0; m <= 10; ++m) {
                for (std::int64_t n = 0; n <= 10; ++n) {
                    base.emplace_back(space.point(m), space.point(n));
                    shifted.emplace_back(space.point(m + 1), space.point(n + 1));
                }
            }
            if (estimate_q(space, cond, base).sup_sq != estimate_q(space, cond, shifted).sup_sq) {
                ++bad;
            }
        }
        crit.check(bad == 0, "shift-invariance of ratio suprema");
    }
    REQUIRE(crit.finish());
}
