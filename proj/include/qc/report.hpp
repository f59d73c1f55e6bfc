#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

#include <json.hpp>

#include "qc/lab.hpp"

namespace qc {

using ordered_json = nlohmann::ordered_json;

/// Exact rationals serialize as {num, den}. Values are emitted as JSON
/// integers while they fit in 64 bits and as decimal strings beyond that, so
/// bit-exactness survives serialization at any magnitude. Never floats.
inline ordered_json rational_json(const Rational& r) {
    ordered_json j;
    static const Int lo = Int(std::numeric_limits<std::int64_t>::min());
    static const Int hi = Int(std::numeric_limits<std::int64_t>::max());
    auto emit = [&](const Int& v) -> ordered_json {
        if (v >= lo && v <= hi) {
            return static_cast<std::int64_t>(v);
        }
        return v.str();
    };
    j["num"] = emit(r.num());
    j["den"] = emit(r.den());
    return j;
}

namespace detail {

inline ordered_json param_value(const std::string& s) {
    if (!s.empty() && (s.find_first_not_of("-0123456789") == std::string::npos)) {
        try {
            return static_cast<std::int64_t>(std::stoll(s));
        } catch (...) {
        }
    }
    return s;
}

} // namespace detail

inline ordered_json report_json(const VerificationReport& report) {
    const bool lemma = report.grid.min_bound;
    const char* first = lemma ? "u" : "m";
    const char* second = lemma ? "v" : "n";

    ordered_json j;
    j["subject"] = subject_name(report.subject);
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : report.params) {
        params[k] = detail::param_value(v);
    }
    j["params"] = params;
    j["status"] = status_name(report.status);

    if (report.subject == Subject::classify) {
        j["example"] = report.result;
        return j;
    }

    ordered_json certs = ordered_json::array();
    for (const CaseCertificate& c : report.certificates) {
        ordered_json jc;
        jc["case_id"] = c.case_id;
        jc["dominating_term"] = c.dominating_term;
        jc["q_sq"] = rational_json(c.q_sq);
        ordered_json checks = ordered_json::array();
        for (const BoundaryCheck& b : c.boundary_checks) {
            ordered_json jb;
            jb[first] = b.m;
            jb[second] = b.n;
            jb["lhs_sq"] = rational_json(b.lhs_sq);
            jb["rhs_sq"] = rational_json(b.rhs_sq);
            jb["pass"] = b.pass;
            checks.push_back(jb);
        }
        jc["boundary_checks"] = checks;
        jc["tail"] = tail_name(c.tail);
        jc["region"] = c.region;
        jc["verified"] = c.verified;
        certs.push_back(jc);
    }
    j["certificates"] = certs;

    ordered_json grid;
    grid["max_exp"] = report.grid.max_exp;
    grid["pairs"] = report.grid.pairs;
    if (lemma) {
        grid["min_sq"] = rational_json(report.grid.value);
    } else if (report.grid.infinite) {
        grid["sup_ratio_sq"] = "infinite";
    } else {
        grid["sup_ratio_sq"] = rational_json(report.grid.value);
    }
    ordered_json witness;
    witness[first] = report.grid.witness_m;
    witness[second] = report.grid.witness_n;
    grid["witness"] = witness;
    j["grid"] = grid;

    ordered_json fails = ordered_json::array();
    for (const FailureRecord& f : report.failures) {
        ordered_json jf;
        jf["where"] = f.where;
        jf[first] = f.m;
        jf[second] = f.n;
        jf["lhs_sq"] = rational_json(f.lhs_sq);
        jf["rhs_sq"] = rational_json(f.rhs_sq);
        fails.push_back(jf);
    }
    j["failures"] = fails;

    if (report.subject == Subject::theorem) {
        ordered_json specs = ordered_json::array();
        for (const SpecOutcome& s : report.specs) {
            ordered_json js;
            js["family"] = family_name(s.spec.family());
            js["a"] = s.spec.a();
            js["b"] = s.spec.b();
            js["example"] = example_name(s.example);
            js["status"] = status_name(s.status);
            js["sup_ratio_sq"] = rational_json(s.sup_sq);
            specs.push_back(js);
        }
        j["specs"] = specs;
    }
    if (report.subject == Subject::classify) {
        j["example"] = report.result;
    }
    return j;
}

inline void write_report_json(std::ostream& os, const VerificationReport& report) {
    os << report_json(report).dump(2) << "\n";
}

inline void write_report_text(std::ostream& os, const VerificationReport& report) {
    const bool lemma = report.grid.min_bound;
    os << subject_name(report.subject) << ": " << status_name(report.status) << "\n";
    os << "params:";
    for (const auto& [k, v] : report.params) {
        os << " " << k << "=" << v;
    }
    os << "\n";
    if (report.subject == Subject::classify) {
        os << "example: " << report.result << "\n";
        return;
    }
    os << "grid: max_exp=" << report.grid.max_exp << " pairs=" << report.grid.pairs;
    if (lemma) {
        os << " min_sq=" << report.grid.value.str() << " witness=(u=" << report.grid.witness_m
           << ",v=" << report.grid.witness_n << ")";
    } else if (report.grid.infinite) {
        os << " sup_ratio_sq=infinite witness=(m=" << report.grid.witness_m
           << ",n=" << report.grid.witness_n << ")";
    } else {
        os << " sup_ratio_sq=" << report.grid.value.str() << " witness=(m="
           << report.grid.witness_m << ",n=" << report.grid.witness_n << ")";
    }
    os << "\n";
    for (const CaseCertificate& c : report.certificates) {
        os << "certificate " << c.case_id << ": " << (c.verified ? "PASS" : "FAIL")
           << "  term=" << c.dominating_term;
        if (c.q_sq.is_positive()) {
            os << " q_sq=" << c.q_sq.str();
        }
        os << " region=[" << c.region << "] tail=" << tail_name(c.tail) << "\n";
        for (const BoundaryCheck& b : c.boundary_checks) {
            os << "  (" << (lemma ? "u=" : "m=") << b.m << "," << (lemma ? "v=" : "n=")
               << b.n << "): lhs_sq=" << b.lhs_sq.str() << " rhs_sq=" << b.rhs_sq.str()
               << " " << (b.pass ? "ok" : "VIOLATED") << "\n";
        }
    }
    for (const SpecOutcome& s : report.specs) {
        os << "spec " << s.spec.str() << ": " << example_name(s.example) << " "
           << status_name(s.status) << " sup_ratio_sq=" << s.sup_sq.str() << "\n";
    }
    if (report.failures.empty()) {
        os << "failures: none\n";
    } else {
        os << "failures: " << report.failures.size() << "\n";
        for (const FailureRecord& f : report.failures) {
            os << "  " << f.where << " (" << f.m << "," << f.n
               << "): lhs_sq=" << f.lhs_sq.str() << " rhs_sq=" << f.rhs_sq.str() << "\n";
        }
    }
}

inline void write_report_csv(std::ostream& os, const VerificationReport& report) {
    switch (report.subject) {
    case Subject::lemma1:
    case Subject::lemma2:
        os << "u,v,value_sq,bound_sq,pass\n";
        for (const PairRecord& r : report.rows) {
            os << r.m << "," << r.n << "," << r.lhs_sq.str() << "," << r.rhs_sq.str()
               << "," << (r.pass ? "true" : "false") << "\n";
        }
        return;
    case Subject::theorem:
        os << "family,a,b,example,status,sup_ratio_sq\n";
        for (const SpecOutcome& s : report.specs) {
            os << family_name(s.spec.family()) << "," << s.spec.a() << "," << s.spec.b()
               << "," << example_name(s.example) << "," << status_name(s.status) << ","
               << s.sup_sq.str() << "\n";
        }
        return;
    case Subject::classify:
        os << "family,a,b,example\n";
        os << report.params[0].second << "," << report.params[1].second << ","
           << report.params[2].second << "," << report.result << "\n";
        return;
    default:
        os << "m,n,lhs_sq,rhs_sq,pass\n";
        for (const PairRecord& r : report.rows) {
            os << r.m << "," << r.n << "," << r.lhs_sq.str() << "," << r.rhs_sq.str()
               << "," << (r.pass ? "true" : "false") << "\n";
        }
        return;
    }
}

// -- enumerate ---------------------------------------------------------------

inline void write_enumerate_text(std::ostream& os, const std::vector<RelaxationSpec>& specs,
                                 int a_max, int b_max) {
    os << "family members with a <= " << a_max << ", b <= " << b_max << ": "
       << specs.size() << "\n";
    for (const RelaxationSpec& s : specs) {
        os << family_name(s.family()) << " a=" << s.a() << " b=" << s.b() << "  "
           << s.term().str() << "\n";
    }
}

inline void write_enumerate_json(std::ostream& os, const std::vector<RelaxationSpec>& specs,
                                 int a_max, int b_max) {
    ordered_json j;
    j["command"] = "enumerate";
    j["a_max"] = a_max;
    j["b_max"] = b_max;
    j["count"] = specs.size();
    ordered_json arr = ordered_json::array();
    for (const RelaxationSpec& s : specs) {
        ordered_json js;
        js["family"] = family_name(s.family());
        js["a"] = s.a();
        js["b"] = s.b();
        js["term"] = s.term().str();
        arr.push_back(js);
    }
    j["specs"] = arr;
    os << j.dump(2) << "\n";
}

inline void write_enumerate_csv(std::ostream& os, const std::vector<RelaxationSpec>& specs) {
    os << "family,a,b,term\n";
    for (const RelaxationSpec& s : specs) {
        os << family_name(s.family()) << "," << s.a() << "," << s.b() << ","
           << s.term().str() << "\n";
    }
}

// -- iterate -----------------------------------------------------------------

inline void write_iterate_text(std::ostream& os, const FixedPointResult& res) {
    os << "verdict: " << verdict_name(res.verdict) << "\n";
    os << "final_point: " << res.final_point.str() << "\n";
    os << "steps: " << res.steps << "\n";
    os << "step_distances_sq:";
    for (const Rational& d : res.step_distances_sq) {
        os << " " << d.str();
    }
    os << "\n";
}

inline void write_iterate_json(std::ostream& os, const FixedPointResult& res,
                               const std::vector<std::pair<std::string, std::string>>& params) {
    ordered_json j;
    j["command"] = "iterate";
    ordered_json p = ordered_json::object();
    for (const auto& [k, v] : params) {
        p[k] = detail::param_value(v);
    }
    j["params"] = p;
    j["verdict"] = verdict_name(res.verdict);
    if (res.final_point.tag() == SpaceTag::demo) {
        j["final_point"] = rational_json(res.final_point.demo_value());
    } else {
        j["final_point"] = res.final_point.str();
    }
    j["steps"] = res.steps;
    ordered_json steps = ordered_json::array();
    for (const Rational& d : res.step_distances_sq) {
        steps.push_back(rational_json(d));
    }
    j["step_distances_sq"] = steps;
    os << j.dump(2) << "\n";
}

inline void write_iterate_csv(std::ostream& os, const FixedPointResult& res) {
    os << "step,dist_sq\n";
    for (std::size_t i = 0; i < res.step_distances_sq.size(); ++i) {
        os << (i + 1) << "," << res.step_distances_sq[i].str() << "\n";
    }
}

} // namespace qc
