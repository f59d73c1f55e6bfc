#pragma once

#include <cstddef>
#include <thread>
#include <utility>
#include <vector>

#include "qc/condition.hpp"

namespace qc {

struct IterationConfig {
    std::size_t max_iter = 100;
    Rational tol_sq = Rational(1, 1000000);
    /// Growth factor on consecutive squared step distances that counts as
    /// divergence when sustained over a full window.
    Rational divergence_factor = Rational(2);

    void validate() const {
        if (max_iter < 1) {
            throw validation_error("IterationConfig: max_iter must be >= 1");
        }
        if (!tol_sq.is_positive()) {
            throw validation_error("IterationConfig: tol_sq must be > 0");
        }
        if (divergence_factor <= Rational(1)) {
            throw validation_error("IterationConfig: divergence_factor must be > 1");
        }
    }
};

enum class Verdict { converged, diverged, exhausted };

inline std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::converged: return "CONVERGED";
    case Verdict::diverged: return "DIVERGED";
    case Verdict::exhausted: return "EXHAUSTED";
    }
    return "?";
}

struct FixedPointResult {
    Verdict verdict = Verdict::exhausted;
    PointRef final_point;
    std::size_t steps = 0;
    std::vector<Rational> step_distances_sq;
};

namespace detail {
// Number of consecutive growth steps that triggers the DIVERGED verdict.
inline constexpr std::size_t divergence_window = 5;
} // namespace detail

/// Picard iteration x <- Tx.
///
/// CONVERGED once dist_sq(x, Tx) drops below tol_sq; the comparison is
/// strict, so a step distance sitting exactly on the tolerance does not stop
/// the iteration (on the first example space the very first step distance is
/// exactly 1, and tol_sq = 1 must not report convergence). The returned
/// final point is the most advanced iterate whose own residual meets the
/// tolerance, so dist_sq(final, T final) <= tol_sq holds on every map.
/// DIVERGED once five consecutive squared step distances each grow by at
/// least divergence_factor while staying positive; this triggers on both
/// example spaces without using any privileged knowledge of |Tx| = 2|x|.
/// EXHAUSTED otherwise after max_iter steps.
inline FixedPointResult picard_iterate(const Space& space, const PointRef& x0,
                                       const IterationConfig& cfg) {
    cfg.validate();
    FixedPointResult res{Verdict::exhausted, x0, 0, {}};
    PointRef x = x0;
    for (std::size_t step = 1; step <= cfg.max_iter; ++step) {
        PointRef x_next = space.apply_map(x, 1);
        Rational d_sq = space.dist_sq(x, x_next).value();
        res.step_distances_sq.push_back(d_sq);
        res.steps = step;
        res.final_point = x_next;

        if (d_sq < cfg.tol_sq) {
            Rational next_residual =
                space.dist_sq(x_next, space.apply_map(x_next, 1)).value();
            res.final_point = next_residual <= cfg.tol_sq ? x_next : x;
            res.verdict = Verdict::converged;
            return res;
        }

        const auto& s = res.step_distances_sq;
        if (s.size() > detail::divergence_window) {
            bool growing = true;
            for (std::size_t i = s.size() - detail::divergence_window - 1;
                 i + 1 < s.size(); ++i) {
                if (!s[i].is_positive() || s[i + 1] < cfg.divergence_factor * s[i]) {
                    growing = false;
                    break;
                }
            }
            if (growing) {
                res.verdict = Verdict::diverged;
                return res;
            }
        }
        x = x_next;
    }
    res.verdict = Verdict::exhausted;
    res.final_point = x;
    return res;
}

/// The standard a-priori estimate d(x_n, x_{n+1}) <= q^n * d(x_0, x_1),
/// checked exactly on squares: observed_sq <= q_sq^n * step0_sq.
inline bool apriori_bound_check(const Rational& q_sq, const Rational& step0_sq,
                                std::size_t n, const Rational& observed_sq) {
    if (!q_sq.is_positive() || q_sq >= Rational(1)) {
        throw validation_error("apriori_bound_check: q_sq must lie in (0, 1)");
    }
    return observed_sq <= rat_pow(q_sq, n) * step0_sq;
}

/// Exact supremum of dist_sq(Tx,Ty) / max(terms) over a pair list, as a
/// rational of squared distances.
struct QEstimate {
    /// Some pair had a positive numerator over a zero max; sup_sq is
    /// meaningless in that case and the witness points at the offender.
    bool infinite = false;
    Rational sup_sq = Rational(0);
    std::size_t witness_index = 0;
};

namespace detail {

/// Runs fn(i) for i in [0, n) split across up to `jobs` threads. Results
/// must be written to per-index slots so the final reduction is
/// order-independent.
template <typename Fn>
void parallel_for_index(std::size_t n, unsigned jobs, Fn&& fn) {
    if (n == 0) {
        return;
    }
    if (jobs <= 1 || n < 2 * jobs) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> workers;
    std::size_t chunk = (n + jobs - 1) / jobs;
    for (unsigned w = 0; w < jobs; ++w) {
        std::size_t lo = static_cast<std::size_t>(w) * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) {
            break;
        }
        workers.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) {
                fn(i);
            }
        });
    }
    for (auto& t : workers) {
        t.join();
    }
}

} // namespace detail

/// Pairs with L = R = 0 contribute ratio 0. R = 0 with L > 0 is reported as
/// the distinguished INFINITE outcome, never an exception. Ties between
/// equal ratios resolve to the smallest pair index, so the witness is
/// deterministic regardless of the number of jobs.
inline QEstimate estimate_q(const Space& space, const ConditionTemplate& cond,
                            const std::vector<std::pair<PointRef, PointRef>>& pairs,
                            unsigned jobs = 1) {
    if (pairs.empty()) {
        throw validation_error("estimate_q: pair list must be non-empty");
    }
    struct Eval {
        Rational lhs;
        Rational rhs;
    };
    std::vector<Eval> evals(pairs.size(), Eval{Rational(0), Rational(0)});
    detail::parallel_for_index(pairs.size(), jobs, [&](std::size_t i) {
        const auto& [x, y] = pairs[i];
        Rational lhs = space.dist_sq(space.apply_map(x, 1), space.apply_map(y, 1)).value();
        Rational rhs = rhs_max_sq(space, cond, x, y).value.value();
        evals[i] = Eval{std::move(lhs), std::move(rhs)};
    });

    QEstimate est;
    bool have = false;
    for (std::size_t i = 0; i < evals.size(); ++i) {
        const Eval& e = evals[i];
        if (e.rhs.is_zero()) {
            if (e.lhs.is_positive()) {
                est.infinite = true;
                est.witness_index = i;
                return est;
            }
            if (!have) {
                est.witness_index = i;
                have = true;
            }
            continue;
        }
        Rational ratio = e.lhs / e.rhs;
        if (!have || ratio > est.sup_sq) {
            est.sup_sq = ratio;
            est.witness_index = i;
            have = true;
        }
    }
    return est;
}

} // namespace qc
