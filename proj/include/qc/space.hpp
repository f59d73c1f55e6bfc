#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qc/ring.hpp"

namespace qc {

enum class SpaceTag { pow2, zeta, demo };

inline std::string space_name(SpaceTag tag) {
    switch (tag) {
    case SpaceTag::pow2: return "pow2";
    case SpaceTag::zeta: return "zeta";
    case SpaceTag::demo: return "demo";
    }
    return "?";
}

/// Exact squared distance. Integer-valued on the two example spaces
/// ((2^m - 2^n)^2 and sqnorm(z^m - z^n)), rational on demo spaces.
class SquaredDistance {
    Rational v_;

public:
    SquaredDistance() : v_(0) {}
    explicit SquaredDistance(Rational v) : v_(std::move(v)) {
        if (v_.is_negative()) {
            throw std::domain_error("SquaredDistance: negative value");
        }
    }

    const Rational& value() const { return v_; }
    bool is_zero() const { return v_.is_zero(); }

    /// The underlying integer; only valid on pow2/zeta distances.
    Int int_value() const {
        if (!v_.is_integer()) {
            throw std::domain_error("SquaredDistance: not an integer");
        }
        return v_.num();
    }

    bool operator==(const SquaredDistance& o) const { return v_ == o.v_; }
    bool operator!=(const SquaredDistance& o) const { return v_ != o.v_; }
    bool operator<(const SquaredDistance& o) const { return v_ < o.v_; }
    bool operator<=(const SquaredDistance& o) const { return v_ <= o.v_; }
    bool operator>(const SquaredDistance& o) const { return v_ > o.v_; }
    bool operator>=(const SquaredDistance& o) const { return v_ >= o.v_; }
};

/// A point of one of the three space kinds. Points of the example spaces are
/// stored as exponents (the point is 2^n or z^n), never as expanded values,
/// so applying the map is O(1) and distances are computed on demand.
class PointRef {
    SpaceTag tag_;
    std::int64_t exp_;
    Rational value_;

    PointRef(SpaceTag tag, std::int64_t exp, Rational value)
        : tag_(tag), exp_(exp), value_(std::move(value)) {}

public:
    static PointRef pow2_point(std::int64_t exponent) {
        if (exponent < 0) {
            throw std::invalid_argument("PointRef: exponent must be >= 0");
        }
        return PointRef(SpaceTag::pow2, exponent, Rational(0));
    }
    static PointRef zeta_point(std::int64_t exponent) {
        if (exponent < 0) {
            throw std::invalid_argument("PointRef: exponent must be >= 0");
        }
        return PointRef(SpaceTag::zeta, exponent, Rational(0));
    }
    static PointRef demo_point(Rational value) {
        return PointRef(SpaceTag::demo, 0, std::move(value));
    }

    SpaceTag tag() const { return tag_; }

    std::int64_t exponent() const {
        if (tag_ == SpaceTag::demo) {
            throw std::domain_error("PointRef: demo points have no exponent");
        }
        return exp_;
    }

    const Rational& demo_value() const {
        if (tag_ != SpaceTag::demo) {
            throw std::domain_error("PointRef: not a demo point");
        }
        return value_;
    }

    bool operator==(const PointRef& o) const {
        if (tag_ != o.tag_) {
            return false;
        }
        return tag_ == SpaceTag::demo ? value_ == o.value_ : exp_ == o.exp_;
    }
    bool operator!=(const PointRef& o) const { return !(*this == o); }

    std::string str() const {
        switch (tag_) {
        case SpaceTag::pow2: return "2^" + std::to_string(exp_);
        case SpaceTag::zeta: return "z^" + std::to_string(exp_);
        case SpaceTag::demo: return value_.str();
        }
        return "?";
    }
};

enum class OrbitVerdict { contracting, divergent, inconclusive };

struct OrbitProbe {
    OrbitVerdict verdict = OrbitVerdict::inconclusive;
    /// Divergent: index of the last (largest) step distance. Contracting: 0.
    /// Inconclusive: first index where monotonicity breaks.
    std::size_t witness_index = 0;
    /// Largest consecutive squared-distance ratio seen over the window
    /// (0 when the orbit is eventually constant).
    Rational max_step_ratio_sq = Rational(0);
};

/// One of the three metric spaces together with its self-map.
///
/// pow2: X = {2^n : n in N}, d(x,y) = |x-y|, T(x) = 2x.
/// zeta: X = {z^n : n in N} with z = -1+i*sqrt(3), d(x,y) = |x-y|, T(x) = zx.
/// demo: exact rationals under an affine map x -> alpha*x + beta.
///
/// Both example spaces are discrete sets whose points escape to infinity, so
/// every Cauchy sequence is eventually constant and the spaces are complete;
/// that fact is a property of the construction, not something this class
/// recomputes. orbital_cauchy_probe gives the desk-scale orbit diagnostic.
class Space {
    SpaceTag tag_;
    Rational alpha_, beta_;

    Space(SpaceTag tag, Rational alpha, Rational beta)
        : tag_(tag), alpha_(std::move(alpha)), beta_(std::move(beta)) {}

public:
    static Space pow2() { return Space(SpaceTag::pow2, Rational(0), Rational(0)); }
    static Space zeta() { return Space(SpaceTag::zeta, Rational(0), Rational(0)); }
    static Space demo_affine(Rational alpha, Rational beta) {
        return Space(SpaceTag::demo, std::move(alpha), std::move(beta));
    }

    SpaceTag tag() const { return tag_; }
    const Rational& alpha() const { return alpha_; }
    const Rational& beta() const { return beta_; }

    /// A point of this space; exponent for pow2/zeta.
    PointRef point(std::int64_t exponent) const {
        switch (tag_) {
        case SpaceTag::pow2: return PointRef::pow2_point(exponent);
        case SpaceTag::zeta: return PointRef::zeta_point(exponent);
        default:
            throw std::domain_error("Space::point: demo points carry values, not exponents");
        }
    }

    /// T^times applied to p. Exponent shift on the example spaces, iterated
    /// affine evaluation on demo spaces.
    PointRef apply_map(const PointRef& p, std::int64_t times = 1) const {
        require_member(p);
        if (times < 0) {
            throw std::invalid_argument("apply_map: times must be >= 0");
        }
        switch (tag_) {
        case SpaceTag::pow2:
            return PointRef::pow2_point(p.exponent() + times);
        case SpaceTag::zeta:
            return PointRef::zeta_point(p.exponent() + times);
        case SpaceTag::demo: {
            Rational v = p.demo_value();
            for (std::int64_t i = 0; i < times; ++i) {
                v = alpha_ * v + beta_;
            }
            return PointRef::demo_point(v);
        }
        }
        throw std::logic_error("apply_map: unknown space");
    }

    /// Exact squared distance between two points of this space.
    SquaredDistance dist_sq(const PointRef& p, const PointRef& r) const {
        require_member(p);
        require_member(r);
        switch (tag_) {
        case SpaceTag::pow2: {
            Int d = qc::pow2(p.exponent()) - qc::pow2(r.exponent());
            return SquaredDistance(Rational(d * d));
        }
        case SpaceTag::zeta: {
            RingElem d = zeta_pow(p.exponent()) - zeta_pow(r.exponent());
            return SquaredDistance(Rational(sqnorm(d)));
        }
        case SpaceTag::demo: {
            Rational d = p.demo_value() - r.demo_value();
            return SquaredDistance(d * d);
        }
        }
        throw std::logic_error("dist_sq: unknown space");
    }

    /// [x0, T x0, ..., T^(length-1) x0].
    std::vector<PointRef> orbit(const PointRef& x0, std::size_t length) const {
        if (length < 1) {
            throw std::invalid_argument("orbit: length must be >= 1");
        }
        std::vector<PointRef> out;
        out.reserve(length);
        out.push_back(x0);
        for (std::size_t i = 1; i < length; ++i) {
            out.push_back(apply_map(out.back(), 1));
        }
        return out;
    }

    /// Desk-scale probe of the orbit's Cauchy behaviour over a finite window:
    /// DIVERGENT when consecutive step distances never decrease and start
    /// positive, CONTRACTING when every consecutive squared ratio stays
    /// below 1 (or the orbit hits a fixed point), INCONCLUSIVE otherwise.
    OrbitProbe orbital_cauchy_probe(const PointRef& x0, std::size_t length) const {
        if (length < 2) {
            throw std::invalid_argument("orbital_cauchy_probe: length must be >= 2");
        }
        auto points = orbit(x0, length);
        std::vector<Rational> steps;
        steps.reserve(points.size() - 1);
        for (std::size_t i = 0; i + 1 < points.size(); ++i) {
            steps.push_back(dist_sq(points[i], points[i + 1]).value());
        }

        OrbitProbe probe;
        bool non_decreasing = steps.front().is_positive();
        bool contracting = true;
        for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
            if (steps[i + 1] < steps[i]) {
                non_decreasing = false;
            }
            if (steps[i].is_zero()) {
                // Landed on a fixed point; the rest of the orbit is constant.
                continue;
            }
            Rational ratio = steps[i + 1] / steps[i];
            if (ratio > probe.max_step_ratio_sq) {
                probe.max_step_ratio_sq = ratio;
            }
            if (ratio >= Rational(1)) {
                contracting = false;
            }
        }

        if (non_decreasing) {
            probe.verdict = OrbitVerdict::divergent;
            probe.witness_index = steps.size() - 1;
        } else if (contracting) {
            probe.verdict = OrbitVerdict::contracting;
            probe.witness_index = 0;
        } else {
            probe.verdict = OrbitVerdict::inconclusive;
            for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
                if (steps[i + 1] >= steps[i]) {
                    probe.witness_index = i;
                    break;
                }
            }
        }
        return probe;
    }

private:
    void require_member(const PointRef& p) const {
        if (p.tag() != tag_) {
            throw std::invalid_argument("point belongs to space '" + space_name(p.tag()) +
                                        "', expected '" + space_name(tag_) + "'");
        }
    }
};

} // namespace qc
