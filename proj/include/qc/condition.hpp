#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "qc/space.hpp"

namespace qc {

/// Raised when a condition, term or relaxation spec violates one of its
/// structural constraints. The CLI maps these to usage-error exits.
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Var { x, y };

/// One side of a distance term: T^power applied to one of the two bound
/// variables.
struct TermAtom {
    Var var = Var::x;
    int power = 0;

    bool operator==(const TermAtom& o) const {
        return var == o.var && power == o.power;
    }
    bool operator<(const TermAtom& o) const {
        return std::tie(var, power) < std::tie(o.var, o.power);
    }

    /// "x", "Tx", "T^2 x", ...
    std::string str() const {
        std::string v = var == Var::x ? "x" : "y";
        if (power == 0) {
            return v;
        }
        if (power == 1) {
            return "T" + v;
        }
        return "T^" + std::to_string(power) + " " + v;
    }
};

/// A distance term d(T^a u, T^b v) over the variables {x, y}, stored with
/// its two atoms in normalized order (x before y, then by power). The
/// distance is symmetric, so normalization loses nothing, and a term with
/// both atoms equal is rejected since its distance is identically zero.
class TermSpec {
    TermAtom lo_, hi_;

public:
    TermSpec(Var a_var, int a_pow, Var b_var, int b_pow) {
        if (a_pow < 0 || b_pow < 0) {
            throw validation_error("TermSpec: powers must be >= 0");
        }
        TermAtom a{a_var, a_pow};
        TermAtom b{b_var, b_pow};
        if (a == b) {
            throw validation_error("TermSpec: identical sides, distance is identically zero");
        }
        if (b < a) {
            std::swap(a, b);
        }
        lo_ = a;
        hi_ = b;
    }

    const TermAtom& lo() const { return lo_; }
    const TermAtom& hi() const { return hi_; }

    bool operator==(const TermSpec& o) const { return lo_ == o.lo_ && hi_ == o.hi_; }
    bool operator!=(const TermSpec& o) const { return !(*this == o); }
    bool operator<(const TermSpec& o) const {
        return std::tie(lo_, hi_) < std::tie(o.lo_, o.hi_);
    }

    /// "d(x, Ty)", "d(T^2 x, Ty)", ...
    std::string str() const { return "d(" + lo_.str() + ", " + hi_.str() + ")"; }
};

/// The left-hand side d(Tx, Ty) of every condition; it may never appear in a
/// condition's term set.
inline TermSpec lhs_term() { return TermSpec(Var::x, 1, Var::y, 1); }

/// A finite set of distance terms, the right-hand side of a max-type
/// condition. Terms are kept sorted and unique.
class ConditionTemplate {
    std::vector<TermSpec> terms_;

public:
    ConditionTemplate() = default;
    explicit ConditionTemplate(std::vector<TermSpec> terms) : terms_(std::move(terms)) {
        std::sort(terms_.begin(), terms_.end());
        terms_.erase(std::unique(terms_.begin(), terms_.end()), terms_.end());
    }

    const std::vector<TermSpec>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool contains(const TermSpec& t) const {
        return std::binary_search(terms_.begin(), terms_.end(), t);
    }

    /// Set union with one extra term; duplicates are absorbed silently.
    ConditionTemplate with(const TermSpec& t) const {
        std::vector<TermSpec> out = terms_;
        out.push_back(t);
        return ConditionTemplate(std::move(out));
    }
};

/// (C1): the single term d(x, y).
inline ConditionTemplate make_c1() {
    return ConditionTemplate({TermSpec(Var::x, 0, Var::y, 0)});
}

/// (C2): the five quasi-contraction distances.
inline ConditionTemplate make_c2() {
    return ConditionTemplate({
        TermSpec(Var::x, 0, Var::y, 0), // d(x,y)
        TermSpec(Var::x, 1, Var::x, 0), // d(Tx,x)
        TermSpec(Var::x, 1, Var::y, 0), // d(Tx,y)
        TermSpec(Var::y, 1, Var::x, 0), // d(Ty,x)
        TermSpec(Var::y, 1, Var::y, 0), // d(Ty,y)
    });
}

/// (C3): (C2) plus the four d(T^2 x, .) distances.
inline ConditionTemplate make_c3() {
    ConditionTemplate c2 = make_c2();
    return c2.with(TermSpec(Var::x, 2, Var::x, 0))  // d(T^2x,x)
        .with(TermSpec(Var::x, 2, Var::y, 0))       // d(T^2x,y)
        .with(TermSpec(Var::x, 2, Var::x, 1))       // d(T^2x,Tx)
        .with(TermSpec(Var::x, 2, Var::y, 1));      // d(T^2x,Ty)
}

/// The four parametric shapes of the candidate extra distance D.
enum class Family { xy_a3, xy_b2, xx, yy };

inline std::string family_name(Family f) {
    switch (f) {
    case Family::xy_a3: return "xy-a3";
    case Family::xy_b2: return "xy-b2";
    case Family::xx: return "xx";
    case Family::yy: return "yy";
    }
    return "?";
}

inline std::optional<Family> family_from_name(const std::string& name) {
    if (name == "xy-a3") return Family::xy_a3;
    if (name == "xy-b2") return Family::xy_b2;
    if (name == "xx") return Family::xx;
    if (name == "yy") return Family::yy;
    return std::nullopt;
}

/// One member of the relaxation family:
///   xy-a3: d(T^a x, T^b y), a >= 3, b >= 0
///   xy-b2: d(T^a x, T^b y), a >= 0, b >= 2
///   xx:    d(T^a x, T^b x), a >= 3, b >= 0, a != b
///   yy:    d(T^a y, T^b y), a >= 2, b >= 0, a != b
class RelaxationSpec {
    Family family_;
    int a_, b_;

    RelaxationSpec(Family f, int a, int b) : family_(f), a_(a), b_(b) {}

public:
    static RelaxationSpec make(Family family, int a, int b) {
        if (a < 0 || b < 0) {
            throw validation_error("RelaxationSpec: a and b must be >= 0");
        }
        switch (family) {
        case Family::xy_a3:
            if (a < 3) throw validation_error("RelaxationSpec: xy-a3 requires a >= 3");
            break;
        case Family::xy_b2:
            if (b < 2) throw validation_error("RelaxationSpec: xy-b2 requires b >= 2");
            break;
        case Family::xx:
            if (a < 3) throw validation_error("RelaxationSpec: xx requires a >= 3");
            if (a == b) throw validation_error("RelaxationSpec: xx requires a != b");
            break;
        case Family::yy:
            if (a < 2) throw validation_error("RelaxationSpec: yy requires a >= 2");
            if (a == b) throw validation_error("RelaxationSpec: yy requires a != b");
            break;
        }
        return RelaxationSpec(family, a, b);
    }

    Family family() const { return family_; }
    int a() const { return a_; }
    int b() const { return b_; }

    TermSpec term() const {
        switch (family_) {
        case Family::xy_a3:
        case Family::xy_b2:
            return TermSpec(Var::x, a_, Var::y, b_);
        case Family::xx:
            return TermSpec(Var::x, a_, Var::x, b_);
        case Family::yy:
            return TermSpec(Var::y, a_, Var::y, b_);
        }
        throw std::logic_error("RelaxationSpec: unknown family");
    }

    /// True for D = d(T^(k+1) x, T^k y) with k >= 2, the shape the first
    /// example space handles. Within the xy families a = b + 1 forces b >= 2.
    bool is_claim1_shape() const {
        return (family_ == Family::xy_a3 || family_ == Family::xy_b2) && a_ == b_ + 1;
    }

    bool operator==(const RelaxationSpec& o) const {
        return family_ == o.family_ && a_ == o.a_ && b_ == o.b_;
    }

    std::string str() const {
        return family_name(family_) + "(a=" + std::to_string(a_) +
               ",b=" + std::to_string(b_) + ")";
    }
};

/// (C): the nine (C3) terms plus the extra distance D.
inline ConditionTemplate make_cx(const RelaxationSpec& d) {
    return make_c3().with(d.term());
}

/// A complete contractive condition: squared factor plus term set.
class Condition {
    Rational q_sq_;
    ConditionTemplate tmpl_;

public:
    Condition(Rational q_sq, ConditionTemplate tmpl)
        : q_sq_(std::move(q_sq)), tmpl_(std::move(tmpl)) {
        if (!q_sq_.is_positive() || q_sq_ >= Rational(1)) {
            throw validation_error("Condition: q_sq must lie in (0, 1)");
        }
        if (tmpl_.size() == 0) {
            throw validation_error("Condition: term set must be non-empty");
        }
        if (tmpl_.contains(lhs_term())) {
            throw validation_error("Condition: d(Tx, Ty) may not appear on the right-hand side");
        }
    }

    const Rational& q_sq() const { return q_sq_; }
    const ConditionTemplate& terms() const { return tmpl_; }
};

/// All valid specs with a <= a_max, b <= b_max in (family, a, b) order.
inline std::vector<RelaxationSpec> enumerate_family(int a_max, int b_max) {
    if (a_max < 0 || b_max < 0) {
        throw validation_error("enumerate_family: caps must be >= 0");
    }
    std::vector<RelaxationSpec> out;
    for (Family f : {Family::xy_a3, Family::xy_b2, Family::xx, Family::yy}) {
        for (int a = 0; a <= a_max; ++a) {
            for (int b = 0; b <= b_max; ++b) {
                switch (f) {
                case Family::xy_a3:
                    if (a < 3) continue;
                    break;
                case Family::xy_b2:
                    if (b < 2) continue;
                    break;
                case Family::xx:
                    if (a < 3 || a == b) continue;
                    break;
                case Family::yy:
                    if (a < 2 || a == b) continue;
                    break;
                }
                out.push_back(RelaxationSpec::make(f, a, b));
            }
        }
    }
    return out;
}

/// Value of one term at (x, y): d(T^a u, T^b v) with the atoms bound.
inline SquaredDistance eval_term(const Space& space, const TermSpec& t,
                                 const PointRef& x, const PointRef& y) {
    auto bind = [&](const TermAtom& atom) {
        const PointRef& base = atom.var == Var::x ? x : y;
        return space.apply_map(base, atom.power);
    };
    return space.dist_sq(bind(t.lo()), bind(t.hi()));
}

struct MaxTerm {
    SquaredDistance value;
    TermSpec term;
};

/// Maximum of the term set at (x, y); squared values compare identically to
/// the distances themselves. Ties resolve to the earliest term in normalized
/// order, so the argmax is deterministic.
inline MaxTerm rhs_max_sq(const Space& space, const ConditionTemplate& cond,
                          const PointRef& x, const PointRef& y) {
    if (cond.size() == 0) {
        throw validation_error("rhs_max_sq: empty term set");
    }
    MaxTerm best{eval_term(space, cond.terms().front(), x, y), cond.terms().front()};
    for (std::size_t i = 1; i < cond.terms().size(); ++i) {
        SquaredDistance v = eval_term(space, cond.terms()[i], x, y);
        if (v > best.value) {
            best = MaxTerm{v, cond.terms()[i]};
        }
    }
    return best;
}

struct PairCheck {
    bool holds = false;
    Rational lhs_sq;
    Rational rhs_sq;
    TermSpec max_term;
};

/// Does d(Tx,Ty) <= q * max(terms) hold at (x, y)? Exact; L = R = 0 (both
/// orbit segments coincide) counts as a pass.
inline PairCheck check_pair(const Space& space, const ConditionTemplate& cond,
                            const Rational& q_sq, const PointRef& x, const PointRef& y) {
    if (!q_sq.is_positive() || q_sq >= Rational(1)) {
        throw validation_error("check_pair: q_sq must lie in (0, 1)");
    }
    SquaredDistance lhs = space.dist_sq(space.apply_map(x, 1), space.apply_map(y, 1));
    MaxTerm rhs = rhs_max_sq(space, cond, x, y);
    bool holds = lhs.value() <= q_sq * rhs.value.value();
    return PairCheck{holds, lhs.value(), rhs.value.value(), rhs.term};
}

} // namespace qc
