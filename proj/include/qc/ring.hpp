#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "qc/rational.hpp"

namespace qc {

/// Element a + b*i*sqrt(3) of the ring Z[i*sqrt(3)].
///
/// The representation is unique, so structural equality is ring equality and
/// no normalization is needed. The squared modulus a^2 + 3b^2 is a plain
/// integer, which is what makes distance comparisons in the second example
/// space exact.
class RingElem {
    Int re_; // coefficient of 1
    Int im_; // coefficient of i*sqrt(3)

public:
    RingElem() : re_(0), im_(0) {}
    RingElem(Int re, Int im) : re_(std::move(re)), im_(std::move(im)) {}

    const Int& re() const { return re_; }
    const Int& im() const { return im_; }

    static RingElem zero() { return RingElem(0, 0); }
    static RingElem one() { return RingElem(1, 0); }

    /// z = -1 + i*sqrt(3). Note z^3 = 8, so every power is a shifted copy of
    /// 1, z or z^2.
    static RingElem zeta() { return RingElem(-1, 1); }

    bool is_zero() const { return re_ == 0 && im_ == 0; }

    RingElem operator+(const RingElem& o) const {
        return RingElem(re_ + o.re_, im_ + o.im_);
    }
    RingElem operator-(const RingElem& o) const {
        return RingElem(re_ - o.re_, im_ - o.im_);
    }
    RingElem operator-() const { return RingElem(-re_, -im_); }

    // (a1 + b1*w)(a2 + b2*w) with w^2 = -3.
    RingElem operator*(const RingElem& o) const {
        return RingElem(re_ * o.re_ - 3 * im_ * o.im_,
                        re_ * o.im_ + im_ * o.re_);
    }

    bool operator==(const RingElem& o) const {
        return re_ == o.re_ && im_ == o.im_;
    }
    bool operator!=(const RingElem& o) const { return !(*this == o); }

    std::string str() const { return "(" + re_.str() + ", " + im_.str() + ")"; }
};

/// |e|^2 = a^2 + 3*b^2, the exact squared complex modulus.
inline Int sqnorm(const RingElem& e) {
    return e.re() * e.re() + 3 * e.im() * e.im();
}

/// z^n by repeated ring multiplication (square-and-multiply); z^0 = 1.
inline RingElem zeta_pow(std::int64_t n) {
    if (n < 0) {
        throw std::invalid_argument("zeta_pow: negative exponent");
    }
    RingElem result = RingElem::one();
    RingElem base = RingElem::zeta();
    auto e = static_cast<std::uint64_t>(n);
    while (e > 0) {
        if (e & 1u) {
            result = result * base;
        }
        base = base * base;
        e >>= 1u;
    }
    return result;
}

/// Exact truth of lhs <= q * rhs for non-negative quantities carried as
/// squares: lhs_sq <= q_sq * rhs_sq  <=>  lhs_sq * q_sq.den <= q_sq.num * rhs_sq.
/// Squaring is monotone on non-negative reals, so this decides every
/// d(Tx,Ty) <= q * D comparison in the lab without radicals.
inline bool leq_q_scaled(const Int& lhs_sq, const Rational& q_sq, const Int& rhs_sq) {
    if (!q_sq.is_positive()) {
        throw std::invalid_argument("leq_q_scaled: q_sq must be positive");
    }
    return lhs_sq * q_sq.den() <= q_sq.num() * rhs_sq;
}

} // namespace qc
