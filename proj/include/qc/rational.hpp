#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "qc/integers.hpp"

namespace qc {

/// Exact fraction of arbitrary-precision integers.
///
/// Invariants: denominator > 0, gcd(|num|, den) = 1, zero is 0/1. Every
/// contraction factor in the lab is carried as its square, which is always
/// rational (e.g. (5/(2*sqrt(7)))^2 = 25/28), so no radical arithmetic is
/// ever needed.
class Rational {
    Int num_;
    Int den_;

    void reduce() {
        if (den_ == 0) {
            throw std::domain_error("Rational: zero denominator");
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        Int g = boost::multiprecision::gcd(num_ < 0 ? Int(-num_) : num_, den_);
        num_ /= g;
        den_ /= g;
    }

public:
    Rational() : num_(0), den_(1) {}
    Rational(Int n) : num_(std::move(n)), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(int n) : num_(n), den_(1) {}
    Rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_positive() const { return num_ > 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return Rational(-num_, den_); }

    Rational operator+(const Rational& r) const {
        return Rational(num_ * r.den_ + r.num_ * den_, den_ * r.den_);
    }
    Rational operator-(const Rational& r) const {
        return Rational(num_ * r.den_ - r.num_ * den_, den_ * r.den_);
    }
    Rational operator*(const Rational& r) const {
        return Rational(num_ * r.num_, den_ * r.den_);
    }
    Rational operator/(const Rational& r) const {
        if (r.num_ == 0) {
            throw std::domain_error("Rational: division by zero");
        }
        return Rational(num_ * r.den_, den_ * r.num_);
    }

    Rational& operator+=(const Rational& r) { return *this = *this + r; }
    Rational& operator-=(const Rational& r) { return *this = *this - r; }
    Rational& operator*=(const Rational& r) { return *this = *this * r; }
    Rational& operator/=(const Rational& r) { return *this = *this / r; }

    bool operator==(const Rational& r) const {
        return num_ == r.num_ && den_ == r.den_;
    }
    bool operator!=(const Rational& r) const { return !(*this == r); }

    // Cross-multiplication is exact since both denominators are positive.
    bool operator<(const Rational& r) const { return num_ * r.den_ < r.num_ * den_; }
    bool operator<=(const Rational& r) const { return num_ * r.den_ <= r.num_ * den_; }
    bool operator>(const Rational& r) const { return r < *this; }
    bool operator>=(const Rational& r) const { return r <= *this; }

    /// "P/Q", or just "P" when the value is an integer.
    std::string str() const {
        if (den_ == 1) {
            return num_.str();
        }
        return num_.str() + "/" + den_.str();
    }

    /// Parses "P", "-P" or "P/Q" with decimal integers.
    static Rational parse(const std::string& text) {
        auto slash = text.find('/');
        try {
            if (slash == std::string::npos) {
                return Rational(Int(text));
            }
            return Rational(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
        } catch (const std::runtime_error&) {
            throw std::invalid_argument("Rational: cannot parse '" + text + "'");
        }
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }
};

inline Rational abs(const Rational& r) { return r.is_negative() ? -r : r; }

inline Rational rat_pow(const Rational& base, std::uint64_t e) {
    Rational result(1);
    Rational b = base;
    while (e > 0) {
        if (e & 1u) {
            result *= b;
        }
        b *= b;
        e >>= 1u;
    }
    return result;
}

} // namespace qc
