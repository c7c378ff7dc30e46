#pragma once

#include <cmath>
#include <compare>
#include <limits>

#include "revhardy/errors.hpp"

namespace revhardy {

/// Non-negative extended real in [0, +inf].
///
/// Arithmetic follows the conventions used for weighted-norm ratios:
/// 1/inf = 0, 0*inf = 0, 0/0 = 0. Values are totally ordered with +inf
/// above every finite value.
class ExtReal {
public:
    constexpr ExtReal() : v_(0.0) {}
    constexpr ExtReal(double v) : v_(v) {
        if (!(v >= 0.0))  // also rejects NaN
            throw DomainError("ExtReal requires a non-negative value");
    }

    static constexpr ExtReal infinity() {
        return ExtReal(std::numeric_limits<double>::infinity());
    }

    constexpr double value() const { return v_; }
    constexpr bool is_infinite() const {
        return v_ == std::numeric_limits<double>::infinity();
    }
    constexpr bool is_zero() const { return v_ == 0.0; }

    friend constexpr auto operator<=>(ExtReal a, ExtReal b) {
        return a.v_ <=> b.v_;
    }
    friend constexpr bool operator==(ExtReal a, ExtReal b) = default;

private:
    double v_;
};

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Product with 0*inf = 0.
constexpr ExtReal ext_mul(ExtReal a, ExtReal b) {
    if (a.is_zero() || b.is_zero()) return ExtReal(0.0);
    return ExtReal(a.value() * b.value());
}

/// Quotient with 0/0 = 0, x/inf = 0 and x/0 = +inf for x > 0.
constexpr ExtReal ext_div(ExtReal a, ExtReal b) {
    if (a.is_zero()) return ExtReal(0.0);
    if (b.is_infinite()) return ExtReal(0.0);  // covers inf/inf via 1/inf = 0
    if (b.is_zero()) return ExtReal::infinity();
    return ExtReal(a.value() / b.value());
}

constexpr ExtReal ext_add(ExtReal a, ExtReal b) {
    return ExtReal(a.value() + b.value());
}

/// a^e for real e; 0^0 = 1, 0^neg = +inf, inf^neg = 0.
inline ExtReal ext_pow(ExtReal a, double e) {
    if (e == 0.0) return ExtReal(1.0);
    if (a.is_zero()) return e > 0.0 ? ExtReal(0.0) : ExtReal::infinity();
    if (a.is_infinite()) return e > 0.0 ? ExtReal::infinity() : ExtReal(0.0);
    return ExtReal(std::pow(a.value(), e));
}

/// An exponent p in (0, +inf] as used in L^p / ell^p norms.
class Exponent {
public:
    constexpr Exponent(ExtReal p) : p_(p) {
        if (p <= ExtReal(0.0))
            throw DomainError("Exponent requires p > 0");
    }
    constexpr Exponent(double p) : Exponent(ExtReal(p)) {}

    static constexpr Exponent infinity() { return Exponent(ExtReal::infinity()); }

    constexpr double value() const { return p_.value(); }
    constexpr bool is_infinite() const { return p_.is_infinite(); }

    /// 1/p with 1/inf = 0.
    constexpr double reciprocal() const {
        return is_infinite() ? 0.0 : 1.0 / p_.value();
    }

    friend constexpr auto operator<=>(Exponent a, Exponent b) {
        return a.p_ <=> b.p_;
    }
    friend constexpr bool operator==(Exponent a, Exponent b) = default;

private:
    ExtReal p_;
};

/// Conjugate exponent: p/(1-p) on (0,1), inf at 1, p/(p-1) on (1,inf), 1 at inf.
constexpr Exponent conjugate(Exponent p) {
    if (p.is_infinite()) return Exponent(1.0);
    double v = p.value();
    if (v < 1.0) return Exponent(v / (1.0 - v));
    if (v == 1.0) return Exponent::infinity();
    return Exponent(v / (v - 1.0));
}

/// rho with 1/rho = (1/p - 1/q)_+ ; +inf whenever q <= p.
constexpr Exponent holder_rho(Exponent p, Exponent q) {
    double d = p.reciprocal() - q.reciprocal();
    if (d <= 0.0) return Exponent::infinity();
    return Exponent(1.0 / d);
}

/// Certified bracket [lo, hi] around an exactly defined quantity.
struct Enclosure {
    ExtReal lo;
    ExtReal hi;

    Enclosure(ExtReal lo_, ExtReal hi_) : lo(lo_), hi(hi_) {
        if (lo > hi) throw DomainError("Enclosure requires lo <= hi");
    }
    explicit Enclosure(ExtReal v) : lo(v), hi(v) {}

    static Enclosure infinite() {
        return Enclosure(ExtReal::infinity(), ExtReal::infinity());
    }

    bool contains(ExtReal v) const { return lo <= v && v <= hi; }
    bool is_infinite() const { return lo.is_infinite(); }

    double width() const {
        if (hi.is_infinite()) return lo.is_infinite() ? 0.0 : inf;
        return hi.value() - lo.value();
    }

    /// Width relative to hi; 0 for the exact point [inf, inf].
    double relative_width() const {
        if (hi.is_infinite()) return lo.is_infinite() ? 0.0 : inf;
        if (hi.value() == 0.0) return 0.0;
        return width() / hi.value();
    }

    friend Enclosure operator+(const Enclosure& a, const Enclosure& b) {
        return Enclosure(ext_add(a.lo, b.lo), ext_add(a.hi, b.hi));
    }

    friend bool operator==(const Enclosure& a, const Enclosure& b) = default;
};

/// Monotone image [lo^e, hi^e] for e > 0.
inline Enclosure pow_enclosure(const Enclosure& x, double e) {
    if (!(e > 0.0)) throw DomainError("pow_enclosure requires e > 0");
    return Enclosure(ext_pow(x.lo, e), ext_pow(x.hi, e));
}

}  // namespace revhardy
