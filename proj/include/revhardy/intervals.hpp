#pragma once

#include <cmath>
#include <string>

#include "revhardy/errors.hpp"
#include "revhardy/extended_real.hpp"

namespace revhardy {

/// Open interval (a, b), the common domain of weights, measures and test
/// functions. Either endpoint may be infinite.
struct Interval {
    double a;
    double b;

    Interval(double a_, double b_) : a(a_), b(b_) {
        if (std::isnan(a) || std::isnan(b) || !(a < b))
            throw DomainError("Interval requires a < b");
    }

    bool contains(double x) const { return a < x && x < b; }

    Interval reflected() const { return Interval(-b, -a); }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Subinterval with explicit endpoint closure, e.g. (l, r] or [l, r].
/// Degenerate forms are allowed: [x, x] is a single point, (x, x] is empty.
struct EndpointedInterval {
    double left;
    double right;
    bool left_closed;
    bool right_closed;

    EndpointedInterval(double l, double r, bool lc, bool rc)
        : left(l), right(r), left_closed(lc), right_closed(rc) {
        if (std::isnan(l) || std::isnan(r) || !(l <= r))
            throw DomainError("EndpointedInterval requires left <= right");
        if (std::isinf(l) && lc) left_closed = false;
        if (std::isinf(r) && rc) right_closed = false;
    }

    static EndpointedInterval open(double l, double r) {
        return EndpointedInterval(l, r, false, false);
    }
    static EndpointedInterval closed(double l, double r) {
        return EndpointedInterval(l, r, true, true);
    }
    /// (l, r]
    static EndpointedInterval left_open(double l, double r) {
        return EndpointedInterval(l, r, false, true);
    }
    /// [l, r)
    static EndpointedInterval right_open(double l, double r) {
        return EndpointedInterval(l, r, true, false);
    }
    static EndpointedInterval point(double x) { return closed(x, x); }

    bool empty() const { return left == right && !(left_closed && right_closed); }

    bool contains(double x) const {
        if (x < left || x > right) return false;
        if (x == left && !left_closed) return false;
        if (x == right && !right_closed) return false;
        return true;
    }

    /// Contained in the open interval (d.a, d.b)?
    bool within(const Interval& d) const {
        if (left < d.a || (left == d.a && left_closed)) return false;
        if (right > d.b || (right == d.b && right_closed)) return false;
        return true;
    }

    EndpointedInterval reflected() const {
        return EndpointedInterval(-right, -left, right_closed, left_closed);
    }

    friend bool operator==(const EndpointedInterval&, const EndpointedInterval&) = default;
};

}  // namespace revhardy
