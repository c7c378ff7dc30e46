#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "revhardy/errors.hpp"
#include "revhardy/intervals.hpp"

namespace revhardy {

/// Non-negative piecewise-constant function on an open interval (a, b).
///
/// Pieces are left-open/right-closed: by default the value at an interior
/// breakpoint is the value of the piece ending there. Breakpoint values are
/// stored explicitly so that reflection (which turns (s,t] pieces into
/// [-t,-s) pieces) stays exact; they only matter where an atom of a measure
/// sits on a breakpoint.
class StepFunction {
public:
    StepFunction(Interval domain, std::vector<double> breaks,
                 std::vector<double> values)
        : domain_(domain), breaks_(std::move(breaks)), values_(std::move(values)) {
        if (breaks_.size() < 2 || values_.size() != breaks_.size() - 1)
            throw DomainError("StepFunction: need n+1 breaks for n values");
        if (breaks_.front() != domain_.a || breaks_.back() != domain_.b)
            throw DomainError("StepFunction: breaks must span the domain");
        for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
            if (!(breaks_[i] < breaks_[i + 1]))
                throw DomainError("StepFunction: breaks must strictly increase");
        for (double v : values_)
            if (!(v >= 0.0)) throw DomainError("StepFunction: values must be >= 0");
        point_values_.assign(values_.begin(), values_.end() - 1);
    }

    static StepFunction constant(Interval domain, double v) {
        return StepFunction(domain, {domain.a, domain.b}, {v});
    }

    /// level * indicator of e, honouring the closure flags of e.
    static StepFunction indicator(Interval domain, const EndpointedInterval& e,
                                  double level = 1.0) {
        if (!e.within(domain) && !(e.left >= domain.a && e.right <= domain.b))
            throw DomainError("indicator: interval outside the domain");
        std::vector<double> breaks{domain.a};
        std::vector<double> values;
        if (e.left > domain.a) {
            breaks.push_back(e.left);
            values.push_back(0.0);
        }
        if (e.right > e.left) {
            breaks.push_back(e.right < domain.b ? e.right : domain.b);
            values.push_back(level);
        }
        if (e.right < domain.b) {
            breaks.push_back(domain.b);
            values.push_back(0.0);
        }
        StepFunction f(domain, std::move(breaks), std::move(values));
        if (domain.contains(e.left))
            f.set_point_value(e.left, e.left_closed ? level : 0.0);
        if (domain.contains(e.right) && e.right > e.left)
            f.set_point_value(e.right, e.right_closed ? level : 0.0);
        return f;
    }

    const Interval& domain() const { return domain_; }
    const std::vector<double>& breaks() const { return breaks_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t pieces() const { return values_.size(); }

    /// Value on the open piece (breaks[i], breaks[i+1]).
    double piece_value(std::size_t i) const { return values_[i]; }

    double value(double x) const {
        if (!domain_.contains(x))
            throw DomainError("StepFunction::value: point outside the domain");
        // idx of the first break strictly greater than x
        auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - breaks_.begin());
        // point_values_[k-1] belongs to the interior breakpoint breaks_[k]
        if (i >= 2 && i - 2 < point_values_.size() && breaks_[i - 1] == x)
            return point_values_[i - 2];
        return values_[i - 1];
    }

    /// Value on the open piece immediately to the right of x (x in [a, b)).
    double value_right_of(double x) const {
        if (!(x >= domain_.a && x < domain_.b))
            throw DomainError("StepFunction::value_right_of: point outside [a, b)");
        auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
        return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
    }

    /// Value on the open piece immediately to the left of x (x in (a, b]).
    double value_left_of(double x) const {
        if (!(x > domain_.a && x <= domain_.b))
            throw DomainError("StepFunction::value_left_of: point outside (a, b]");
        auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
        return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
    }

    void set_point_value(double x, double v) {
        if (!(v >= 0.0)) throw DomainError("StepFunction: values must be >= 0");
        std::size_t j = interior_break_index(x);
        point_values_[j] = v;
    }

    double point_value_at(std::size_t interior_idx) const {
        return point_values_[interior_idx];
    }

    bool identically_zero() const {
        return std::all_of(values_.begin(), values_.end(),
                           [](double v) { return v == 0.0; }) &&
               std::all_of(point_values_.begin(), point_values_.end(),
                           [](double v) { return v == 0.0; });
    }

    double max_value() const {
        double m = *std::max_element(values_.begin(), values_.end());
        for (double v : point_values_) m = std::max(m, v);
        return m;
    }

    /// Smallest strictly positive level, or 0 if the function vanishes.
    double min_positive_value() const {
        double m = inf;
        for (double v : values_)
            if (v > 0.0) m = std::min(m, v);
        for (double v : point_values_)
            if (v > 0.0) m = std::min(m, v);
        return std::isinf(m) ? 0.0 : m;
    }

    StepFunction reflected() const {
        std::vector<double> rb(breaks_.rbegin(), breaks_.rend());
        for (double& x : rb) x = -x;
        std::vector<double> rv(values_.rbegin(), values_.rend());
        StepFunction out(domain_.reflected(), std::move(rb), std::move(rv));
        out.point_values_.assign(point_values_.rbegin(), point_values_.rend());
        return out;
    }

    /// Same partition, values mapped through f (applied to piece and
    /// breakpoint values alike).
    template <class F>
    StepFunction mapped(F&& f) const {
        StepFunction out = *this;
        for (double& v : out.values_) v = f(v);
        for (double& v : out.point_values_) v = f(v);
        return out;
    }

    friend bool operator==(const StepFunction&, const StepFunction&) = default;

private:
    std::size_t interior_break_index(double x) const {
        auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - breaks_.begin());
        if (it == breaks_.end() || *it != x || i == 0 || i == breaks_.size() - 1)
            throw DomainError("StepFunction: not an interior breakpoint");
        return i - 1;
    }

    Interval domain_;
    std::vector<double> breaks_;
    std::vector<double> values_;
    std::vector<double> point_values_;  // at breaks_[1..n-1]
};

/// Sorted union of the interior breakpoints of both operands.
inline std::vector<double> merged_breaks(const StepFunction& f, const StepFunction& g) {
    std::vector<double> out;
    out.reserve(f.breaks().size() + g.breaks().size());
    std::set_union(f.breaks().begin(), f.breaks().end(), g.breaks().begin(),
                   g.breaks().end(), std::back_inserter(out));
    return out;
}

enum class PointwiseOp { product, max };

/// Exact pointwise combination on the refined common partition.
inline StepFunction pointwise(const StepFunction& f, const StepFunction& g,
                              PointwiseOp op) {
    if (f.domain() != g.domain())
        throw DomainError("pointwise: operands live on different intervals");
    auto apply = [op](double x, double y) {
        return op == PointwiseOp::product ? x * y : std::max(x, y);
    };
    std::vector<double> breaks = merged_breaks(f, g);
    std::vector<double> values(breaks.size() - 1);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        values[i] = apply(f.value_right_of(breaks[i]), g.value_right_of(breaks[i]));
    StepFunction out(f.domain(), breaks, std::move(values));
    for (std::size_t j = 1; j + 1 < out.breaks().size(); ++j) {
        double x = out.breaks()[j];
        out.set_point_value(x, apply(f.value(x), g.value(x)));
    }
    return out;
}

}  // namespace revhardy
