#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "revhardy/errors.hpp"
#include "revhardy/intervals.hpp"

namespace revhardy {

/// Closed-form evaluator for one open cell of a MonotoneFunction:
///
///     value(t) = shift + scale * (b0 + slope*(t - anchor))^exponent
///
/// with b0 + slope*(t - anchor) >= 0 across the cell. Cells of cumulative
/// weighted norms, their powers, and their negated inverse powers all fit
/// this shape, which keeps every evaluation exact (one pow per query) and
/// lets end cells with an unbounded integrator be integrated in closed form.
struct PowerForm {
    double b0 = 0.0;
    double slope = 0.0;
    double anchor = 0.0;
    double exponent = 1.0;
    double scale = 1.0;
    double shift = 0.0;

    static PowerForm constant(double c) {
        PowerForm f;
        f.b0 = 1.0;
        f.slope = 0.0;
        f.scale = c;
        f.exponent = 1.0;
        return f;
    }

    bool is_constant() const { return slope == 0.0 || scale == 0.0; }

    double eval(double t) const {
        if (is_constant()) return shift + scale * pow_base(b0);
        double base = b0 + slope * (t - anchor);
        if (base < 0.0) base = 0.0;  // clamp fp underrun at a zero of the base
        return shift + scale * pow_base(base);
    }

    /// Same function expressed relative to another (finite) anchor.
    PowerForm reanchored(double new_anchor) const {
        PowerForm f = *this;
        if (!is_constant()) {
            f.b0 = b0 + slope * (new_anchor - anchor);
            if (f.b0 < 0.0) f.b0 = 0.0;
            f.anchor = new_anchor;
        }
        return f;
    }

    /// Sign of the derivative on the cell: +1, -1 or 0.
    int derivative_sign() const {
        if (is_constant()) return 0;
        double s = scale * exponent * slope;
        return s > 0.0 ? 1 : (s < 0.0 ? -1 : 0);
    }

    friend bool operator==(const PowerForm&, const PowerForm&) = default;

private:
    double pow_base(double base) const {
        if (exponent == 1.0) return base;
        return std::pow(base, exponent);
    }
};

/// Monotone extended-real-valued function on an open interval with exact
/// value / one-sided limit queries.
///
/// Representation: knots x_0 < ... < x_n spanning the closure of the domain,
/// a PowerForm on each open cell (x_i, x_{i+1}) (continuous and monotone
/// there), and explicit values at the interior knots. All jumps sit at
/// knots. Values may be +-inf; cells adjacent to an infinite endpoint must
/// be constant.
class MonotoneFunction {
public:
    enum class Direction { non_decreasing, non_increasing };

    MonotoneFunction(Interval domain, Direction dir, std::vector<double> knots,
                     std::vector<PowerForm> cells,
                     std::vector<double> interior_knot_values)
        : domain_(domain),
          dir_(dir),
          knots_(std::move(knots)),
          cells_(std::move(cells)),
          knot_values_(std::move(interior_knot_values)) {
        if (knots_.size() < 2 || cells_.size() != knots_.size() - 1 ||
            knot_values_.size() != knots_.size() - 2)
            throw DomainError("MonotoneFunction: inconsistent sizes");
        if (knots_.front() != domain_.a || knots_.back() != domain_.b)
            throw DomainError("MonotoneFunction: knots must span the domain");
        for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
            if (!(knots_[i] < knots_[i + 1]))
                throw DomainError("MonotoneFunction: knots must strictly increase");
        int want = dir_ == Direction::non_decreasing ? 1 : -1;
        for (std::size_t i = 0; i < cells_.size(); ++i) {
            int s = cells_[i].derivative_sign();
            if (s != 0 && s != want)
                throw DomainError("MonotoneFunction: cell violates direction");
            if ((std::isinf(knots_[i]) || std::isinf(knots_[i + 1])) &&
                !cells_[i].is_constant())
                throw DomainError(
                    "MonotoneFunction: unbounded cells must be constant");
        }
        // one-sided limits must chain through the knot values; composed pow
        // evaluations can disagree in the last ulps, hence the tiny slack
        auto leq = [](double a, double b) {
            if (a <= b) return true;
            double scale = std::max(std::fabs(a), std::fabs(b));
            return std::isfinite(scale) && a - b <= 16 * 2.220446049250313e-16 * scale;
        };
        for (std::size_t j = 0; j < knot_values_.size(); ++j) {
            double x = knots_[j + 1];
            double l = cells_[j].eval(x);
            double r = cells_[j + 1].eval(x);
            bool ok = dir_ == Direction::non_decreasing
                          ? (leq(l, knot_values_[j]) && leq(knot_values_[j], r))
                          : (leq(knot_values_[j], l) && leq(r, knot_values_[j]));
            if (!ok && !(std::isnan(l) || std::isnan(r)))
                throw DomainError("MonotoneFunction: knot value breaks monotonicity");
        }
    }

    static MonotoneFunction constant(Interval domain, double c) {
        return MonotoneFunction(domain, Direction::non_decreasing, {domain.a, domain.b},
                                {PowerForm::constant(c)}, {});
    }

    const Interval& domain() const { return domain_; }
    Direction direction() const { return dir_; }
    bool non_decreasing() const { return dir_ == Direction::non_decreasing; }
    const std::vector<double>& knots() const { return knots_; }
    const PowerForm& cell(std::size_t i) const { return cells_[i]; }
    std::size_t cell_count() const { return cells_.size(); }

    double value(double t) const {
        if (!domain_.contains(t))
            throw DomainError("MonotoneFunction::value: point outside the domain");
        std::size_t i = cell_index_right_of(t);
        if (i > 0 && knots_[i] == t) return knot_values_[i - 1];
        return cells_[i].eval(t);
    }

    /// lim_{s -> t-}; defined for t in (a, b].
    double left_limit(double t) const {
        if (!(t > domain_.a && t <= domain_.b))
            throw DomainError("MonotoneFunction::left_limit: point outside (a, b]");
        auto it = std::lower_bound(knots_.begin(), knots_.end(), t);
        std::size_t i = static_cast<std::size_t>(it - knots_.begin());
        if (it != knots_.end() && *it == t)
            return cells_[i - 1].eval(t);  // cell left of the knot
        return cells_[i - 1].eval(t);      // interior of cell i-1; continuous there
    }

    /// lim_{s -> t+}; defined for t in [a, b).
    double right_limit(double t) const {
        if (!(t >= domain_.a && t < domain_.b))
            throw DomainError("MonotoneFunction::right_limit: point outside [a, b)");
        auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
        std::size_t i = static_cast<std::size_t>(it - knots_.begin());
        return cells_[i - 1].eval(t);
    }

    /// Value at the left end in the limit sense, lim_{t -> a+}.
    double at_left_end() const { return right_limit(domain_.a); }
    /// Value at the right end in the limit sense, lim_{t -> b-}.
    double at_right_end() const { return left_limit(domain_.b); }

    /// Index of the cell whose closure contains points immediately right
    /// of t (t in [a, b)).
    std::size_t cell_index_right_of(double t) const {
        auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
        std::size_t i = static_cast<std::size_t>(it - knots_.begin());
        return i - 1;
    }

    /// v -> shift + scale * v^e applied pointwise to a non-negative-valued
    /// function. The map is monotone on [0, inf] (increasing when scale and e
    /// share a sign, decreasing otherwise, flipping the direction). Every
    /// non-constant cell must be a bare power (scale 1, shift 0) so the
    /// composition stays in the PowerForm family.
    MonotoneFunction power_transform(double e, double scale, double shift) const {
        if (scale == 0.0 || e == 0.0)
            throw DomainError("power_transform: map must be strictly monotone");
        auto map_value = [&](double v) {
            if (std::isinf(v))
                return e > 0.0 ? shift + scale * v : shift;  // inf^neg = 0
            if (v == 0.0 && e < 0.0) return shift + scale * inf;
            return shift + scale * std::pow(v, e);
        };
        std::vector<PowerForm> cells;
        cells.reserve(cells_.size());
        for (const PowerForm& c : cells_) {
            if (c.is_constant()) {
                cells.push_back(PowerForm::constant(map_value(c.eval(0.0))));
            } else {
                if (c.scale != 1.0 || c.shift != 0.0)
                    throw DomainError("power_transform: cell is not a bare power");
                PowerForm f = c;
                f.exponent = c.exponent * e;
                f.scale = scale;
                f.shift = shift;
                cells.push_back(f);
            }
        }
        std::vector<double> kv(knot_values_);
        for (double& v : kv) v = map_value(v);
        Direction d = dir_;
        if (scale * e < 0.0)
            d = d == Direction::non_decreasing ? Direction::non_increasing
                                               : Direction::non_decreasing;
        return MonotoneFunction(domain_, d, knots_, std::move(cells),
                                std::move(kv));
    }

    MonotoneFunction negated() const {
        std::vector<PowerForm> cells(cells_);
        for (PowerForm& c : cells) {
            c.scale = -c.scale;
            c.shift = -c.shift;
        }
        std::vector<double> kv(knot_values_);
        for (double& v : kv) v = -v;
        Direction d = dir_ == Direction::non_decreasing ? Direction::non_increasing
                                                        : Direction::non_decreasing;
        return MonotoneFunction(domain_, d, knots_, std::move(cells), std::move(kv));
    }

    /// Same function with interior knot values replaced by right limits.
    MonotoneFunction right_continuous() const {
        std::vector<double> kv(knot_values_.size());
        for (std::size_t j = 0; j < kv.size(); ++j)
            kv[j] = cells_[j + 1].eval(knots_[j + 1]);
        return MonotoneFunction(domain_, dir_, knots_, cells_, std::move(kv));
    }

    /// Same function with interior knot values replaced by left limits.
    MonotoneFunction left_continuous() const {
        std::vector<double> kv(knot_values_.size());
        for (std::size_t j = 0; j < kv.size(); ++j)
            kv[j] = cells_[j].eval(knots_[j + 1]);
        return MonotoneFunction(domain_, dir_, knots_, cells_, std::move(kv));
    }

    friend bool operator==(const MonotoneFunction&, const MonotoneFunction&) = default;

private:
    Interval domain_;
    Direction dir_;
    std::vector<double> knots_;
    std::vector<PowerForm> cells_;
    std::vector<double> knot_values_;
};

}  // namespace revhardy
