#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "revhardy/errors.hpp"
#include "revhardy/extended_real.hpp"
#include "revhardy/intervals.hpp"
#include "revhardy/measure.hpp"
#include "revhardy/monotone_function.hpp"
#include "revhardy/step_function.hpp"

namespace revhardy {

namespace detail {

/// Sorted deduplicated union of several breakpoint lists, restricted to the
/// open range (lo, hi), with lo and hi prepended/appended.
inline std::vector<double> cut_points(double lo, double hi,
                                      std::initializer_list<const std::vector<double>*> lists) {
    std::vector<double> cuts{lo};
    for (const auto* l : lists)
        for (double x : *l)
            if (x > lo && x < hi) cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (cuts.back() != hi) cuts.push_back(hi);
    return cuts;
}

}  // namespace detail

/// Weighted norm ||f||_{p,e,m}: (integral of f^p over e against m)^(1/p) for
/// finite p, the m-essential supremum over e for p = inf. Exact for the
/// piecewise-constant class.
inline ExtReal norm(const StepFunction& f, Exponent p, const EndpointedInterval& e,
                    const Measure& m) {
    if (f.domain() != m.domain())
        throw DomainError("norm: function and measure domains differ");
    if (!e.within(f.domain()))
        throw DomainError("norm: interval outside the domain");
    if (e.empty()) return ExtReal(0.0);

    if (p.is_infinite()) {
        double s = 0.0;
        for (const Atom& at : m.atoms())
            if (e.contains(at.position)) s = std::max(s, f.value(at.position));
        if (!m.density_breaks().empty()) {
            double lo = std::max(e.left, m.density_breaks().front());
            double hi = std::min(e.right, m.density_breaks().back());
            if (lo < hi) {
                auto cuts = detail::cut_points(lo, hi, {&f.breaks(), &m.density_breaks()});
                for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
                    if (m.density_right_of(cuts[i]) > 0.0)
                        s = std::max(s, f.value_right_of(cuts[i]));
            }
        }
        return ExtReal(s);
    }

    double pe = p.value();
    double total = 0.0;
    for (const Atom& at : m.atoms())
        if (e.contains(at.position)) {
            double v = f.value(at.position);
            if (v > 0.0) total += std::pow(v, pe) * at.mass;
        }
    if (!m.density_breaks().empty()) {
        double lo = std::max(e.left, m.density_breaks().front());
        double hi = std::min(e.right, m.density_breaks().back());
        if (lo < hi) {
            auto cuts = detail::cut_points(lo, hi, {&f.breaks(), &m.density_breaks()});
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                double v = f.value_right_of(cuts[i]);
                double d = m.density_right_of(cuts[i]);
                if (v > 0.0 && d > 0.0)
                    total += std::pow(v, pe) * d * (cuts[i + 1] - cuts[i]);
            }
        }
    }
    return ext_pow(ExtReal(total), 1.0 / pe);
}

enum class EnvelopeDirection {
    tail,  // x -> ||g||_{inf,(x,b),m}, non-increasing
    head,  // x -> ||g||_{inf,(a,x),m}, non-decreasing
};

/// Pointwise-exact supremal envelope of g with respect to m.
inline StepFunction sup_envelope(const StepFunction& g, const Measure& m,
                                 EnvelopeDirection dir) {
    if (g.domain() != m.domain())
        throw DomainError("sup_envelope: function and measure domains differ");
    const Interval& dom = g.domain();
    auto structural = m.structural_breaks();
    auto cuts = detail::cut_points(dom.a, dom.b, {&g.breaks(), &structural});
    std::size_t n = cuts.size() - 1;

    std::vector<double> values(n);
    std::vector<double> points(n > 0 ? n - 1 : 0);
    if (dir == EnvelopeDirection::tail) {
        // R[i] = ess sup of g over (cuts[i], b); piece (cuts[i], cuts[i+1]]
        // carries R[i], and the exact value at the interior breakpoint
        // cuts[i+1] is R[i+1].
        double run = 0.0;
        for (std::size_t i = n; i-- > 0;) {
            double contrib = 0.0;
            if (m.density_right_of(cuts[i]) > 0.0)
                contrib = g.value_right_of(cuts[i]);
            if (cuts[i + 1] < dom.b && m.atom_mass_at(cuts[i + 1]) > 0.0)
                contrib = std::max(contrib, g.value(cuts[i + 1]));
            run = std::max(run, contrib);
            values[i] = run;
            if (i + 1 < n) points[i] = values[i + 1];
        }
    } else {
        // Piece (cuts[i], cuts[i+1]] carries ess sup over (a, x) for any x in
        // it, which is constant there; the default breakpoint convention is
        // already exact for this direction.
        double run = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double interior = run;
            if (m.density_right_of(cuts[i]) > 0.0)
                interior = std::max(interior, g.value_right_of(cuts[i]));
            values[i] = interior;
            run = interior;
            if (cuts[i + 1] < dom.b && m.atom_mass_at(cuts[i + 1]) > 0.0)
                run = std::max(run, g.value(cuts[i + 1]));
        }
    }
    StepFunction out(dom, cuts, std::move(values));
    if (dir == EnvelopeDirection::tail)
        for (std::size_t j = 0; j + 1 < n; ++j)
            out.set_point_value(cuts[j + 1], points[j]);
    return out;
}

enum class CumulativeSide {
    left_anchored,   // t -> ||u||_{q,(a,t],m}
    right_anchored,  // t -> ||u||_{q,[t,b),m}
};

/// Cumulative weighted norm as a MonotoneFunction with exact one-sided
/// limits. Left-anchored with q < inf is non-decreasing and right-continuous;
/// right-anchored is non-increasing and left-continuous. For q = inf the
/// cumulative essential supremum may jump on both sides of an atom.
///
/// Throws NonAdmissibleWeight if the accumulated q-th power overflows at an
/// interior point.
inline MonotoneFunction cumulative_norm(const StepFunction& u, Exponent q,
                                        const Measure& m, CumulativeSide side) {
    if (u.domain() != m.domain())
        throw DomainError("cumulative_norm: function and measure domains differ");
    const Interval& dom = u.domain();
    auto structural = m.structural_breaks();
    auto knots = detail::cut_points(dom.a, dom.b, {&u.breaks(), &structural});
    std::size_t n = knots.size() - 1;
    std::vector<PowerForm> cells(n);
    std::vector<double> kv(n - 1);

    if (side == CumulativeSide::right_anchored) {
        // Mirror through reflection so both sides share one code path.
        MonotoneFunction mirrored = cumulative_norm(
            u.reflected(), q, m.reflected(), CumulativeSide::left_anchored);
        std::vector<double> rknots(mirrored.knots().rbegin(), mirrored.knots().rend());
        for (double& x : rknots) x = -x;
        std::vector<PowerForm> rcells;
        rcells.reserve(mirrored.cell_count());
        for (std::size_t i = mirrored.cell_count(); i-- > 0;) {
            PowerForm f = mirrored.cell(i);
            if (!f.is_constant()) {
                f.anchor = -f.anchor;
                f.slope = -f.slope;
            }
            rcells.push_back(f);
        }
        std::size_t kcount = mirrored.knots().size() - 2;
        std::vector<double> rkv(kcount);
        for (std::size_t j = 0; j < kcount; ++j)
            rkv[j] = mirrored.value(mirrored.knots()[kcount - j]);
        return MonotoneFunction(dom, MonotoneFunction::Direction::non_increasing,
                                std::move(rknots), std::move(rcells), std::move(rkv));
    }

    if (q.is_infinite()) {
        double run = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double interior = run;
            if (m.density_right_of(knots[i]) > 0.0)
                interior = std::max(interior, u.value_right_of(knots[i]));
            cells[i] = PowerForm::constant(interior);
            run = interior;
            if (i + 1 < n) {
                if (m.atom_mass_at(knots[i + 1]) > 0.0)
                    run = std::max(run, u.value(knots[i + 1]));
                kv[i] = run;
            }
        }
        return MonotoneFunction(dom, MonotoneFunction::Direction::non_decreasing,
                                knots, std::move(cells), std::move(kv));
    }

    double qe = q.value();
    double S = 0.0;  // accumulated integral of u^q
    for (std::size_t i = 0; i < n; ++i) {
        double v = u.value_right_of(knots[i]);
        double d = m.density_right_of(knots[i]);
        double slope = (v > 0.0 && d > 0.0) ? std::pow(v, qe) * d : 0.0;
        PowerForm f;
        f.b0 = S;
        f.slope = slope;
        f.anchor = knots[i];
        f.exponent = 1.0 / qe;
        f.scale = 1.0;
        f.shift = 0.0;
        cells[i] = f;
        if (slope > 0.0) S = S + slope * (knots[i + 1] - knots[i]);
        if (i + 1 < n) {
            double am = m.atom_mass_at(knots[i + 1]);
            double uv = u.value(knots[i + 1]);
            if (am > 0.0 && uv > 0.0) S += std::pow(uv, qe) * am;
            if (std::isinf(S))
                throw NonAdmissibleWeight(
                    "cumulative_norm: infinite cumulative norm at an interior point");
            kv[i] = std::pow(S, 1.0 / qe);
        }
    }
    return MonotoneFunction(dom, MonotoneFunction::Direction::non_decreasing, knots,
                            std::move(cells), std::move(kv));
}

}  // namespace revhardy
