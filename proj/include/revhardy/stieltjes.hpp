#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "revhardy/errors.hpp"
#include "revhardy/extended_real.hpp"
#include "revhardy/intervals.hpp"
#include "revhardy/monotone_function.hpp"

namespace revhardy {

/// Measure assigned to e by a monotone phi through its one-sided limits:
/// closed endpoints pick up the jump at the endpoint, open ones do not.
/// A non-increasing phi is flipped first, i.e. the measure of -phi is
/// returned. Throws ConventionViolation if e lies inside an infinite
/// plateau of phi (inf - inf).
inline ExtReal ls_measure(const MonotoneFunction& phi_in, const EndpointedInterval& e) {
    MonotoneFunction phi =
        phi_in.non_decreasing() ? phi_in : phi_in.negated();
    if (!e.within(phi.domain()))
        throw DomainError("ls_measure: interval outside the domain");
    if (e.empty()) return ExtReal(0.0);
    double upper = e.right_closed ? phi.right_limit(e.right) : phi.left_limit(e.right);
    double lower = e.left_closed ? phi.left_limit(e.left) : phi.right_limit(e.left);
    if (std::isinf(upper) && std::isinf(lower) && upper == lower)
        throw ConventionViolation("ls_measure: interval inside an infinite plateau");
    double mass = upper - lower;
    return ExtReal(mass > 0.0 ? mass : 0.0);
}

namespace detail {

/// form written as shift + c * z^expo around the given cell edge
/// (z = x - edge when left, z = edge - x when right). Requires the base
/// slope to point into the cell.
struct PurePower {
    double c;
    double expo;
    double shift;
    bool ok;
};

inline PurePower as_pure_power(const PowerForm& form, double edge, bool left_edge) {
    PurePower p{0.0, 0.0, 0.0, false};
    if (form.is_constant()) return p;
    PowerForm f = form.reanchored(edge);
    if (f.b0 != 0.0) return p;
    double s = left_edge ? f.slope : -f.slope;
    if (!(s > 0.0)) return p;
    p.c = f.scale * std::pow(s, f.exponent);
    p.expo = f.exponent;
    p.shift = f.shift;
    p.ok = true;
    return p;
}

/// Exact integral of F over the open cell (s, t) against d(phi) when both
/// restrict to pure powers anchored at the cell edge nearest the
/// singularity. Returns +inf when the integral diverges; NaN when the
/// closed form does not apply.
inline double power_pair_integral(const PowerForm& fform, const PowerForm& pform,
                                  double s, double t, bool anchor_left) {
    double edge = anchor_left ? s : t;
    double L = t - s;
    PurePower P = as_pure_power(pform, edge, anchor_left);
    if (!P.ok) return std::numeric_limits<double>::quiet_NaN();
    double measure_coef = std::fabs(P.c * P.expo);  // d(phi) = coef * z^(expo-1) dz

    double alpha, cf, fshift;
    if (fform.is_constant()) {
        alpha = 0.0;
        cf = 0.0;
        fshift = fform.eval(edge);
    } else {
        PurePower Q = as_pure_power(fform, edge, anchor_left);
        if (!Q.ok) return std::numeric_limits<double>::quiet_NaN();
        alpha = Q.expo;
        cf = Q.c;
        fshift = Q.shift;
    }
    if (fshift < 0.0 || cf < 0.0) return std::numeric_limits<double>::quiet_NaN();

    double total = 0.0;
    if (fshift > 0.0) {
        // constant part against the cell mass
        if (P.expo < 0.0) return inf;  // infinite mass at the edge
        total += fshift * measure_coef * std::pow(L, P.expo);
    }
    if (cf > 0.0) {
        double g = alpha + P.expo;
        if (g <= 0.0) return inf;
        total += cf * measure_coef * std::pow(L, g) / g;
    }
    return total;
}

struct LsCell {
    double lo, hi;
    std::size_t fc, pc;  // owning cell indices in F and phi
    double f_lo, f_hi;   // F one-sided limits at the edges
    double p_lo, p_hi;   // phi one-sided limits at the edges
    double enc_lo, enc_hi;
};

/// Exact integral of the form over [s, t]; finite cells only.
inline double form_integral(const PowerForm& f, double s, double t) {
    if (f.is_constant()) return f.eval(s) * (t - s);
    double bs = std::max(f.b0 + f.slope * (s - f.anchor), 0.0);
    double bt = std::max(f.b0 + f.slope * (t - f.anchor), 0.0);
    double e1 = f.exponent + 1.0;
    double core = e1 == 0.0 ? std::log(bt / bs)
                            : (std::pow(bt, e1) - std::pow(bs, e1)) / e1;
    return f.shift * (t - s) + f.scale * core / f.slope;
}

inline double form_derivative(const PowerForm& f, double x) {
    if (f.is_constant()) return 0.0;
    double base = std::max(f.b0 + f.slope * (x - f.anchor), 0.0);
    return f.scale * f.exponent * f.slope * std::pow(base, f.exponent - 1.0);
}

/// Sign of the second derivative, constant per cell: +1 convex, -1 concave.
inline int convexity_sign(const PowerForm& f) {
    if (f.is_constant() || f.exponent == 1.0) return 0;
    double s = f.scale * f.exponent * (f.exponent - 1.0);
    return s > 0.0 ? 1 : (s < 0.0 ? -1 : 0);
}

/// True when F vanishes identically on region (an exact representation walk).
inline bool zero_on(const MonotoneFunction& F, const EndpointedInterval& region) {
    if (region.empty()) return true;
    const auto& knots = F.knots();
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        double lo = std::max(knots[i], region.left);
        double hi = std::min(knots[i + 1], region.right);
        if (hi > lo) {
            if (F.cell(i).eval(lo) != 0.0 || F.cell(i).eval(hi) != 0.0) return false;
        }
        double k = knots[i + 1];
        if (k < F.domain().b && k > F.domain().a && region.contains(k) &&
            F.value(k) != 0.0)
            return false;
    }
    if (region.left_closed && F.domain().contains(region.left) &&
        F.value(region.left) != 0.0)
        return false;
    return true;
}

}  // namespace detail

/// Enclosure of the Lebesgue-Stieltjes integral of F over e against d(phi).
///
/// phi must be monotone; a non-increasing phi is replaced by -phi (so the
/// returned value is the integral against the flipped, non-decreasing
/// integrator). Jumps contribute F(x) * (phi(x+) - phi(x-)) exactly; open
/// cells are bracketed by the monotone extremes of F and refined by
/// bisection until hi - lo <= tol * hi (or <= tol * abs_floor when a caller
/// supplies an absolute scale for values near zero). Where phi reaches an
/// infinite plateau the integrand must vanish (ConventionViolation
/// otherwise) and the plateau is dropped; where phi is unbounded at a cell
/// edge the cell is integrated exactly as a pure power pair. Closed-form
/// and jump contributions are treated as exact; double rounding is not
/// separately tracked.
inline Enclosure ls_integral(const MonotoneFunction& F, const MonotoneFunction& phi_in,
                             const EndpointedInterval& e, double tol,
                             std::size_t max_cells = std::size_t(1) << 20,
                             double abs_floor = 0.0) {
    if (F.domain() != phi_in.domain())
        throw DomainError("ls_integral: integrand and integrator domains differ");
    if (!e.within(F.domain()))
        throw DomainError("ls_integral: interval outside the domain");
    double f_least = F.non_decreasing() ? F.at_left_end() : F.at_right_end();
    if (f_least < 0.0)
        throw DomainError("ls_integral: integrand must be non-negative");
    MonotoneFunction phi = phi_in.non_decreasing() ? phi_in : phi_in.negated();

    if (e.empty()) return Enclosure(ExtReal(0.0), ExtReal(0.0));

    double lo = e.left, hi = e.right;
    bool linc = e.left_closed, rinc = e.right_closed;
    const Interval& dom = F.domain();

    // Left plateau: phi = -inf up to some c; the convention demands F = 0 on
    // (a, c] and integration restarts on the open side of c, dropping the
    // jump out of the plateau.
    {
        const auto& kn = phi.knots();
        double c = dom.a;
        for (std::size_t i = 0; i < phi.cell_count(); ++i) {
            const PowerForm& f = phi.cell(i);
            if (f.is_constant() && f.eval(kn[i]) == -inf)
                c = kn[i + 1];
            else
                break;
        }
        if (c > dom.a && (lo < c || (lo == c && linc))) {
            double rr = std::min(hi, c);
            bool rrc = c < hi ? true : rinc;
            if (!detail::zero_on(F, EndpointedInterval(lo, rr, linc, rrc)))
                throw ConventionViolation(
                    "ls_integral: integrand nonzero on an infinite plateau");
            lo = c;
            linc = false;
        }
    }
    // Right plateau: phi = +inf from some c on, mirrored: F = 0 on [c, b) and
    // integration stops on the open side of c.
    {
        const auto& kn = phi.knots();
        double c = dom.b;
        for (std::size_t i = phi.cell_count(); i-- > 0;) {
            const PowerForm& f = phi.cell(i);
            if (f.is_constant() && f.eval(kn[i + 1]) == inf)
                c = kn[i];
            else
                break;
        }
        if (c < dom.b && (hi > c || (hi == c && rinc))) {
            double rl = std::max(lo, c);
            bool rlc = lo < c ? true : linc;
            if (!detail::zero_on(F, EndpointedInterval(rl, hi, rlc, rinc)))
                throw ConventionViolation(
                    "ls_integral: integrand nonzero on an infinite plateau");
            hi = c;
            rinc = false;
        }
    }

    if (lo > hi || (lo == hi && !(linc && rinc)))
        return Enclosure(ExtReal(0.0), ExtReal(0.0));

    double exact_sum = 0.0;
    bool exact_infinite = false;

    auto add_point_mass = [&](double x) {
        double jump = phi.right_limit(x) - phi.left_limit(x);
        if (!(jump > 0.0)) return;
        double fx = F.value(x);
        if (fx == 0.0) return;
        if (std::isinf(jump) || std::isinf(fx))
            exact_infinite = true;
        else
            exact_sum += fx * jump;
    };

    if (lo == hi) {  // single closed point
        add_point_mass(lo);
        ExtReal v = exact_infinite ? ExtReal::infinity() : ExtReal(exact_sum);
        return Enclosure(v, v);
    }

    if (linc) add_point_mass(lo);
    if (rinc) add_point_mass(hi);

    std::vector<double> cuts{lo};
    for (double k : phi.knots())
        if (k > lo && k < hi) cuts.push_back(k);
    for (double k : F.knots())
        if (k > lo && k < hi) cuts.push_back(k);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.push_back(hi);

    for (std::size_t i = 1; i + 1 < cuts.size(); ++i) add_point_mass(cuts[i]);

    std::vector<detail::LsCell> cells;
    auto make_cell = [&](double s, double t, std::size_t fc, std::size_t pc) {
        detail::LsCell c;
        c.lo = s;
        c.hi = t;
        c.fc = fc;
        c.pc = pc;
        c.f_lo = F.cell(fc).eval(s);
        c.f_hi = F.cell(fc).eval(t);
        c.p_lo = phi.cell(pc).eval(s);
        c.p_hi = phi.cell(pc).eval(t);
        double fmin = std::min(c.f_lo, c.f_hi);
        double fmax = std::max(c.f_lo, c.f_hi);
        double dphi = c.p_hi - c.p_lo;
        if (dphi < 0.0) dphi = 0.0;
        if (fmax == 0.0 || dphi == 0.0) {
            c.enc_lo = c.enc_hi = 0.0;
            return c;
        }
        if (std::isinf(dphi) || std::isinf(fmax)) {
            bool phi_left = c.p_lo == -inf;
            bool phi_right = c.p_hi == inf;
            bool f_left = c.f_lo == inf;
            bool f_right = c.f_hi == inf;
            bool anchor_left = phi_left || f_left;
            bool anchor_right = phi_right || f_right;
            if (anchor_left && anchor_right) {
                // singularities on both edges; let bisection separate them
                c.enc_lo = 0.0;
                c.enc_hi = inf;
                return c;
            }
            double f_at_edge = anchor_left ? c.f_lo : c.f_hi;
            if (std::isinf(dphi) && f_at_edge > 0.0) {
                c.enc_lo = c.enc_hi = inf;  // positive integrand, infinite mass
                return c;
            }
            double v = detail::power_pair_integral(F.cell(fc), phi.cell(pc), s, t,
                                                   anchor_left);
            if (std::isnan(v))
                throw ToleranceNotMet(
                    "ls_integral: unbounded edge without a closed power form");
            c.enc_lo = c.enc_hi = v;
            return c;
        }
        c.enc_lo = fmin * dphi;
        c.enc_hi = fmax * dphi;
        // Second-order tightening: on the open cell F sits between its chord
        // and its midpoint tangent (one convexity sign per power form), and
        // linear functions integrate against d(phi) exactly by parts.
        double mid = s + (t - s) / 2.0;
        if (std::isfinite(c.enc_hi) && c.enc_hi > c.enc_lo && mid > s && mid < t) {
            double Iphi = detail::form_integral(phi.cell(pc), s, t);
            if (std::isfinite(Iphi)) {
                // X = integral of (x - s) d(phi) over the cell
                double X = (t - s) * dphi - (Iphi - c.p_lo * (t - s));
                X = std::min(std::max(X, 0.0), (t - s) * dphi);
                auto linear_part = [&](double at_s, double slope_x) {
                    return at_s * dphi + slope_x * X;
                };
                double chord_slope = (c.f_hi - c.f_lo) / (t - s);
                double chord = linear_part(c.f_lo, chord_slope);
                double fm = F.cell(fc).eval(mid);
                double dm = detail::form_derivative(F.cell(fc), mid);
                double tangent = linear_part(fm + dm * (s - mid), dm);
                int cx = detail::convexity_sign(F.cell(fc));
                double lo2 = cx >= 0 ? tangent : chord;
                double hi2 = cx >= 0 ? chord : tangent;
                if (std::isfinite(lo2) && std::isfinite(hi2) && lo2 <= hi2) {
                    c.enc_lo = std::max(c.enc_lo, lo2);
                    c.enc_hi = std::min(c.enc_hi, hi2);
                    if (c.enc_lo > c.enc_hi) {  // fp noise: fall back
                        c.enc_lo = fmin * dphi;
                        c.enc_hi = fmax * dphi;
                    }
                }
            }
        }
        return c;
    };

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double s = cuts[i], t = cuts[i + 1];
        cells.push_back(make_cell(s, t, F.cell_index_right_of(s),
                                  phi.cell_index_right_of(s)));
    }

    auto cell_width = [](const detail::LsCell& c) {
        if (std::isinf(c.enc_hi)) return c.enc_lo == c.enc_hi ? 0.0 : inf;
        return c.enc_hi - c.enc_lo;
    };

    using QEntry = std::pair<double, std::size_t>;
    std::priority_queue<QEntry> queue;
    double width_sum = 0.0, lo_sum = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        double w = cell_width(cells[i]);
        width_sum += w;
        lo_sum += cells[i].enc_lo;
        if (std::isinf(cells[i].enc_hi) && std::isinf(cells[i].enc_lo))
            exact_infinite = true;
        if (w > 0.0) queue.push({w, i});
    }

    auto finished = [&]() {
        if (exact_infinite) return true;
        double total_hi = exact_sum + lo_sum + width_sum;
        return width_sum <= tol * total_hi || width_sum <= tol * abs_floor;
    };

    auto recompute_sums = [&]() {
        width_sum = 0.0;
        lo_sum = 0.0;
        for (const auto& c : cells) {
            width_sum += cell_width(c);
            lo_sum += c.enc_lo;
        }
    };
    std::size_t splits = 0;
    while (!finished()) {
        if (queue.empty() || cells.size() >= max_cells)
            throw ToleranceNotMet("ls_integral: refinement budget exhausted");
        auto [w, idx] = queue.top();
        queue.pop();
        if (w != cell_width(cells[idx])) continue;  // stale entry
        const detail::LsCell cur = cells[idx];
        double mid = cur.lo + (cur.hi - cur.lo) / 2.0;
        if (!(mid > cur.lo && mid < cur.hi))
            throw ToleranceNotMet("ls_integral: cell no longer splittable");
        detail::LsCell left = make_cell(cur.lo, mid, cur.fc, cur.pc);
        detail::LsCell right = make_cell(mid, cur.hi, cur.fc, cur.pc);
        width_sum += cell_width(left) + cell_width(right) - cell_width(cur);
        lo_sum += left.enc_lo + right.enc_lo - cur.enc_lo;
        if ((std::isinf(left.enc_hi) && std::isinf(left.enc_lo)) ||
            (std::isinf(right.enc_hi) && std::isinf(right.enc_lo)))
            exact_infinite = true;
        cells[idx] = left;
        cells.push_back(right);
        if (cell_width(left) > 0.0) queue.push({cell_width(left), idx});
        if (cell_width(right) > 0.0) queue.push({cell_width(right), cells.size() - 1});
        // kill accumulation drift and inf - inf artifacts
        if (!std::isfinite(width_sum) || (++splits & 0xfffu) == 0u) recompute_sums();
    }

    if (exact_infinite) return Enclosure::infinite();

    double total_lo = exact_sum, total_hi = exact_sum;
    for (const auto& c : cells) {
        total_lo += c.enc_lo;
        total_hi += c.enc_hi;
    }
    if (total_lo < 0.0) total_lo = 0.0;
    if (std::isinf(total_hi) && !std::isinf(total_lo))
        throw ToleranceNotMet("ls_integral: could not close an infinite bracket");
    return Enclosure(ExtReal(total_lo), ExtReal(total_hi));
}

}  // namespace revhardy
