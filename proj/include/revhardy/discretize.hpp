#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "revhardy/errors.hpp"
#include "revhardy/extended_real.hpp"
#include "revhardy/intervals.hpp"
#include "revhardy/measure.hpp"
#include "revhardy/monotone_function.hpp"
#include "revhardy/norms.hpp"
#include "revhardy/sequences.hpp"
#include "revhardy/step_function.hpp"

namespace revhardy {

namespace detail {

/// phi evaluated at x, with the usual limit convention at the endpoints of
/// the open domain.
inline double phi_at(const MonotoneFunction& phi, double x) {
    if (x == phi.domain().a) return phi.right_limit(x);
    if (x == phi.domain().b) return phi.left_limit(x);
    return phi.value(x);
}

/// Largest representable t in [lo, hi] with pred(t) true, assuming pred is
/// monotone (true at lo, false past the crossing). pred(lo) must hold.
template <class Pred>
double bisect_last_true(double lo, double hi, Pred pred) {
    if (pred(hi)) return hi;
    while (true) {
        double mid = lo + (hi - lo) / 2.0;
        if (!(mid > lo && mid < hi)) break;  // adjacent doubles
        if (pred(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace detail

/// Points x_N < ... < x_{M+1} = b at which a non-negative, non-decreasing,
/// right-continuous phi roughly doubles:
///   (i)   phi = 0 on (a, x_N) and phi(x_N) > 0 (or the head is truncated),
///   (ii)  phi(x_{k+1}-) <= 2 phi(x_k),
///   (iii) 2 phi(x_k-) <= phi(x_{k+1}) for interior k.
///
/// When phi decays continuously to 0 towards a, the untruncated sequence
/// would extend to k = -inf; the stored sequence then starts at a seed point
/// strictly inside the first structural cell of phi, chosen so that
/// phi(seed-) <= eps_rel * phi(b-). The recorded certificate lets callers
/// bound the discarded head exactly (on that cell phi is a bare power, so
/// the ideal continuation is a closed-form geometric tail).
class DiscretizingSequence {
public:
    DiscretizingSequence(MonotoneFunction phi, std::vector<double> points,
                         bool truncated, double positivity_start,
                         double phi_left_of_seed, double eps_rel)
        : phi_(std::move(phi)),
          points_(std::move(points)),
          truncated_(truncated),
          positivity_start_(positivity_start),
          phi_left_of_seed_(phi_left_of_seed),
          eps_rel_(eps_rel) {}

    const MonotoneFunction& phi() const { return phi_; }
    const std::vector<double>& points() const { return points_; }
    std::size_t interval_count() const { return points_.size() - 1; }
    bool head_truncated() const { return truncated_; }
    /// Infimum of {phi > 0}; equals points().front() unless truncated.
    double positivity_start() const { return positivity_start_; }
    /// phi(x_N -) for a truncated head (certified <= eps_rel * phi(b-)).
    double phi_left_of_seed() const { return phi_left_of_seed_; }
    double eps_rel() const { return eps_rel_; }

    /// ||u||_{q,(a, x_k +]} along the sequence, k = N..M.
    std::vector<double> phi_right_values() const {
        std::vector<double> out(points_.size() - 1);
        for (std::size_t k = 0; k + 1 < points_.size(); ++k)
            out[k] = phi_.right_limit(points_[k]);
        return out;
    }

private:
    MonotoneFunction phi_;
    std::vector<double> points_;
    bool truncated_;
    double positivity_start_;
    double phi_left_of_seed_;
    double eps_rel_;
};

inline constexpr double default_eps_rel = 9.094947017729282e-13;  // 2^-40

inline DiscretizingSequence discretizing_sequence(const MonotoneFunction& phi,
                                                  std::size_t max_terms = 4096,
                                                  double eps_rel = default_eps_rel) {
    const Interval& dom = phi.domain();
    if (!phi.non_decreasing())
        throw DomainError("discretizing_sequence: phi must be non-decreasing");
    if (!(phi.at_left_end() >= 0.0))
        throw DomainError("discretizing_sequence: phi must be non-negative");
    for (std::size_t j = 1; j + 1 < phi.knots().size(); ++j) {
        double k = phi.knots()[j];
        if (!std::isfinite(phi.value(k)))
            throw DomainError("discretizing_sequence: phi must be finite on (a, b)");
        if (phi.value(k) != phi.right_limit(k))
            throw DomainError("discretizing_sequence: phi must be right-continuous");
    }
    double phi_total = phi.at_right_end();
    if (phi_total == 0.0)
        throw DomainError("discretizing_sequence: phi is identically zero");

    // Positivity frontier: walk the representation. For the supported cell
    // family positivity begins either at a knot jump or at the left edge of
    // a cell rising from zero.
    const auto& kn = phi.knots();
    double z = dom.b;
    bool continuous_start = false;
    for (std::size_t i = 0; i < phi.cell_count(); ++i) {
        if (phi.cell(i).eval(kn[i]) > 0.0) {  // positive immediately right of kn[i]
            z = kn[i];
            continuous_start = false;
            break;
        }
        if (phi.cell(i).eval(kn[i + 1]) > 0.0) {  // rises from zero inside cell i
            z = kn[i];
            continuous_start = true;
            break;
        }
        if (i + 2 < kn.size() && phi.value(kn[i + 1]) > 0.0) {  // jump at the knot
            z = kn[i + 1];
            continuous_start = false;
            break;
        }
    }
    if (z == dom.b)
        throw DomainError("discretizing_sequence: phi is identically zero");

    bool truncated = false;
    double start = z;
    double phi_left_of_seed = 0.0;
    if (continuous_start) {
        truncated = true;
        // Seed strictly inside the structural cell where phi leaves zero,
        // at or below the eps_rel threshold crossing.
        std::size_t ci = phi.cell_index_right_of(z);
        double cell_hi = kn[ci + 1];
        double theta = eps_rel * phi_total;
        double mid = z + (cell_hi - z) / 2.0;
        double below_theta = detail::bisect_last_true(
            z, mid, [&](double t) { return !(t > z) || !(phi.value(t) > theta); });
        // smallest admissible point after the crossing, capped inside the cell
        start = below_theta < mid ? std::nextafter(below_theta, dom.b) : mid;
        if (phi.domain().contains(start) && !(phi.value(start) > 0.0)) {
            // phi underflows to zero just past the frontier; move the seed to
            // the first point where the evaluated phi is positive
            double fl_frontier = detail::bisect_last_true(
                start, mid, [&](double t) { return !(phi.value(t) > 0.0); });
            start = std::nextafter(fl_frontier, dom.b);
        }
        if (!(start > z && start < cell_hi))
            throw DomainError("discretizing_sequence: empty seed cell");
        phi_left_of_seed = phi.left_limit(start);
    }

    std::vector<double> pts{start};
    double cur = start;
    double phi_cur = detail::phi_at(phi, start);
    if (!(phi_cur > 0.0) && !truncated)
        throw DomainError("discretizing_sequence: phi(x_N) must be positive");
    while (!(phi_total <= 2.0 * phi_cur)) {
        if (pts.size() >= max_terms)
            throw TruncationOverflow("discretizing_sequence: max_terms exhausted");
        double bound = 2.0 * phi_cur;
        // largest t with phi(t-) <= 2 phi(x_k); the first candidate just
        // right of cur always qualifies up to rounding
        double lo = std::nextafter(cur, dom.b);
        double hi = dom.b;
        if (std::isinf(hi)) hi = kn[kn.size() - 2];  // last cell is constant
        double next;
        if (hi <= lo) {
            next = lo;
        } else if (!(phi.left_limit(lo) <= bound)) {
            next = lo;  // phi more than doubles within one ulp; accept
        } else {
            next = detail::bisect_last_true(
                lo, hi, [&](double t) { return phi.left_limit(t) <= bound; });
        }
        if (!(next < dom.b)) break;
        pts.push_back(next);
        cur = next;
        phi_cur = detail::phi_at(phi, next);
    }
    pts.push_back(dom.b);
    return DiscretizingSequence(phi, std::move(pts), truncated, z, phi_left_of_seed,
                                eps_rel);
}

/// J_k = (x_k, x_{k+1}] for k < M and J_M = (x_M, b).
inline std::vector<EndpointedInterval> covering_intervals(const DiscretizingSequence& d) {
    const auto& p = d.points();
    std::vector<EndpointedInterval> out;
    out.reserve(p.size() - 1);
    for (std::size_t k = 0; k + 2 < p.size(); ++k)
        out.push_back(EndpointedInterval::left_open(p[k], p[k + 1]));
    out.push_back(EndpointedInterval::open(p[p.size() - 2], p.back()));
    return out;
}

struct DiscretizationCheck {
    bool ok = true;
    std::string detail;
};

/// Verify conditions (i)-(iii) against the stored phi, with a small relative
/// slack absorbing floating-point rounding of the doubling boundaries.
inline DiscretizationCheck check_discretizing_sequence(const DiscretizingSequence& d,
                                                       double rel_slack = 1e-9) {
    const MonotoneFunction& phi = d.phi();
    const auto& p = d.points();
    auto fail = [](std::string msg) { return DiscretizationCheck{false, std::move(msg)}; };
    if (p.size() < 2) return fail("fewer than two points");
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (!(p[i] < p[i + 1])) return fail("points not strictly increasing");
    if (p.front() < phi.domain().a || p.back() != phi.domain().b)
        return fail("points leave the closure of the domain");

    double phi_start = detail::phi_at(phi, p.front());
    if (!(phi_start > 0.0)) return fail("phi(x_N) is not positive");
    if (!d.head_truncated() && p.front() > phi.domain().a) {
        if (phi.left_limit(p.front()) != 0.0)
            return fail("phi does not vanish left of x_N");
    }
    if (d.head_truncated()) {
        if (phi.left_limit(p.front()) != d.phi_left_of_seed())
            return fail("truncation certificate value mismatch");
        // the seed must sit within one representable point of the eps_rel
        // threshold crossing (the point just below it satisfies the bound)
        double prev = std::nextafter(p.front(), phi.domain().a);
        double phi_prev = phi.domain().contains(prev) ? phi.value(prev) : 0.0;
        if (!(phi_prev <= d.eps_rel() * phi.at_right_end() * (1 + rel_slack)))
            return fail("truncation certificate bound violated");
    }

    std::size_t m = p.size() - 1;  // number of covering intervals
    for (std::size_t k = 0; k < m; ++k) {
        double lhs = phi.left_limit(p[k + 1]);
        double rhs = 2.0 * detail::phi_at(phi, p[k]);
        if (!(lhs <= rhs * (1.0 + rel_slack)))
            return fail("condition (ii) fails at k=" + std::to_string(k));
    }
    for (std::size_t k = 1; k + 1 < m; ++k) {
        double lhs = 2.0 * phi.left_limit(p[k]);
        double rhs = detail::phi_at(phi, p[k + 1]);
        if (lhs <= rhs * (1.0 + rel_slack)) continue;
        // p[k+1] is maximal for (ii); accept when no representable point can
        // satisfy (iii) more tightly, i.e. one ulp to the right would do
        double up = std::nextafter(p[k + 1], phi.domain().b);
        double rhs_up =
            up < phi.domain().b ? phi.left_limit(up) : phi.at_right_end();
        if (lhs <= rhs_up * (1.0 + rel_slack)) continue;
        return fail("condition (iii) fails at k=" + std::to_string(k));
    }
    return {};
}

/// Discrete side of the two-sided norm equivalence:
/// || { ||g||_{inf,J_k,mu} * ||u||_{q,(a,x_k+],nu} } ||_{ell^q(N,M)}.
/// d must have been built from the cumulative norm of (u, q, nu); this is
/// re-derived and compared to guard against mismatched inputs.
inline ExtReal discretized_rhs(const StepFunction& g, const StepFunction& u,
                               Exponent q, const Measure& nu, const Measure& mu,
                               const DiscretizingSequence& d) {
    MonotoneFunction expect =
        cumulative_norm(u, q, nu, CumulativeSide::left_anchored).right_continuous();
    if (!(expect == d.phi()))
        throw DomainError("discretized_rhs: sequence was built from a different norm");
    auto js = covering_intervals(d);
    auto uvals = d.phi_right_values();
    std::vector<double> terms(js.size());
    for (std::size_t k = 0; k < js.size(); ++k)
        terms[k] = norm(g, Exponent::infinity(), js[k], mu).value() * uvals[k];
    return lq_norm(terms, q);
}

}  // namespace revhardy
