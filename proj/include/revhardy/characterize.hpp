#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "revhardy/discretize.hpp"
#include "revhardy/errors.hpp"
#include "revhardy/extended_real.hpp"
#include "revhardy/intervals.hpp"
#include "revhardy/measure.hpp"
#include "revhardy/monotone_function.hpp"
#include "revhardy/norms.hpp"
#include "revhardy/sequences.hpp"
#include "revhardy/step_function.hpp"
#include "revhardy/stieltjes.hpp"

namespace revhardy {

/// Side of the inner supremal norm: S_x = (x, b) for forward, (a, x) for dual.
enum class OperatorDirection { forward, dual };

/// One inequality instance: || g w ||_{p,(a,b),mu} <= c || u(x) ||g||_{inf,S_x,mu} ||_{q,(a,b),nu}
/// over all non-negative Borel g, within the computable class.
struct ProblemSpec {
    Interval domain;
    Exponent p;
    Exponent q;
    OperatorDirection direction;
    Measure mu;
    Measure nu;
    StepFunction u;
    StepFunction w;

    ProblemSpec(Interval dom, Exponent p_, Exponent q_, OperatorDirection dir,
                Measure mu_, Measure nu_, StepFunction u_, StepFunction w_)
        : domain(dom),
          p(p_),
          q(q_),
          direction(dir),
          mu(std::move(mu_)),
          nu(std::move(nu_)),
          u(std::move(u_)),
          w(std::move(w_)) {
        if (mu.domain() != domain || nu.domain() != domain ||
            u.domain() != domain || w.domain() != domain)
            throw DomainError("ProblemSpec: component domains disagree");
        if (norm(u, q, EndpointedInterval::open(domain.a, domain.b), nu).is_zero())
            throw NonAdmissibleWeight("ProblemSpec: u vanishes nu-a.e.");
    }
};

inline ProblemSpec reflect(const ProblemSpec& s) {
    return ProblemSpec(s.domain.reflected(), s.p, s.q,
                       s.direction == OperatorDirection::forward
                           ? OperatorDirection::dual
                           : OperatorDirection::forward,
                       s.mu.reflected(), s.nu.reflected(), s.u.reflected(),
                       s.w.reflected());
}

enum class Regime { qlep, pltq_fin, q_inf };

inline Regime regime(Exponent p, Exponent q) {
    if (q <= p) return Regime::qlep;
    if (!q.is_infinite()) return Regime::pltq_fin;
    return Regime::q_inf;  // q = inf, p < q
}

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::qlep: return "q<=p";
        case Regime::pltq_fin: return "p<q<inf";
        default: return "q=inf";
    }
}

namespace detail {

/// How a monotone factor is sampled at a point x.
enum class PointQuery { value, left_limit, right_limit };

inline double query(const MonotoneFunction& f, PointQuery pq, double x) {
    switch (pq) {
        case PointQuery::value: {
            if (x == f.domain().a) return f.right_limit(x);
            if (x == f.domain().b) return f.left_limit(x);
            return f.value(x);
        }
        case PointQuery::left_limit: return f.left_limit(x);
        default: return f.right_limit(x);
    }
}

struct SupCell {
    double lo, hi;
    std::size_t nc, dc;  // owning cells in num / den
    double enc_lo, enc_hi;
};

/// Enclosure of the supremum of num(x)/den(x) over e, where both factors are
/// MonotoneFunctions; in esssup mode only points carrying m-atoms and cells
/// carrying positive m-density count. Division follows the 0/0 = 0 and
/// x/0 = +inf conventions. Cells where the denominator vanishes at one edge
/// are resolved exactly through the pure-power closed form.
class RatioSup {
public:
    RatioSup(const MonotoneFunction& num, PointQuery num_q,
             const MonotoneFunction& den, PointQuery den_q, const Measure* esswrt)
        : num_(num), num_q_(num_q), den_(den), den_q_(den_q), m_(esswrt) {}

    Enclosure over(const EndpointedInterval& e, double tol,
                   std::size_t max_cells = std::size_t(1) << 18) const {
        if (e.empty()) return Enclosure(ExtReal(0.0));
        double point_best = 0.0;
        bool point_inf = false;
        auto consider_point = [&](double x) {
            if (m_ && !(m_->atom_mass_at(x) > 0.0)) return;
            ExtReal g = ext_div(ExtReal(std::max(query(num_, num_q_, x), 0.0)),
                                ExtReal(std::max(query(den_, den_q_, x), 0.0)));
            if (g.is_infinite())
                point_inf = true;
            else
                point_best = std::max(point_best, g.value());
        };
        if (e.left_closed) consider_point(e.left);
        if (e.right_closed && e.right != e.left) consider_point(e.right);

        std::vector<double> cuts{e.left};
        for (double k : num_.knots())
            if (k > e.left && k < e.right) cuts.push_back(k);
        for (double k : den_.knots())
            if (k > e.left && k < e.right) cuts.push_back(k);
        if (m_)
            for (const Atom& at : m_->atoms())
                if (at.position > e.left && at.position < e.right)
                    cuts.push_back(at.position);
        std::vector<double> db = m_ ? m_->density_breaks() : std::vector<double>{};
        for (double k : db)
            if (k > e.left && k < e.right) cuts.push_back(k);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        cuts.push_back(e.right);

        for (std::size_t i = 1; i + 1 < cuts.size(); ++i) {
            if (m_) {
                consider_point(cuts[i]);
            } else {
                // plain sup: interior knot values participate
                ExtReal g = ext_div(ExtReal(std::max(query(num_, num_q_, cuts[i]), 0.0)),
                                    ExtReal(std::max(query(den_, den_q_, cuts[i]), 0.0)));
                if (g.is_infinite())
                    point_inf = true;
                else
                    point_best = std::max(point_best, g.value());
            }
        }
        if (point_inf) return Enclosure::infinite();

        std::vector<SupCell> cells;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double s = cuts[i], t = cuts[i + 1];
            if (m_) {
                bool has_density = m_->density_right_of(s) > 0.0;
                // sub-piece of a density piece: breaks included above
                if (!has_density) continue;
            }
            cells.push_back(make_cell(s, t));
            if (cells.back().enc_lo == inf) return Enclosure::infinite();
        }

        double lo = point_best, hi = point_best;
        for (const auto& c : cells) {
            lo = std::max(lo, c.enc_lo);
            hi = std::max(hi, c.enc_hi);
        }
        auto done = [&]() {
            if (std::isinf(hi)) return std::isinf(lo);
            return hi - lo <= tol * std::max(hi, 1.0);
        };
        using QE = std::pair<double, std::size_t>;
        std::priority_queue<QE> queue;
        for (std::size_t i = 0; i < cells.size(); ++i)
            queue.push({cells[i].enc_hi, i});
        std::size_t splits = 0;
        while (!done()) {
            if (queue.empty() || splits++ > max_cells)
                throw ToleranceNotMet("ratio supremum: refinement budget exhausted");
            auto [chi, idx] = queue.top();
            queue.pop();
            if (chi != cells[idx].enc_hi) continue;  // stale
            if (cells[idx].enc_hi - cells[idx].enc_lo <= 0.0) continue;
            SupCell cur = cells[idx];
            double mid = cur.lo + (cur.hi - cur.lo) / 2.0;
            if (!(mid > cur.lo && mid < cur.hi)) {
                // unsplittable ulp-wide cell: collapse to its sampled value
                cells[idx].enc_hi = cells[idx].enc_lo;
            } else {
                cells[idx] = make_cell(cur.lo, mid);
                cells.push_back(make_cell(mid, cur.hi));
                if (cells[idx].enc_lo == inf || cells.back().enc_lo == inf)
                    return Enclosure::infinite();
                queue.push({cells[idx].enc_hi, idx});
                queue.push({cells.back().enc_hi, cells.size() - 1});
            }
            lo = point_best;
            hi = point_best;
            for (const auto& c : cells) {
                lo = std::max(lo, c.enc_lo);
                hi = std::max(hi, c.enc_hi);
            }
        }
        return Enclosure(ExtReal(lo), ExtReal(std::isinf(hi) ? inf : hi));
    }

private:
    SupCell make_cell(double s, double t) const {
        SupCell c;
        c.lo = s;
        c.hi = t;
        c.nc = num_.cell_index_right_of(s);
        c.dc = den_.cell_index_right_of(s);
        const PowerForm& N = num_.cell(c.nc);
        const PowerForm& D = den_.cell(c.dc);
        double n_lo = N.eval(s), n_hi = N.eval(t);
        double d_lo = D.eval(s), d_hi = D.eval(t);
        double nmax = std::max(std::max(n_lo, n_hi), 0.0);
        double dmin = std::max(std::min(d_lo, d_hi), 0.0);
        double g_left = ratio(std::max(n_lo, 0.0), std::max(d_lo, 0.0));
        double g_right = ratio(std::max(n_hi, 0.0), std::max(d_hi, 0.0));
        c.enc_lo = std::max(g_left, g_right);
        c.enc_hi = ratio(nmax, dmin);
        // Bare power forms admit at most one interior critical point of the
        // ratio (the log-derivative equation is linear), so the supremum over
        // the cell is exactly the best of the edges and that point.
        if (std::isfinite(c.enc_hi) && c.enc_hi > c.enc_lo && dmin > 0.0) {
            auto bare = [](const PowerForm& f) {
                return f.is_constant() ||
                       (f.shift == 0.0 && f.scale > 0.0 && f.exponent != 0.0);
            };
            if (bare(N) && bare(D)) {
                double cand = c.enc_lo;
                bool n_flat = N.is_constant();
                bool d_flat = D.is_constant();
                if (!n_flat && !d_flat && N.exponent != D.exponent) {
                    double cN = N.b0 - N.slope * N.anchor;
                    double cD = D.b0 - D.slope * D.anchor;
                    double denom = N.slope * D.slope * (N.exponent - D.exponent);
                    if (denom != 0.0) {
                        double xs = (D.exponent * D.slope * cN -
                                     N.exponent * N.slope * cD) /
                                    denom;
                        if (xs > s && xs < t)
                            cand = std::max(cand, ratio(std::max(N.eval(xs), 0.0),
                                                        std::max(D.eval(xs), 0.0)));
                    }
                }
                c.enc_lo = cand;
                c.enc_hi = cand;
                return c;
            }
        }
        if (std::isinf(c.enc_hi) && !std::isinf(c.enc_lo)) {
            // denominator vanishes at one edge; settle exactly via the
            // pure-power forms
            bool den_zero_left = d_lo <= 0.0;
            double edge = den_zero_left ? s : t;
            double n_edge = den_zero_left ? n_lo : n_hi;
            if (n_edge > 0.0) {
                c.enc_lo = c.enc_hi = inf;
                return c;
            }
            auto np = as_pure_power(num_.cell(c.nc), edge, den_zero_left);
            auto dp = as_pure_power(den_.cell(c.dc), edge, den_zero_left);
            if (np.ok && dp.ok && np.shift == 0.0 && dp.shift == 0.0 && dp.c > 0.0) {
                double delta = np.expo - dp.expo;
                double coef = np.c / dp.c;
                if (delta < 0.0) {
                    c.enc_lo = c.enc_hi = coef == 0.0 ? 0.0 : inf;
                } else if (delta == 0.0) {
                    c.enc_lo = std::max(c.enc_lo, coef);
                    c.enc_hi = std::max(c.enc_lo, coef);
                } else {
                    double far = coef * std::pow(t - s, delta);
                    c.enc_lo = std::max(c.enc_lo, far);
                    c.enc_hi = c.enc_lo;
                }
                return c;
            }
            if (nmax == 0.0) {
                c.enc_lo = c.enc_hi = 0.0;
                return c;
            }
            throw ToleranceNotMet(
                "ratio supremum: vanishing denominator without a power form");
        }
        return c;
    }

    static double ratio(double n, double d) {
        if (n == 0.0) return 0.0;
        if (d == 0.0) return inf;
        if (std::isinf(d)) return 0.0;
        return n / d;
    }

    const MonotoneFunction& num_;
    PointQuery num_q_;
    const MonotoneFunction& den_;
    PointQuery den_q_;
    const Measure* m_;  // esssup with respect to this measure; nullptr = plain sup
};

}  // namespace detail

enum class VanishingVerdict { satisfied, violated, not_applicable };

inline const char* verdict_name(VanishingVerdict v) {
    switch (v) {
        case VanishingVerdict::satisfied: return "satisfied";
        case VanishingVerdict::violated: return "violated";
        default: return "not-applicable";
    }
}

/// Necessary support condition: with x_N the first point of the sequence
/// (the positivity frontier when the head is truncated), w must vanish
/// mu-a.e. on (a, x_N] whenever x_N > a.
inline VanishingVerdict vanishing_condition(const ProblemSpec& spec,
                                            const DiscretizingSequence& d) {
    double xN = d.head_truncated() ? d.positivity_start() : d.points().front();
    if (!(xN > spec.domain.a)) return VanishingVerdict::not_applicable;
    ExtReal head = norm(spec.w, spec.p, EndpointedInterval::left_open(spec.domain.a, xN),
                        spec.mu);
    return head.is_zero() ? VanishingVerdict::satisfied : VanishingVerdict::violated;
}

/// Discrete characterization constant with a certified bound on the part of
/// the ideal doubly-infinite sequence discarded by head truncation.
struct DiscreteConstant {
    ExtReal stored_value;  // ell^rho norm over the stored range
    ExtReal tail_bound;    // certified bound for the discarded head terms
    ExtReal total;         // combination of both (upper bound for the full A)
    bool truncated = false;
};

inline DiscreteConstant discrete_A(const ProblemSpec& spec,
                                   const DiscretizingSequence& d,
                                   double tol = 1e-9) {
    Exponent rho = holder_rho(spec.p, spec.q);
    auto js = covering_intervals(d);
    auto uvals = d.phi_right_values();
    std::vector<double> terms(js.size());
    for (std::size_t k = 0; k < js.size(); ++k) {
        ExtReal wk = norm(spec.w, spec.p, js[k], spec.mu);
        terms[k] = ext_div(wk, ExtReal(uvals[k])).value();
    }
    DiscreteConstant out{lq_norm(terms, rho), ExtReal(0.0), ExtReal(0.0), false};

    if (d.head_truncated()) {
        out.truncated = true;
        // Ideal continuation below the seed: every discarded term obeys
        // T_k <= 2 * omega(x_{k+1}) / phi(x_{k+1}-) with the x's doubling
        // phi, all inside (z, seed].
        double z = d.positivity_start();
        double s = d.points().front();
        MonotoneFunction omega =
            cumulative_norm(spec.w, spec.p, spec.mu, CumulativeSide::left_anchored);
        if (norm(spec.w, spec.p, EndpointedInterval::left_open(spec.domain.a, s),
                 spec.mu)
                .is_zero()) {
            out.tail_bound = ExtReal(0.0);
        } else if (rho.is_infinite()) {
            detail::RatioSup sup(omega, detail::PointQuery::value, d.phi(),
                                 detail::PointQuery::left_limit, nullptr);
            Enclosure g = sup.over(EndpointedInterval::left_open(z, s), tol);
            out.tail_bound = ext_mul(ExtReal(2.0), g.hi);
        } else {
            // sum_k T_k^r <= 2^r * 2/(1-4^-r) * integral of omega^r against
            // d(-phi^-r) over (z, x_{N+2}]: each discarded term is dominated
            // by the measure of the two-steps-ahead window, and those windows
            // overlap at most twice.
            double r = rho.value();
            double upto = d.points()[std::min<std::size_t>(2, d.points().size() - 1)];
            MonotoneFunction F = omega.power_transform(r, 1.0, 0.0);
            MonotoneFunction psi = d.phi().power_transform(-r, -1.0, 0.0);
            Enclosure integral =
                ls_integral(F, psi, EndpointedInterval::left_open(z, upto), tol);
            double factor = 2.0 / (1.0 - std::pow(4.0, -r));
            out.tail_bound = ext_mul(
                ExtReal(2.0), ext_pow(ext_mul(ExtReal(factor), integral.hi), 1.0 / r));
        }
    }

    if (rho.is_infinite()) {
        out.total = std::max(out.stored_value, out.tail_bound);
    } else {
        double r = rho.value();
        out.total = ext_pow(ext_add(ext_pow(out.stored_value, r),
                                    ext_pow(out.tail_bound, r)),
                            1.0 / r);
    }
    return out;
}

/// Supremum-type constant for q <= p:
/// ess sup_{x, mu} ||w||_{p,(a,x],mu} / ||u||_{q,(a,x),nu}.
inline Enclosure constant_A1(const ProblemSpec& spec, double tol) {
    if (regime(spec.p, spec.q) != Regime::qlep)
        throw DomainError("constant_A1: requires q <= p");
    MonotoneFunction omega =
        cumulative_norm(spec.w, spec.p, spec.mu, CumulativeSide::left_anchored);
    MonotoneFunction phi =
        cumulative_norm(spec.u, spec.q, spec.nu, CumulativeSide::left_anchored);
    detail::RatioSup sup(omega, detail::PointQuery::value, phi,
                         detail::PointQuery::left_limit, &spec.mu);
    return sup.over(EndpointedInterval::open(spec.domain.a, spec.domain.b), tol);
}

/// Integral-type constant for p < q < inf:
/// ( integral ||w||_{p,(a,x],mu}^r d(-||u||_{q,(a,x],nu}^{-r}) )^{1/r}
///   + ||w||_{p,(a,b),mu} / ||u||_{q,(a,b),nu},     1/r = 1/p - 1/q.
/// An infinite plateau of the integrator under nonzero w means the constant
/// is infinite (the inequality fails); that verdict is returned as [inf,inf].
inline Enclosure constant_A2(const ProblemSpec& spec, double tol) {
    if (regime(spec.p, spec.q) != Regime::pltq_fin)
        throw DomainError("constant_A2: requires p < q < inf");
    double r = 1.0 / (spec.p.reciprocal() - spec.q.reciprocal());
    MonotoneFunction omega =
        cumulative_norm(spec.w, spec.p, spec.mu, CumulativeSide::left_anchored);
    MonotoneFunction phi =
        cumulative_norm(spec.u, spec.q, spec.nu, CumulativeSide::left_anchored);
    MonotoneFunction F = omega.power_transform(r, 1.0, 0.0);
    MonotoneFunction psi = phi.power_transform(-r, -1.0, 0.0);
    ExtReal boundary = ext_div(ExtReal(omega.at_right_end()),
                               ExtReal(phi.at_right_end()));
    EndpointedInterval whole = EndpointedInterval::open(spec.domain.a, spec.domain.b);
    for (double t = tol; ; t /= 16.0) {
        Enclosure integral(ExtReal(0.0));
        try {
            integral = ls_integral(F, psi, whole, t);
        } catch (const ConventionViolation&) {
            return Enclosure::infinite();
        }
        Enclosure a2 = pow_enclosure(integral, 1.0 / r) +
                       Enclosure(boundary, boundary);
        if (a2.is_infinite() || a2.width() <= tol * std::max(a2.hi.value(), 1.0))
            return a2;
        if (t < 1e-18)
            throw ToleranceNotMet("constant_A2: cannot reach requested width");
    }
}

/// Exact constant for q = inf, p < inf:
/// ( integral (w(x) / ||u||_{inf,(a,x),nu})^p dmu(x) )^{1/p}.
inline Enclosure constant_A3(const ProblemSpec& spec) {
    if (regime(spec.p, spec.q) != Regime::q_inf)
        throw DomainError("constant_A3: requires q = inf, p < inf");
    MonotoneFunction ubar = cumulative_norm(spec.u, Exponent::infinity(), spec.nu,
                                            CumulativeSide::left_anchored);
    double pe = spec.p.value();
    double total = 0.0;
    bool infinite = false;
    auto add = [&](double wv, double denom, double mass) {
        ExtReal g = ext_div(ExtReal(wv), ExtReal(denom));
        if (g.is_zero() || mass == 0.0) return;
        if (g.is_infinite()) {
            infinite = true;
            return;
        }
        total += std::pow(g.value(), pe) * mass;
    };
    for (const Atom& at : spec.mu.atoms())
        add(spec.w.value(at.position), ubar.left_limit(at.position), at.mass);
    if (!spec.mu.density_breaks().empty()) {
        double lo = spec.mu.density_breaks().front();
        double hi = spec.mu.density_breaks().back();
        auto structural = spec.mu.structural_breaks();
        auto cuts = detail::cut_points(
            lo, hi, {&spec.w.breaks(), &ubar.knots(), &structural});
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double d = spec.mu.density_right_of(cuts[i]);
            if (d == 0.0) continue;
            // ubar is constant on the open refined piece
            double piece_den = ubar.cell(ubar.cell_index_right_of(cuts[i])).eval(cuts[i]);
            add(spec.w.value_right_of(cuts[i]), piece_den, d * (cuts[i + 1] - cuts[i]));
        }
    }
    if (infinite) return Enclosure::infinite();
    ExtReal v = ext_pow(ExtReal(total), 1.0 / pe);
    return Enclosure(v, v);
}

/// Radon-Nikodym reduction of a three-measure instance: w = (d lambda / d mu)^{1/p}
/// as a step function carrying exact atom ratios. Throws
/// NotAbsolutelyContinuous naming a witnessing set when lambda is not
/// dominated by mu.
inline StepFunction reduce_three_measure(const Measure& lambda, const Measure& mu,
                                         Exponent p) {
    if (lambda.domain() != mu.domain())
        throw DomainError("reduce_three_measure: domains differ");
    const Interval& dom = lambda.domain();
    double pinv = p.reciprocal();

    for (const Atom& at : lambda.atoms())
        if (!(mu.atom_mass_at(at.position) > 0.0))
            throw NotAbsolutelyContinuous(
                "lambda has an atom at " + std::to_string(at.position) +
                " where mu({x}) = 0");

    std::vector<double> cuts{dom.a};
    auto add_cut = [&](double x) {
        if (x > dom.a && x < dom.b) cuts.push_back(x);
    };
    for (double x : lambda.density_breaks()) add_cut(x);
    for (double x : mu.density_breaks()) add_cut(x);
    for (const Atom& at : mu.atoms()) add_cut(at.position);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.push_back(dom.b);

    std::vector<double> values(cuts.size() - 1, 0.0);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double ld = lambda.density_right_of(cuts[i]);
        double md = mu.density_right_of(cuts[i]);
        if (ld > 0.0 && md == 0.0)
            throw NotAbsolutelyContinuous(
                "lambda has density on (" + std::to_string(cuts[i]) + ", " +
                std::to_string(cuts[i + 1]) + ") where mu has none");
        values[i] = (ld > 0.0 && md > 0.0)
                        ? (p.is_infinite() ? 1.0 : std::pow(ld / md, pinv))
                        : 0.0;
    }
    StepFunction w(dom, cuts, std::move(values));
    // density ratios are immaterial at single points, but atom positions
    // must carry the exact atom-mass ratio
    for (const Atom& at : mu.atoms()) {
        double ratio = lambda.atom_mass_at(at.position) / at.mass;
        double v = p.is_infinite() ? (ratio > 0.0 ? 1.0 : 0.0) : std::pow(ratio, pinv);
        w.set_point_value(at.position, v);
    }
    return w;
}

/// Direct form of the dual supremum constant,
/// ess sup_{x, mu} ||w||_{p,[x,b),mu} / ||u||_{q,(x,b),nu}; evaluated as a
/// cross-check against constant_A1 of the reflected problem.
inline Enclosure constant_B1_direct(const ProblemSpec& spec, double tol) {
    MonotoneFunction omega =
        cumulative_norm(spec.w, spec.p, spec.mu, CumulativeSide::right_anchored);
    MonotoneFunction phi =
        cumulative_norm(spec.u, spec.q, spec.nu, CumulativeSide::right_anchored);
    detail::RatioSup sup(omega, detail::PointQuery::value, phi,
                         detail::PointQuery::right_limit, &spec.mu);
    return sup.over(EndpointedInterval::open(spec.domain.a, spec.domain.b), tol);
}

/// Direct form of the dual integral constant,
/// ( integral ||w||_{p,[x,b),mu}^r d(||u||_{q,[x,b),nu}^{-r}) )^{1/r}
///   + ||w||_{p,(a,b),mu} / ||u||_{q,(a,b),nu}.
inline Enclosure constant_B2_direct(const ProblemSpec& spec, double tol) {
    if (regime(spec.p, spec.q) != Regime::pltq_fin)
        throw DomainError("constant_B2_direct: requires p < q < inf");
    double r = 1.0 / (spec.p.reciprocal() - spec.q.reciprocal());
    MonotoneFunction omega =
        cumulative_norm(spec.w, spec.p, spec.mu, CumulativeSide::right_anchored);
    MonotoneFunction phi =
        cumulative_norm(spec.u, spec.q, spec.nu, CumulativeSide::right_anchored);
    MonotoneFunction F = omega.power_transform(r, 1.0, 0.0);
    MonotoneFunction psi = phi.power_transform(-r, 1.0, 0.0);  // non-decreasing
    ExtReal boundary =
        ext_div(ExtReal(omega.at_left_end()), ExtReal(phi.at_left_end()));
    EndpointedInterval whole = EndpointedInterval::open(spec.domain.a, spec.domain.b);
    for (double t = tol;; t /= 16.0) {
        Enclosure integral(ExtReal(0.0));
        try {
            integral = ls_integral(F, psi, whole, t);
        } catch (const ConventionViolation&) {
            return Enclosure::infinite();
        }
        Enclosure b2 = pow_enclosure(integral, 1.0 / r) + Enclosure(boundary, boundary);
        if (b2.is_infinite() || b2.width() <= tol * std::max(b2.hi.value(), 1.0))
            return b2;
        if (t < 1e-18)
            throw ToleranceNotMet("constant_B2_direct: cannot reach requested width");
    }
}

/// Direct form of the dual q = inf constant,
/// ( integral (w(x) / ||u||_{inf,(x,b),nu})^p dmu(x) )^{1/p}.
inline Enclosure constant_B3_direct(const ProblemSpec& spec) {
    if (regime(spec.p, spec.q) != Regime::q_inf)
        throw DomainError("constant_B3_direct: requires q = inf, p < inf");
    MonotoneFunction ubar = cumulative_norm(spec.u, Exponent::infinity(), spec.nu,
                                            CumulativeSide::right_anchored);
    double pe = spec.p.value();
    double total = 0.0;
    bool infinite = false;
    auto add = [&](double wv, double denom, double mass) {
        ExtReal g = ext_div(ExtReal(wv), ExtReal(denom));
        if (g.is_zero() || mass == 0.0) return;
        if (g.is_infinite()) {
            infinite = true;
            return;
        }
        total += std::pow(g.value(), pe) * mass;
    };
    for (const Atom& at : spec.mu.atoms())
        add(spec.w.value(at.position), ubar.right_limit(at.position), at.mass);
    if (!spec.mu.density_breaks().empty()) {
        double lo = spec.mu.density_breaks().front();
        double hi = spec.mu.density_breaks().back();
        auto structural = spec.mu.structural_breaks();
        auto cuts = detail::cut_points(
            lo, hi, {&spec.w.breaks(), &ubar.knots(), &structural});
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double d = spec.mu.density_right_of(cuts[i]);
            if (d == 0.0) continue;
            double piece_den = ubar.cell(ubar.cell_index_right_of(cuts[i])).eval(cuts[i]);
            add(spec.w.value_right_of(cuts[i]), piece_den, d * (cuts[i + 1] - cuts[i]));
        }
    }
    if (infinite) return Enclosure::infinite();
    ExtReal v = ext_pow(ExtReal(total), 1.0 / pe);
    return Enclosure(v, v);
}

struct AnalysisOptions {
    double tol = 1e-6;
    std::size_t max_terms = 4096;
    double eps_rel = default_eps_rel;
    bool dual_cross_check = true;
};

struct ConstantsReport {
    Regime reg = Regime::qlep;
    OperatorDirection direction = OperatorDirection::forward;
    std::string constant_name;
    Enclosure constant{ExtReal(0.0)};
    DiscreteConstant discrete;
    VanishingVerdict vanishing = VanishingVerdict::not_applicable;
    bool inequality_holds = false;
    std::optional<Enclosure> dual_direct;  // mirrored formula, dual runs only
    std::vector<std::string> warnings;
};

/// Full characterization of one instance: discretize, check the support
/// condition, evaluate the discrete constant with its truncation
/// certificate, and enclose the regime constant. Dual instances are handled
/// by reflection, with the direct mirrored formula evaluated as a
/// cross-check.
inline ConstantsReport analyze(const ProblemSpec& spec,
                               const AnalysisOptions& opt = {}) {
    ConstantsReport rep;
    rep.reg = regime(spec.p, spec.q);
    rep.direction = spec.direction;
    bool dual = spec.direction == OperatorDirection::dual;
    ProblemSpec base = dual ? reflect(spec) : spec;

    MonotoneFunction phi =
        cumulative_norm(base.u, base.q, base.nu, CumulativeSide::left_anchored)
            .right_continuous();
    DiscretizingSequence d = discretizing_sequence(phi, opt.max_terms, opt.eps_rel);
    rep.vanishing = vanishing_condition(base, d);
    rep.discrete = discrete_A(base, d, opt.tol);
    if (rep.discrete.truncated)
        rep.warnings.push_back("discretization head truncated; discrete constant "
                               "carries a certified tail bound");

    switch (rep.reg) {
        case Regime::qlep:
            rep.constant_name = dual ? "B1" : "A1";
            rep.constant = constant_A1(base, opt.tol);
            rep.warnings.push_back(
                "supremum constant taken as an essential supremum with respect "
                "to the left-hand measure");
            break;
        case Regime::pltq_fin:
            rep.constant_name = dual ? "B2" : "A2";
            rep.constant = constant_A2(base, opt.tol);
            break;
        default:
            rep.constant_name = dual ? "B3" : "A3";
            rep.constant = constant_A3(base);
            break;
    }
    rep.inequality_holds = !rep.constant.is_infinite() &&
                           rep.vanishing != VanishingVerdict::violated;
    if (dual && opt.dual_cross_check) {
        switch (rep.reg) {
            case Regime::qlep:
                rep.dual_direct = constant_B1_direct(spec, opt.tol);
                break;
            case Regime::pltq_fin:
                rep.dual_direct = constant_B2_direct(spec, opt.tol);
                break;
            default:
                rep.dual_direct = constant_B3_direct(spec);
                break;
        }
    }
    return rep;
}

}  // namespace revhardy
