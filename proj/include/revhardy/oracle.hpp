#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "revhardy/characterize.hpp"
#include "revhardy/discretize.hpp"
#include "revhardy/norms.hpp"
#include "revhardy/sequences.hpp"
#include "revhardy/step_function.hpp"

namespace revhardy {

/// Quotient whose supremum over admissible g is the best constant:
/// ||g w||_{p,(a,b),mu} / || u(x) ||g||_{inf,S_x,mu} ||_{q,(a,b),nu}.
/// Exact on the computable class; 0/0 = 0 and positive/0 = +inf.
inline ExtReal ratio(const ProblemSpec& spec, const StepFunction& g) {
    ExtReal num = norm(pointwise(g, spec.w, PointwiseOp::product), spec.p,
                       EndpointedInterval::open(spec.domain.a, spec.domain.b),
                       spec.mu);
    StepFunction env = sup_envelope(g, spec.mu,
                                    spec.direction == OperatorDirection::forward
                                        ? EnvelopeDirection::tail
                                        : EnvelopeDirection::head);
    ExtReal den = norm(pointwise(spec.u, env, PointwiseOp::product), spec.q,
                       EndpointedInterval::open(spec.domain.a, spec.domain.b),
                       spec.nu);
    return ext_div(num, den);
}

/// Test functions driven by the discretization: indicators of the covering
/// intervals combined with the extremal coefficients of the discrete
/// embedding between the weighted sequence spaces.
inline std::vector<StepFunction> extremal_candidates(const ProblemSpec& spec,
                                                     const DiscretizingSequence& d) {
    if (spec.direction != OperatorDirection::forward)
        throw DomainError("extremal_candidates: expects the forward form");
    auto js = covering_intervals(d);
    auto uvals = d.phi_right_values();
    std::vector<double> W(js.size());
    for (std::size_t k = 0; k < js.size(); ++k)
        W[k] = norm(spec.w, spec.p, js[k], spec.mu).value();
    EmbeddingResult emb = embedding_norm(W, uvals, spec.p, spec.q);

    const auto& pts = d.points();
    std::vector<double> breaks;
    std::vector<double> values;
    if (pts.front() > spec.domain.a) {
        breaks.push_back(spec.domain.a);
        values.push_back(0.0);
    }
    breaks.insert(breaks.end(), pts.begin(), pts.end());
    values.insert(values.end(), emb.extremal.begin(), emb.extremal.end());
    StepFunction combined(spec.domain, breaks, values);

    std::size_t kmax = static_cast<std::size_t>(
        std::max_element(emb.extremal.begin(), emb.extremal.end()) -
        emb.extremal.begin());
    StepFunction best_indicator = StepFunction::indicator(spec.domain, js[kmax]);

    return {std::move(combined), std::move(best_indicator)};
}

struct OracleOptions {
    std::size_t grid = 512;
    std::size_t samples = 4096;
    std::uint64_t seed = 0;
    std::size_t max_terms = 4096;
    double eps_rel = default_eps_rel;
};

struct OracleResult {
    ExtReal c_lower{0.0};
    StepFunction witness;
    std::string strategy;
    std::size_t grid = 0;
    std::uint64_t seed = 0;
};

namespace detail {

/// Deterministic sample grid: structural breakpoints padded to the requested
/// size with uniform fill over the finite hull.
inline std::vector<double> sample_grid(const ProblemSpec& spec, std::size_t grid) {
    std::vector<double> pts;
    auto push_range = [&](const std::vector<double>& xs) {
        for (double x : xs)
            if (std::isfinite(x)) pts.push_back(x);
    };
    push_range(spec.u.breaks());
    push_range(spec.w.breaks());
    push_range(spec.mu.structural_breaks());
    push_range(spec.nu.structural_breaks());
    if (std::isfinite(spec.domain.a)) pts.push_back(spec.domain.a);
    if (std::isfinite(spec.domain.b)) pts.push_back(spec.domain.b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 2) throw DomainError("oracle: degenerate hull");
    while (pts.size() < grid) {
        // midpoint fill of the widest gap keeps the grid nested as it grows
        std::size_t gi = 0;
        double gw = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            if (pts[i + 1] - pts[i] > gw) {
                gw = pts[i + 1] - pts[i];
                gi = i;
            }
        double mid = pts[gi] + gw / 2.0;
        if (!(mid > pts[gi] && mid < pts[gi + 1])) break;
        pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(gi) + 1, mid);
    }
    return pts;
}

/// Monotone level profile from log-uniform decrements; scale-invariant in
/// the ratio, so only the shape matters.
inline std::vector<double> random_levels(std::mt19937_64& rng, std::size_t n,
                                         bool non_increasing) {
    std::uniform_real_distribution<double> dec(0.0, 8.0);  // halvings per step
    std::vector<double> lv(n);
    double cur = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        lv[i] = cur;
        cur *= std::pow(0.5, dec(rng));
    }
    if (!non_increasing) std::reverse(lv.begin(), lv.end());
    return lv;
}

}  // namespace detail

/// Deterministic maximization of the ratio over (1) the proof-driven
/// candidates, (2) monotone random step profiles on the refined grid,
/// (3) coordinate ascent on the best profile found. The support-condition
/// probe runs first so an infinite best constant is always detected.
inline OracleResult best_constant_estimate(const ProblemSpec& spec,
                                           const OracleOptions& opt = {}) {
    if (spec.direction == OperatorDirection::dual) {
        OracleResult res = best_constant_estimate(reflect(spec), opt);
        res.witness = res.witness.reflected();
        return res;
    }

    OracleResult best{ExtReal(0.0), StepFunction::constant(spec.domain, 0.0),
                      "none", opt.grid, opt.seed};
    auto consider = [&](const StepFunction& g, const char* strategy) {
        ExtReal r = ratio(spec, g);
        if (r > best.c_lower) {
            best.c_lower = r;
            best.witness = g;
            best.strategy = strategy;
        }
        return r;
    };

    MonotoneFunction phi =
        cumulative_norm(spec.u, spec.q, spec.nu, CumulativeSide::left_anchored)
            .right_continuous();
    DiscretizingSequence d = discretizing_sequence(phi, opt.max_terms, opt.eps_rel);

    // Dedicated probe: if u carries no mass next to a, the indicator of the
    // dead zone forces an infinite ratio unless w vanishes there.
    double xN = d.head_truncated() ? d.positivity_start() : d.points().front();
    if (xN > spec.domain.a) {
        StepFunction probe = StepFunction::indicator(
            spec.domain, EndpointedInterval::left_open(spec.domain.a, xN));
        ExtReal r = consider(probe, "support-probe");
        if (r.is_infinite()) return best;
    }

    for (const StepFunction& g : extremal_candidates(spec, d))
        consider(g, "proof-extremal");

    if (spec.q.is_infinite()) {
        // With q = inf the best constant is attained by the reciprocal of
        // the cumulative essential supremum of u.
        MonotoneFunction ubar = cumulative_norm(
            spec.u, Exponent::infinity(), spec.nu, CumulativeSide::left_anchored);
        const auto& kn = ubar.knots();
        double cap = 0.0;
        for (std::size_t i = 0; i < ubar.cell_count(); ++i) {
            double v = ubar.cell(i).eval(kn[i]);
            if (v > 0.0) {
                cap = 1.0 / v;
                break;
            }
        }
        std::vector<double> values(ubar.cell_count());
        for (std::size_t i = 0; i < ubar.cell_count(); ++i) {
            double v = ubar.cell(i).eval(kn[i]);
            values[i] = v > 0.0 ? 1.0 / v : cap;
        }
        StepFunction ginv(spec.domain, kn, values);
        for (std::size_t j = 1; j + 1 < kn.size(); ++j) {
            double lv = ubar.left_limit(kn[j]);
            ginv.set_point_value(kn[j], lv > 0.0 ? 1.0 / lv : cap);
        }
        consider(ginv, "supremum-inverse");
    }

    // Random monotone profiles on the sample grid, non-increasing for the
    // forward operator.
    std::vector<double> grid_pts = detail::sample_grid(spec, opt.grid);
    std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ULL + 0x85ebca6bULL);
    std::uniform_int_distribution<std::size_t> nsteps(1, 15);
    for (std::size_t s = 0; s < opt.samples; ++s) {
        std::size_t n = std::min(nsteps(rng), grid_pts.size() - 1);
        std::vector<double> chosen;
        std::uniform_int_distribution<std::size_t> pick(1, grid_pts.size() - 2);
        for (std::size_t i = 0; i < n && grid_pts.size() > 2; ++i)
            chosen.push_back(grid_pts[pick(rng)]);
        std::sort(chosen.begin(), chosen.end());
        chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
        std::vector<double> breaks{spec.domain.a};
        breaks.insert(breaks.end(), chosen.begin(), chosen.end());
        breaks.push_back(spec.domain.b);
        auto levels = detail::random_levels(rng, breaks.size() - 1, true);
        consider(StepFunction(spec.domain, breaks, levels), "random-monotone");
    }

    // Coordinate ascent over the piece levels of the best witness so far.
    if (!best.c_lower.is_infinite() && !best.c_lower.is_zero() &&
        best.witness.pieces() <= 128) {
        StepFunction cur = best.witness;
        for (double step : {2.0, 1.4142135623730951, 1.0905077326652577}) {
            for (int sweep = 0; sweep < 2; ++sweep) {
                for (std::size_t i = 0; i < cur.pieces(); ++i) {
                    for (double f : {step, 1.0 / step}) {
                        std::vector<double> vals(cur.values());
                        vals[i] *= f;
                        // rebuilt with the default breakpoint convention
                        StepFunction candidate(cur.domain(), cur.breaks(), vals);
                        ExtReal r = ratio(spec, candidate);
                        if (r > best.c_lower && !r.is_infinite()) {
                            best.c_lower = r;
                            best.witness = candidate;
                            best.strategy = "coordinate-ascent";
                            cur = candidate;
                        }
                    }
                }
            }
        }
    }
    return best;
}

}  // namespace revhardy
