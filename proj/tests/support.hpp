#pragma once

// Shared generators and independent reference computations for the test
// suites. Everything is seeded explicitly so failures replay.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "revhardy/revhardy.hpp"

namespace testsupport {

using namespace revhardy;

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(g);
    }
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
    std::size_t index(std::size_t n) {  // 0..n-1
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(g);
    }
    bool chance(double p) { return uniform(0.0, 1.0) < p; }

    /// k distinct sorted points strictly inside (lo, hi).
    std::vector<double> interior_points(double lo, double hi, std::size_t k) {
        std::vector<double> out;
        while (out.size() < k) {
            double x = uniform(lo, hi);
            if (x > lo && x < hi &&
                std::find(out.begin(), out.end(), x) == out.end())
                out.push_back(x);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

inline StepFunction random_step(Rng& rng, const Interval& dom,
                                std::size_t max_pieces, bool allow_zero_pieces) {
    std::size_t n = 1 + rng.index(max_pieces);
    double lo = std::isfinite(dom.a) ? dom.a : -4.0;
    double hi = std::isfinite(dom.b) ? dom.b : 4.0;
    auto mids = rng.interior_points(lo, hi, n - 1);
    std::vector<double> breaks{dom.a};
    breaks.insert(breaks.end(), mids.begin(), mids.end());
    breaks.push_back(dom.b);
    std::vector<double> values(n);
    for (double& v : values)
        v = (allow_zero_pieces && rng.chance(0.25)) ? 0.0
                                                    : rng.log_uniform(1.0 / 16, 16.0);
    return StepFunction(dom, std::move(breaks), std::move(values));
}

inline Measure random_measure(Rng& rng, const Interval& dom, std::size_t max_atoms,
                              std::size_t max_density_pieces,
                              bool allow_zero_density = true) {
    double lo = std::isfinite(dom.a) ? dom.a : -4.0;
    double hi = std::isfinite(dom.b) ? dom.b : 4.0;
    std::size_t na = rng.index(max_atoms + 1);
    std::vector<Atom> atoms;
    for (double x : rng.interior_points(lo, hi, na))
        atoms.push_back({x, rng.log_uniform(1.0 / 16, 8.0)});
    std::vector<double> db, dv;
    if (max_density_pieces > 0 && rng.chance(0.9)) {
        std::size_t np = 1 + rng.index(max_density_pieces);
        auto mids = rng.interior_points(lo, hi, np - 1);
        db.push_back(lo);
        db.insert(db.end(), mids.begin(), mids.end());
        db.push_back(hi);
        dv.resize(np);
        for (double& v : dv)
            v = (allow_zero_density && rng.chance(0.25))
                    ? 0.0
                    : rng.log_uniform(1.0 / 8, 8.0);
    }
    return Measure(dom, std::move(atoms), std::move(db), std::move(dv));
}

/// Measure with strictly positive mass arbitrarily close to the left end.
inline Measure random_measure_touching_left(Rng& rng, const Interval& dom,
                                            std::size_t max_atoms,
                                            std::size_t max_density_pieces) {
    Measure m = random_measure(rng, dom, max_atoms, max_density_pieces, false);
    std::vector<double> db = m.density_breaks(), dv = m.density_values();
    double lo = std::isfinite(dom.a) ? dom.a : -4.0;
    if (db.empty()) {
        db = {lo, std::isfinite(dom.b) ? dom.b : 4.0};
        dv = {rng.log_uniform(0.25, 4.0)};
    } else if (db.front() != lo) {
        db.insert(db.begin(), lo);
        dv.insert(dv.begin(), rng.log_uniform(0.25, 4.0));
    }
    if (dv.front() == 0.0) dv.front() = rng.log_uniform(0.25, 4.0);
    return Measure(dom, m.atoms(), std::move(db), std::move(dv));
}

/// u with a strictly positive value on its first piece.
inline StepFunction positive_head(StepFunction f, Rng& rng) {
    std::vector<double> v = f.values();
    if (v.front() == 0.0) v.front() = rng.log_uniform(0.25, 4.0);
    StepFunction out(f.domain(), f.breaks(), v);
    return out;
}

enum class RegimeKind { qlep, pltq, qinf };

inline std::pair<Exponent, Exponent> random_exponents(Rng& rng, RegimeKind k) {
    switch (k) {
        case RegimeKind::qlep: {
            static const std::pair<double, double> menu[] = {
                {2.0, 2.0}, {3.0, 2.0}, {1.0, 1.0},  {2.0, 1.0},
                {1.0, 0.5}, {0.5, 0.5}, {inf, 2.0},  {inf, inf}};
            auto [p, q] = menu[rng.index(std::size(menu))];
            return {Exponent(ExtReal(p)), Exponent(ExtReal(q))};
        }
        case RegimeKind::pltq: {
            static const std::pair<double, double> menu[] = {
                {1.0, 2.0}, {0.5, 1.0}, {2.0, 3.0}, {1.0, 1.5}, {0.5, 2.0}};
            auto [p, q] = menu[rng.index(std::size(menu))];
            return {Exponent(ExtReal(p)), Exponent(ExtReal(q))};
        }
        default: {
            static const double menu[] = {0.5, 1.0, 2.0, 3.0};
            return {Exponent(ExtReal(menu[rng.index(std::size(menu))])),
                    Exponent::infinity()};
        }
    }
}

/// Random instance with a finite characterization constant. For q <= p the
/// cumulative norm of u is made to start with a jump (an early nu-atom) and
/// w is zeroed below that point, which keeps the supremum constant finite;
/// for p < q a continuous start is fine and both kinds are generated.
inline ProblemSpec random_admissible_spec(Rng& rng, RegimeKind k,
                                          OperatorDirection dir) {
    Interval dom = rng.chance(0.3) ? Interval(-1.0, 1.5) : Interval(0.0, 2.0);
    auto [p, q] = random_exponents(rng, k);

    Measure mu = random_measure(rng, dom, 2, 3);
    if (mu.is_zero()) mu = Measure::lebesgue(dom);
    StepFunction w = random_step(rng, dom, 3, true);
    StepFunction u = positive_head(random_step(rng, dom, 3, false), rng);

    bool jump_start = k == RegimeKind::qlep || rng.chance(0.5);
    Measure nu = Measure::lebesgue(dom);
    double z = dom.a;
    if (jump_start) {
        double pos = dom.a + (dom.b - dom.a) * rng.uniform(0.05, 0.3);
        std::vector<Atom> atoms{{pos, rng.log_uniform(0.25, 4.0)}};
        Measure tail = random_measure(rng, dom, 1, 2);
        for (const Atom& at : tail.atoms())
            if (at.position > pos) atoms.push_back(at);
        std::vector<double> db = tail.density_breaks(), dv = tail.density_values();
        // density must not reach below the atom
        std::vector<double> db2, dv2;
        for (std::size_t i = 0; i + 1 < db.size(); ++i)
            if (db[i] >= pos) {
                if (db2.empty()) db2.push_back(db[i]);
                db2.push_back(db[i + 1]);
                dv2.push_back(dv[i]);
            }
        nu = Measure(dom, std::move(atoms), std::move(db2), std::move(dv2));
        z = pos;
    } else {
        nu = random_measure_touching_left(rng, dom, 2, 3);
    }
    if (z > dom.a) {
        // zero w below and at z so the support condition holds
        std::vector<double> breaks{dom.a};
        std::vector<double> values;
        for (std::size_t i = 0; i + 1 < w.breaks().size(); ++i) {
            double piece_hi = w.breaks()[i + 1];
            if (piece_hi <= z) continue;
            if (breaks.back() < z && piece_hi > z) {
                breaks.push_back(z);
                values.push_back(0.0);
            }
            if (piece_hi > breaks.back()) {
                breaks.push_back(piece_hi);
                values.push_back(w.values()[i]);
            }
        }
        if (breaks.size() < 2) {
            breaks = {dom.a, dom.b};
            values = {0.0};
        }
        w = StepFunction(dom, breaks, values);
        if (dom.contains(z)) w.set_point_value(z, 0.0);
    }

    ProblemSpec spec(dom, p, q, OperatorDirection::forward, mu, nu, u, w);
    return dir == OperatorDirection::forward ? spec : reflect(spec);
}

/// Riemann-sum reference for || f ||_{p,e,m} on bounded intervals: density
/// part by midpoint sampling, atoms exactly.
inline double riemann_norm(const std::function<double(double)>& f, double p,
                           const EndpointedInterval& e, const Measure& m,
                           std::size_t cells = 200000) {
    double total = 0.0;
    for (const Atom& at : m.atoms())
        if (e.contains(at.position)) total += std::pow(f(at.position), p) * at.mass;
    if (!m.density_breaks().empty()) {
        double lo = std::max(e.left, m.density_breaks().front());
        double hi = std::min(e.right, m.density_breaks().back());
        if (hi > lo) {
            double h = (hi - lo) / static_cast<double>(cells);
            for (std::size_t i = 0; i < cells; ++i) {
                double x = lo + (static_cast<double>(i) + 0.5) * h;
                total += std::pow(f(x), p) * m.density_right_of(x) * h;
            }
        }
    }
    return std::pow(total, 1.0 / p);
}

inline bool close(double a, double b, double rel = 1e-9, double abs = 1e-12) {
    return std::fabs(a - b) <= std::max(abs, rel * std::max(std::fabs(a), std::fabs(b)));
}

}  // namespace testsupport
