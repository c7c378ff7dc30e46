#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "revhardy/errors.hpp"
#include "revhardy/extended_real.hpp"

namespace revhardy {

/// Finite weighted sequence {a_k w_k}, k in [first_index, first_index + n).
struct WeightedSequence {
    long first_index = 0;
    std::vector<double> terms;    // >= 0
    std::vector<double> weights;  // > 0, same length (empty means all ones)

    WeightedSequence(long first, std::vector<double> t, std::vector<double> w = {})
        : first_index(first), terms(std::move(t)), weights(std::move(w)) {
        if (!weights.empty() && weights.size() != terms.size())
            throw DomainError("WeightedSequence: weights/terms length mismatch");
        for (double x : terms)
            if (!(x >= 0.0)) throw DomainError("WeightedSequence: terms must be >= 0");
        for (double x : weights)
            if (!(x > 0.0)) throw DomainError("WeightedSequence: weights must be > 0");
    }

    std::vector<double> products() const {
        std::vector<double> out(terms);
        for (std::size_t i = 0; i < weights.size(); ++i) out[i] *= weights[i];
        return out;
    }
};

/// ell^q norm of a plain non-negative vector.
inline ExtReal lq_norm(const std::vector<double>& x, Exponent q) {
    if (x.empty()) return ExtReal(0.0);
    if (q.is_infinite()) return ExtReal(*std::max_element(x.begin(), x.end()));
    double qe = q.value();
    double total = 0.0;
    for (double v : x)
        if (v > 0.0) total += std::pow(v, qe);
    return ext_pow(ExtReal(total), 1.0 / qe);
}

inline ExtReal lq_norm(const WeightedSequence& s, Exponent q) {
    return lq_norm(s.products(), q);
}

struct EmbeddingResult {
    ExtReal norm;                  // exact best constant of the embedding
    std::vector<double> extremal;  // attains it, scaled to max entry 1
};

/// Exact norm of the embedding ell^q({U_k}) -> ell^p({W_k}) on a finite
/// range: ||W_k / U_k||_{ell^rho} with 1/rho = (1/p - 1/q)_+, together with
/// a maximizing sequence (the Hoelder equality profile for p < q, the argmax
/// indicator for q <= p).
inline EmbeddingResult embedding_norm(const std::vector<double>& W,
                                      const std::vector<double>& U, Exponent p,
                                      Exponent q) {
    if (W.size() != U.size() || W.empty())
        throw DomainError("embedding_norm: need equal nonempty ranges");
    for (double u : U)
        if (!(u > 0.0)) throw DomainError("embedding_norm: U must be positive");
    std::vector<double> ratio(W.size());
    for (std::size_t i = 0; i < W.size(); ++i) ratio[i] = W[i] / U[i];
    Exponent rho = holder_rho(p, q);
    ExtReal value = lq_norm(ratio, rho);

    std::vector<double> a(W.size(), 0.0);
    if (rho.is_infinite()) {
        std::size_t imax = static_cast<std::size_t>(
            std::max_element(ratio.begin(), ratio.end()) - ratio.begin());
        a[imax] = 1.0;
    } else {
        double r = rho.value();
        double e = q.is_infinite() ? 0.0 : r / q.value();
        for (std::size_t i = 0; i < W.size(); ++i)
            a[i] = (ratio[i] > 0.0 ? std::pow(ratio[i], e) : 0.0) / U[i];
        double m = *std::max_element(a.begin(), a.end());
        if (m > 0.0)
            for (double& v : a) v /= m;
        else
            a[0] = 1.0;  // W identically zero; any sequence attains 0
    }
    return {value, std::move(a)};
}

struct GeomDecay {
    double K;      // almost-monotonicity constant, >= 1
    double alpha;  // geometric ratio, > 1
    int L;         // index lag, >= 1
};

enum class GeomDirection { decreasing, increasing };

/// Check the defining inequalities directly for a given (alpha, L):
/// decreasing: alpha * s[k] <= s[k-L]; increasing: s[k] >= alpha * s[k-L].
inline bool admits_geom(const std::vector<double>& s, GeomDirection dir,
                        double alpha, int L) {
    for (std::size_t k = static_cast<std::size_t>(L); k < s.size(); ++k) {
        double lagged = s[k - static_cast<std::size_t>(L)];
        bool ok = dir == GeomDirection::decreasing ? alpha * s[k] <= lagged
                                                   : s[k] >= alpha * lagged;
        if (!ok) return false;
    }
    return true;
}

/// Smallest lag L (with at least one constrained pair) admitting some
/// alpha > 1, reported with the largest such alpha and the witnessing K.
inline std::optional<GeomDecay> detect_geom(const std::vector<double>& s,
                                            GeomDirection dir) {
    for (double x : s)
        if (!(x > 0.0)) throw DomainError("detect_geom: terms must be positive");
    std::size_t n = s.size();
    if (n < 2) return std::nullopt;
    double K = 1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double step = dir == GeomDirection::decreasing ? s[k + 1] / s[k]
                                                       : s[k] / s[k + 1];
        K = std::max(K, step);
    }
    for (int L = 1; L < static_cast<int>(n); ++L) {
        double alpha = inf;
        for (std::size_t k = static_cast<std::size_t>(L); k < n; ++k) {
            double lagged = s[k - static_cast<std::size_t>(L)];
            double r = dir == GeomDirection::decreasing ? lagged / s[k] : s[k] / lagged;
            alpha = std::min(alpha, r);
        }
        if (alpha > 1.0) return GeomDecay{K, alpha, L};
    }
    return std::nullopt;
}

enum class LeindlerMode { sum, sup };

struct LeindlerSides {
    ExtReal lhs;  // ell^q norm of tau_k * (partial sum or running sup of a)
    ExtReal rhs;  // ell^q norm of tau_k * a_k
};

/// Upper constant for lhs <= C * rhs derived from the geometric witnesses
/// by splitting partial sums into lag-L blocks: within a block the almost-
/// monotonicity constant contributes K^(L-1), across blocks the tau decay
/// leaves a geometric series in alpha.
inline double leindler_constant(const GeomDecay& g, Exponent q, LeindlerMode mode) {
    double KL = std::pow(g.K, static_cast<double>(g.L - 1));
    double L = static_cast<double>(g.L);
    if (q.is_infinite())
        return mode == LeindlerMode::sum ? KL * L / (1.0 - 1.0 / g.alpha) : KL;
    double qe = q.value();
    if (mode == LeindlerMode::sum && qe > 1.0) return KL * L / (1.0 - 1.0 / g.alpha);
    return KL * std::pow(L / (1.0 - std::pow(g.alpha, -qe)), 1.0 / qe);
}

/// Both sides of the partial-sum (sum mode) or running-sup (sup mode)
/// equivalence for an almost geometrically decreasing tau. rhs <= lhs holds
/// term by term; lhs <= leindler_constant(...) * rhs.
inline LeindlerSides leindler_check(const std::vector<double>& tau,
                                    const std::vector<double>& a, Exponent q,
                                    LeindlerMode mode) {
    if (tau.size() != a.size() || tau.empty())
        throw DomainError("leindler_check: need equal nonempty ranges");
    if (tau.size() > 1 && !detect_geom(tau, GeomDirection::decreasing))
        throw NotAlmostGeometric("leindler_check: tau is not almost geometric");
    std::vector<double> lhs_terms(tau.size()), rhs_terms(tau.size());
    double run = 0.0;
    for (std::size_t k = 0; k < tau.size(); ++k) {
        run = mode == LeindlerMode::sum ? run + a[k] : std::max(run, a[k]);
        lhs_terms[k] = tau[k] * run;
        rhs_terms[k] = tau[k] * a[k];
    }
    return {lq_norm(lhs_terms, q), lq_norm(rhs_terms, q)};
}

}  // namespace revhardy
