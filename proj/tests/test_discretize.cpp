#include <doctest.h>

#include <cmath>

#include "revhardy/discretize.hpp"
#include "revhardy/norms.hpp"
#include "support.hpp"

using namespace revhardy;
using testsupport::Rng;

namespace {

MonotoneFunction identity_phi() {
    Interval dom(0.0, 1.0);
    PowerForm id;
    id.b0 = 0.0;
    id.slope = 1.0;
    id.anchor = 0.0;
    id.exponent = 1.0;
    return MonotoneFunction(dom, MonotoneFunction::Direction::non_decreasing,
                            {0.0, 1.0}, {id}, {});
}

/// Random cumulative-norm phi: jumps from atoms, power pieces from density.
MonotoneFunction random_phi(Rng& rng, bool allow_qinf = true) {
    Interval dom(0.0, 2.0);
    Measure m = testsupport::random_measure(rng, dom, 3, 3);
    if (m.is_zero()) m = Measure::lebesgue(dom);
    StepFunction u = testsupport::positive_head(
        testsupport::random_step(rng, dom, 3, false), rng);
    double q = (allow_qinf && rng.chance(0.2)) ? inf : rng.log_uniform(0.4, 4.0);
    Exponent qe = std::isinf(q) ? Exponent::infinity() : Exponent(q);
    return cumulative_norm(u, qe, m, CumulativeSide::left_anchored).right_continuous();
}

}  // namespace

TEST_CASE("doubling sequence for the identity") {
    MonotoneFunction phi = identity_phi();
    DiscretizingSequence d = discretizing_sequence(phi);
    CHECK(d.head_truncated());  // phi decays continuously to zero at 0
    CHECK(d.positivity_start() == 0.0);
    CHECK(d.points().back() == 1.0);
    DiscretizationCheck chk = check_discretizing_sequence(d);
    CHECK(chk.ok);
    INFO(chk.detail);
    // certified seed bound
    CHECK(d.phi_left_of_seed() <= d.eps_rel() * 1.0 * (1 + 1e-12));

    // the classic dyadic sequence passes the same checker
    std::vector<double> pts;
    for (int k = -45; k <= 0; ++k) pts.push_back(std::pow(2.0, k - 1));
    pts.push_back(1.0);
    DiscretizingSequence dyadic(phi, pts, true, 0.0, std::pow(2.0, -46.0),
                                std::pow(2.0, -40.0));
    CHECK(check_discretizing_sequence(dyadic).ok);
}

TEST_CASE("jump start gives a finite exact head") {
    Interval dom(0.0, 1.0);
    StepFunction one = StepFunction::constant(dom, 1.0);
    Measure atom_only = Measure::atoms_only(dom, {{0.3, 2.0}});
    MonotoneFunction phi =
        cumulative_norm(one, Exponent(1.0), atom_only, CumulativeSide::left_anchored)
            .right_continuous();
    DiscretizingSequence d = discretizing_sequence(phi);
    CHECK(!d.head_truncated());
    CHECK(d.points().front() == 0.3);
    CHECK(check_discretizing_sequence(d).ok);
}

TEST_CASE("constant positive phi yields the two-point sequence") {
    Interval dom(0.0, 1.0);
    MonotoneFunction phi = MonotoneFunction::constant(dom, 3.5);
    DiscretizingSequence d = discretizing_sequence(phi);
    CHECK(d.points() == std::vector<double>{0.0, 1.0});
    CHECK(check_discretizing_sequence(d).ok);
}

TEST_CASE("degenerate and budget errors") {
    Interval dom(0.0, 1.0);
    CHECK_THROWS_AS(discretizing_sequence(MonotoneFunction::constant(dom, 0.0)),
                    DomainError);
    CHECK_THROWS_AS(discretizing_sequence(identity_phi(), 4), TruncationOverflow);
}

TEST_CASE("covering intervals partition (x_N, b)") {
    MonotoneFunction phi = identity_phi();
    DiscretizingSequence d = discretizing_sequence(phi);
    auto js = covering_intervals(d);
    CHECK(js.size() == d.points().size() - 1);
    for (std::size_t k = 0; k + 1 < js.size(); ++k) {
        CHECK(js[k].right == js[k + 1].left);
        CHECK(js[k].right_closed);
        CHECK(!js[k].left_closed);
    }
    CHECK(!js.back().right_closed);
    CHECK(js.back().right == 1.0);
}

TEST_CASE("random phis pass the invariant checker and double geometrically") {
    Rng rng(61);
    int built = 0;
    while (built < 200) {
        MonotoneFunction phi = random_phi(rng);
        DiscretizingSequence d = discretizing_sequence(phi);
        DiscretizationCheck chk = check_discretizing_sequence(d);
        INFO(chk.detail);
        CHECK(chk.ok);
        auto vals = d.phi_right_values();
        if (vals.size() >= 3) {
            // alpha = L = 2 admissible per the doubling construction
            CHECK(admits_geom(vals, GeomDirection::increasing, 2.0 * (1 - 1e-9), 2));
            CHECK(detect_geom(vals, GeomDirection::increasing).has_value());
        }
        ++built;
    }
}

TEST_CASE("discretized right-hand side") {
    Interval dom(0.0, 1.0);
    Measure leb = Measure::lebesgue(dom);
    StepFunction one = StepFunction::constant(dom, 1.0);
    MonotoneFunction phi =
        cumulative_norm(one, Exponent(2.0), leb, CumulativeSide::left_anchored)
            .right_continuous();
    DiscretizingSequence d = discretizing_sequence(phi);

    StepFunction zero = StepFunction::constant(dom, 0.0);
    CHECK(discretized_rhs(zero, one, Exponent(2.0), leb, leb, d) == ExtReal(0.0));

    auto js = covering_intervals(d);
    std::size_t k0 = js.size() / 2;
    StepFunction chi = StepFunction::indicator(dom, js[k0]);
    double single = discretized_rhs(chi, one, Exponent(2.0), leb, leb, d).value();
    CHECK(single == doctest::Approx(d.phi_right_values()[k0]));

    // mismatched provenance is rejected
    Measure other(dom, {{0.5, 1.0}}, {}, {});
    CHECK_THROWS_AS(discretized_rhs(chi, one, Exponent(2.0), other, leb, d),
                    DomainError);
}

TEST_CASE("discretization equivalence within a fixed factor") {
    Rng rng(67);
    Interval dom(0.0, 2.0);
    int done = 0;
    double worst = 0.0;
    while (done < 30) {
        Measure nu = testsupport::random_measure(rng, dom, 2, 3);
        if (nu.is_zero()) nu = Measure::lebesgue(dom);
        Measure mu = testsupport::random_measure(rng, dom, 2, 3);
        if (mu.is_zero()) mu = Measure::lebesgue(dom);
        StepFunction u = testsupport::positive_head(
            testsupport::random_step(rng, dom, 3, false), rng);
        StepFunction g = testsupport::random_step(rng, dom, 4, true);
        // equivalence constants grow without bound as q drops below 1
        double q = rng.chance(0.25) ? inf : rng.log_uniform(1.0, 3.0);
        Exponent qe = std::isinf(q) ? Exponent::infinity() : Exponent(q);

        MonotoneFunction phi =
            cumulative_norm(u, qe, nu, CumulativeSide::left_anchored).right_continuous();
        DiscretizingSequence d = discretizing_sequence(phi);
        double discrete = discretized_rhs(g, u, qe, nu, mu, d).value();

        StepFunction env = sup_envelope(g, mu, EnvelopeDirection::tail);
        double direct = norm(pointwise(u, env, PointwiseOp::product), qe,
                             EndpointedInterval::open(dom.a, dom.b), nu)
                            .value();
        if (direct == 0.0 && discrete == 0.0) {
            ++done;
            continue;
        }
        REQUIRE(direct > 0.0);
        REQUIRE(discrete > 0.0);
        double r = discrete / direct;
        worst = std::max(worst, std::max(r, 1.0 / r));
        CHECK(r <= 8.0);
        CHECK(r >= 1.0 / 8.0);
        ++done;
    }
    MESSAGE("max two-sided discretization ratio over 30 draws: ", worst);
}
