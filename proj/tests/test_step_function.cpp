#include <doctest.h>

#include "revhardy/step_function.hpp"
#include "support.hpp"

using namespace revhardy;

TEST_CASE("pieces are left-open right-closed by default") {
    Interval dom(0.0, 1.0);
    StepFunction f(dom, {0.0, 0.5, 1.0}, {3.0, 7.0});
    CHECK(f.value(0.25) == 3.0);
    CHECK(f.value(0.5) == 3.0);  // breakpoint belongs to the piece ending there
    CHECK(f.value(0.75) == 7.0);
    CHECK(f.value_right_of(0.5) == 7.0);
    CHECK(f.value_left_of(0.5) == 3.0);
    CHECK_THROWS_AS(f.value(1.0), DomainError);
}

TEST_CASE("indicator honours closure flags") {
    Interval dom(0.0, 1.0);
    StepFunction open_ = StepFunction::indicator(dom, EndpointedInterval::open(0.2, 0.8));
    CHECK(open_.value(0.2) == 0.0);
    CHECK(open_.value(0.5) == 1.0);
    CHECK(open_.value(0.8) == 0.0);
    StepFunction closed = StepFunction::indicator(dom, EndpointedInterval::closed(0.2, 0.8));
    CHECK(closed.value(0.2) == 1.0);
    CHECK(closed.value(0.8) == 1.0);
    StepFunction lo = StepFunction::indicator(dom, EndpointedInterval::left_open(0.2, 0.8));
    CHECK(lo.value(0.2) == 0.0);
    CHECK(lo.value(0.8) == 1.0);
}

TEST_CASE("pointwise algebra") {
    Interval dom(0.0, 1.0);
    StepFunction f(dom, {0.0, 0.5, 1.0}, {2.0, 5.0});
    StepFunction one = StepFunction::constant(dom, 1.0);
    StepFunction zero = StepFunction::constant(dom, 0.0);
    CHECK(pointwise(f, one, PointwiseOp::product) == f);
    CHECK(pointwise(f, zero, PointwiseOp::product).identically_zero());

    StepFunction two = StepFunction::constant(dom, 2.0);
    StepFunction three = StepFunction::constant(dom, 3.0);
    StepFunction six = pointwise(two, three, PointwiseOp::product);
    CHECK(six.value(0.3) == 6.0);
    CHECK(six.pieces() == 1);

    StepFunction m = pointwise(f, three, PointwiseOp::max);
    CHECK(m.value(0.3) == 3.0);
    CHECK(m.value(0.7) == 5.0);
}

TEST_CASE("pointwise respects explicit breakpoint values") {
    Interval dom(0.0, 1.0);
    StepFunction f(dom, {0.0, 0.5, 1.0}, {2.0, 5.0});
    f.set_point_value(0.5, 11.0);
    StepFunction g = StepFunction::constant(dom, 2.0);
    StepFunction prod = pointwise(f, g, PointwiseOp::product);
    CHECK(prod.value(0.5) == 22.0);
    CHECK(prod.value(0.4999) == 4.0);
}

TEST_CASE("reflection is a pointwise-exact involution") {
    Interval dom(0.0, 1.0);
    StepFunction f(dom, {0.0, 0.25, 0.5, 1.0}, {1.0, 4.0, 2.0});
    f.set_point_value(0.25, 9.0);
    StepFunction r = f.reflected();
    CHECK(r.domain() == Interval(-1.0, 0.0));
    CHECK(r.value(-0.25) == f.value(0.25));  // breakpoint value carried over
    CHECK(r.value(-0.1) == f.value(0.1));
    CHECK(r.value(-0.75) == f.value(0.75));
    CHECK(r.reflected() == f);

    testsupport::Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        StepFunction g = testsupport::random_step(rng, dom, 5, true);
        StepFunction rr = g.reflected().reflected();
        CHECK(rr == g);
        double x = rng.uniform(0.01, 0.99);
        CHECK(g.reflected().value(-x) == g.value(x));
    }
}

TEST_CASE("construction rejects malformed input") {
    Interval dom(0.0, 1.0);
    CHECK_THROWS_AS(StepFunction(dom, {0.0, 1.0}, {-1.0}), DomainError);
    CHECK_THROWS_AS(StepFunction(dom, {0.0, 0.5}, {1.0}), DomainError);
    CHECK_THROWS_AS(StepFunction(dom, {0.0, 0.5, 0.5, 1.0}, {1.0, 1.0, 1.0}),
                    DomainError);
}
