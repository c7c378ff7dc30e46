#include <doctest.h>

#include "revhardy/extended_real.hpp"

using namespace revhardy;

TEST_CASE("extended product conventions") {
    CHECK(ext_mul(ExtReal(0.0), ExtReal::infinity()) == ExtReal(0.0));
    CHECK(ext_mul(ExtReal::infinity(), ExtReal(0.0)) == ExtReal(0.0));
    CHECK(ext_mul(ExtReal(2.0), ExtReal(3.0)) == ExtReal(6.0));
    CHECK(ext_mul(ExtReal::infinity(), ExtReal(5.0)) == ExtReal::infinity());
}

TEST_CASE("extended quotient conventions") {
    CHECK(ext_div(ExtReal(0.0), ExtReal(0.0)) == ExtReal(0.0));
    CHECK(ext_div(ExtReal(3.0), ExtReal(0.0)) == ExtReal::infinity());
    CHECK(ext_div(ExtReal(3.0), ExtReal::infinity()) == ExtReal(0.0));
    CHECK(ext_div(ExtReal(6.0), ExtReal(2.0)) == ExtReal(3.0));
    CHECK(ext_div(ExtReal::infinity(), ExtReal(2.0)) == ExtReal::infinity());
}

TEST_CASE("product is commutative, associative and monotone on a grid") {
    const ExtReal grid[] = {ExtReal(0.0), ExtReal(0.5), ExtReal(1.0), ExtReal(2.0),
                            ExtReal(7.5), ExtReal::infinity()};
    for (ExtReal a : grid)
        for (ExtReal b : grid) {
            CHECK(ext_mul(a, b) == ext_mul(b, a));
            for (ExtReal c : grid) {
                CHECK(ext_mul(ext_mul(a, b), c) == ext_mul(a, ext_mul(b, c)));
                if (b <= c) CHECK(ext_mul(a, b) <= ext_mul(a, c));
            }
        }
}

TEST_CASE("conjugate exponent branches") {
    CHECK(conjugate(Exponent(0.5)) == Exponent(1.0));
    CHECK(conjugate(Exponent(1.0)) == Exponent::infinity());
    CHECK(conjugate(Exponent::infinity()) == Exponent(1.0));
    CHECK(conjugate(Exponent(2.0)) == Exponent(2.0));
    CHECK(conjugate(Exponent(4.0)).value() == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("conjugate is an involution on [1, inf]") {
    // below 1 the four-branch formula maps p to p/(1-p), whose inverse is
    // p/(1+p), so the involution only holds from 1 upward
    const double grid[] = {1.0, 1.5, 2.0, 3.0, 8.0};
    for (double p : grid) {
        Exponent back = conjugate(conjugate(Exponent(p)));
        CHECK(back.value() == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK(conjugate(conjugate(Exponent::infinity())) == Exponent::infinity());
    CHECK(conjugate(Exponent(0.25)).value() == doctest::Approx(1.0 / 3.0));
    CHECK(conjugate(conjugate(Exponent(0.25))).value() == doctest::Approx(0.5));
}

TEST_CASE("holder_rho") {
    CHECK(holder_rho(Exponent(1.0), Exponent(2.0)) == Exponent(2.0));
    CHECK(holder_rho(Exponent(2.0), Exponent(2.0)) == Exponent::infinity());
    CHECK(holder_rho(Exponent(1.0), Exponent::infinity()) == Exponent(1.0));

    const double grid[] = {0.5, 1.0, 2.0, 3.0};
    auto exp_of = [](double v) {
        return v == 0.0 ? Exponent::infinity() : Exponent(v);
    };
    for (double p : grid)
        for (double q : grid) {
            bool is_inf = holder_rho(exp_of(p), exp_of(q)).is_infinite();
            CHECK(is_inf == (q <= p));
        }
    CHECK(holder_rho(Exponent::infinity(), Exponent(2.0)).is_infinite());  // q <= p
    CHECK(holder_rho(Exponent(2.0), Exponent::infinity()).is_infinite() == false);
    CHECK(holder_rho(Exponent::infinity(), Exponent::infinity()).is_infinite());
}

TEST_CASE("enclosure basics") {
    Enclosure e(ExtReal(1.0), ExtReal(2.0));
    CHECK(e.contains(ExtReal(1.5)));
    CHECK(!e.contains(ExtReal(2.5)));
    CHECK(e.width() == doctest::Approx(1.0));
    CHECK_THROWS_AS(Enclosure(ExtReal(2.0), ExtReal(1.0)), DomainError);
    CHECK(Enclosure::infinite().is_infinite());
    CHECK(Enclosure::infinite().relative_width() == 0.0);

    Enclosure p = pow_enclosure(Enclosure(ExtReal(4.0), ExtReal(9.0)), 0.5);
    CHECK(p.lo.value() == doctest::Approx(2.0));
    CHECK(p.hi.value() == doctest::Approx(3.0));
}

TEST_CASE("invalid values are rejected") {
    CHECK_THROWS_AS(ExtReal(-1.0), DomainError);
    CHECK_THROWS_AS(Exponent(0.0), DomainError);
}
