#include <doctest.h>

#include "revhardy/problem_io.hpp"
#include "support.hpp"

using namespace revhardy;

namespace {

json sample_problem() {
    return json{
        {"interval", {0.0, 1.0}},
        {"p", 1.0},
        {"q", 2.0},
        {"direction", "forward"},
        {"mu", {{"atoms", json::array()},
                {"density", {{"breaks", {0.0, 1.0}}, {"values", {1.0}}}}}},
        {"nu", {{"atoms", {{0.5, 2.0}}},
                {"density", {{"breaks", {0.0, 1.0}}, {"values", {1.0}}}}}},
        {"u", {{"breaks", {0.0, 1.0}}, {"values", {1.0}}}},
        {"w", {{"breaks", {0.0, 0.5, 1.0}}, {"values", {1.0, 3.0}}}},
        {"tol", 1e-7},
        {"oracle", {{"grid", 128}, {"samples", 64}, {"seed", 9}}},
    };
}

}  // namespace

TEST_CASE("problem files round-trip") {
    ProblemFile pf = parse_problem(sample_problem());
    CHECK(pf.domain == Interval(0.0, 1.0));
    CHECK(pf.p == Exponent(1.0));
    CHECK(pf.q == Exponent(2.0));
    CHECK(pf.tol == 1e-7);
    CHECK(pf.oracle.grid == 128);
    CHECK(pf.oracle.samples == 64);
    CHECK(pf.oracle.seed == 9);
    REQUIRE(pf.w.has_value());
    CHECK(pf.nu.atoms().size() == 1);

    json out = problem_out(pf);
    ProblemFile back = parse_problem(out);
    CHECK(back.domain == pf.domain);
    CHECK(back.mu == pf.mu);
    CHECK(back.nu == pf.nu);
    CHECK(back.u == pf.u);
    CHECK(*back.w == *pf.w);
}

TEST_CASE("infinite endpoints and exponents are spelled out") {
    json j = sample_problem();
    j["q"] = "inf";
    j["interval"] = {"-inf", 4.0};
    j["u"] = {{"breaks", {"-inf", 4.0}}, {"values", {1.0}}};
    j["w"] = {{"breaks", {"-inf", 0.5, 4.0}}, {"values", {1.0, 3.0}}};
    j["mu"]["density"]["breaks"] = {0.0, 1.0};
    j["nu"] = j["mu"];
    j["nu"]["atoms"] = {{0.5, 2.0}};
    ProblemFile pf = parse_problem(j);
    CHECK(pf.q.is_infinite());
    CHECK(pf.domain.a == -inf);
    json out = problem_out(pf);
    CHECK(out["q"] == "inf");
    CHECK(out["interval"][0] == "-inf");
}

TEST_CASE("exactly one payload is required") {
    json j = sample_problem();
    j["lambda"] = j["mu"];
    CHECK_THROWS_AS(parse_problem(j), DomainError);
    j.erase("w");
    CHECK(parse_problem(j).needs_reduction());
    j.erase("lambda");
    CHECK_THROWS_AS(parse_problem(j), DomainError);
}

TEST_CASE("step functions with explicit breakpoint values round-trip") {
    Interval dom(0.0, 1.0);
    StepFunction f(dom, {0.0, 0.5, 1.0}, {1.0, 2.0});
    f.set_point_value(0.5, 7.0);
    json j = io::step_function_out(f);
    CHECK(j.contains("point_values"));
    StepFunction back = io::step_function_in(j, dom, "f");
    CHECK(back == f);
}

TEST_CASE("reports serialize enclosures and verdicts") {
    ProblemFile pf = parse_problem(sample_problem());
    ProblemSpec spec = pf.to_spec();
    ConstantsReport rep = analyze(spec, {});
    json j = report_out(rep);
    CHECK(j["regime"] == "p<q<inf");
    CHECK(j["constants"].contains("A2"));
    CHECK(j["constants"]["A2"].contains("lo"));
    CHECK(j.contains("vanishing"));
    CHECK(j.contains("inequality_holds"));
}
