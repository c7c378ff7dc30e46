#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "revhardy/characterize.hpp"
#include "revhardy/errors.hpp"
#include "revhardy/oracle.hpp"

namespace revhardy {

using json = nlohmann::json;

namespace io {

inline json num_out(double v) {
    if (v == inf) return json("inf");
    if (v == -inf) return json("-inf");
    return json(v);
}

inline double num_in(const json& j, const char* what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "inf" || s == "+inf") return inf;
        if (s == "-inf") return -inf;
    }
    throw DomainError(std::string("expected a number or \"inf\" for ") + what);
}

inline json step_function_out(const StepFunction& f) {
    json j;
    j["breaks"] = json::array();
    for (double x : f.breaks()) j["breaks"].push_back(num_out(x));
    j["values"] = f.values();
    bool custom = false;
    for (std::size_t i = 0; i + 1 < f.values().size(); ++i)
        if (f.point_value_at(i) != f.values()[i]) custom = true;
    if (custom) {
        std::vector<double> pv(f.values().size() - 1);
        for (std::size_t i = 0; i < pv.size(); ++i) pv[i] = f.point_value_at(i);
        j["point_values"] = pv;
    }
    return j;
}

inline StepFunction step_function_in(const json& j, const Interval& dom,
                                     const char* what) {
    if (!j.is_object() || !j.contains("breaks") || !j.contains("values"))
        throw DomainError(std::string(what) + ": expected {breaks, values}");
    std::vector<double> breaks;
    for (const auto& x : j.at("breaks")) breaks.push_back(num_in(x, what));
    std::vector<double> values = j.at("values").get<std::vector<double>>();
    StepFunction f(dom, std::move(breaks), std::move(values));
    if (j.contains("point_values")) {
        auto pv = j.at("point_values").get<std::vector<double>>();
        if (pv.size() + 1 != f.values().size())
            throw DomainError(std::string(what) + ": point_values length mismatch");
        for (std::size_t i = 0; i < pv.size(); ++i)
            f.set_point_value(f.breaks()[i + 1], pv[i]);
    }
    return f;
}

inline json measure_out(const Measure& m) {
    json j;
    j["atoms"] = json::array();
    for (const Atom& at : m.atoms()) j["atoms"].push_back({at.position, at.mass});
    json d;
    d["breaks"] = m.density_breaks();
    d["values"] = m.density_values();
    j["density"] = d;
    return j;
}

inline Measure measure_in(const json& j, const Interval& dom, const char* what) {
    if (!j.is_object()) throw DomainError(std::string(what) + ": expected an object");
    std::vector<Atom> atoms;
    if (j.contains("atoms"))
        for (const auto& a : j.at("atoms")) {
            if (!a.is_array() || a.size() != 2)
                throw DomainError(std::string(what) + ": atoms are [pos, mass] pairs");
            atoms.push_back({a[0].get<double>(), a[1].get<double>()});
        }
    std::vector<double> db, dv;
    if (j.contains("density")) {
        db = j.at("density").at("breaks").get<std::vector<double>>();
        dv = j.at("density").at("values").get<std::vector<double>>();
    }
    return Measure(dom, std::move(atoms), std::move(db), std::move(dv));
}

inline Exponent exponent_in(const json& j, const char* what) {
    return Exponent(ExtReal(num_in(j, what)));
}

inline json exponent_out(Exponent p) { return num_out(p.value()); }

inline json enclosure_out(const Enclosure& e) {
    return json{{"lo", num_out(e.lo.value())}, {"hi", num_out(e.hi.value())}};
}

}  // namespace io

/// Parsed problem file: a ProblemSpec plus run parameters. Exactly one of
/// w / lambda is present in the file; a lambda instance must be reduced
/// before characterization.
struct ProblemFile {
    Interval domain;
    Exponent p;
    Exponent q;
    OperatorDirection direction;
    Measure mu;
    Measure nu;
    StepFunction u;
    std::optional<StepFunction> w;
    std::optional<Measure> lambda;
    double tol = 1e-6;
    std::size_t max_terms = 4096;
    OracleOptions oracle;

    ProblemFile(Interval dom, Exponent p_, Exponent q_, OperatorDirection dir,
                Measure mu_, Measure nu_, StepFunction u_)
        : domain(dom),
          p(p_),
          q(q_),
          direction(dir),
          mu(std::move(mu_)),
          nu(std::move(nu_)),
          u(std::move(u_)) {}

    bool needs_reduction() const { return lambda.has_value(); }

    /// Two-measure ProblemSpec, applying the Radon-Nikodym reduction if the
    /// file carried a third measure.
    ProblemSpec to_spec() const {
        StepFunction weight = w ? *w : reduce_three_measure(*lambda, mu, p);
        return ProblemSpec(domain, p, q, direction, mu, nu, u, weight);
    }
};

inline ProblemFile parse_problem(const json& j) {
    if (!j.is_object()) throw DomainError("problem file: expected an object");
    if (!j.contains("interval") || !j.at("interval").is_array() ||
        j.at("interval").size() != 2)
        throw DomainError("problem file: interval must be [a, b]");
    Interval dom(io::num_in(j.at("interval")[0], "interval"),
                 io::num_in(j.at("interval")[1], "interval"));
    Exponent p = io::exponent_in(j.at("p"), "p");
    Exponent q = io::exponent_in(j.at("q"), "q");
    OperatorDirection dir = OperatorDirection::forward;
    if (j.contains("direction")) {
        const auto& s = j.at("direction").get_ref<const std::string&>();
        if (s == "forward")
            dir = OperatorDirection::forward;
        else if (s == "dual")
            dir = OperatorDirection::dual;
        else
            throw DomainError("problem file: direction must be forward or dual");
    }
    ProblemFile pf(dom, p, q, dir, io::measure_in(j.at("mu"), dom, "mu"),
                   io::measure_in(j.at("nu"), dom, "nu"),
                   io::step_function_in(j.at("u"), dom, "u"));
    bool has_w = j.contains("w"), has_l = j.contains("lambda");
    if (has_w == has_l)
        throw DomainError("problem file: exactly one of w / lambda is required");
    if (has_w) pf.w = io::step_function_in(j.at("w"), dom, "w");
    if (has_l) pf.lambda = io::measure_in(j.at("lambda"), dom, "lambda");
    if (j.contains("tol")) pf.tol = j.at("tol").get<double>();
    if (j.contains("max_terms")) pf.max_terms = j.at("max_terms").get<std::size_t>();
    if (j.contains("oracle")) {
        const auto& o = j.at("oracle");
        if (o.contains("grid")) pf.oracle.grid = o.at("grid").get<std::size_t>();
        if (o.contains("samples"))
            pf.oracle.samples = o.at("samples").get<std::size_t>();
        if (o.contains("seed")) pf.oracle.seed = o.at("seed").get<std::uint64_t>();
    }
    pf.oracle.max_terms = pf.max_terms;
    return pf;
}

inline json problem_out(const ProblemFile& pf) {
    json j;
    j["interval"] = json::array({io::num_out(pf.domain.a), io::num_out(pf.domain.b)});
    j["p"] = io::exponent_out(pf.p);
    j["q"] = io::exponent_out(pf.q);
    j["direction"] = pf.direction == OperatorDirection::forward ? "forward" : "dual";
    j["mu"] = io::measure_out(pf.mu);
    j["nu"] = io::measure_out(pf.nu);
    j["u"] = io::step_function_out(pf.u);
    if (pf.w) j["w"] = io::step_function_out(*pf.w);
    if (pf.lambda) j["lambda"] = io::measure_out(*pf.lambda);
    j["tol"] = pf.tol;
    j["max_terms"] = pf.max_terms;
    j["oracle"] = json{{"grid", pf.oracle.grid},
                       {"samples", pf.oracle.samples},
                       {"seed", pf.oracle.seed}};
    return j;
}

inline json report_out(const ConstantsReport& rep) {
    json j;
    j["regime"] = regime_name(rep.reg);
    j["direction"] =
        rep.direction == OperatorDirection::forward ? "forward" : "dual";
    j["constants"] = json{{rep.constant_name, io::enclosure_out(rep.constant)}};
    if (rep.dual_direct)
        j["constants"][rep.constant_name + "_direct"] =
            io::enclosure_out(*rep.dual_direct);
    j["discrete_A"] = json{{"stored", io::num_out(rep.discrete.stored_value.value())},
                           {"tail_bound", io::num_out(rep.discrete.tail_bound.value())},
                           {"total", io::num_out(rep.discrete.total.value())},
                           {"truncated", rep.discrete.truncated}};
    j["vanishing"] = verdict_name(rep.vanishing);
    j["inequality_holds"] = rep.inequality_holds;
    j["warnings"] = rep.warnings;
    return j;
}

inline json oracle_out(const OracleResult& res) {
    return json{{"c_lower", io::num_out(res.c_lower.value())},
                {"witness", io::step_function_out(res.witness)},
                {"strategy", res.strategy},
                {"grid", res.grid},
                {"seed", res.seed}};
}

}  // namespace revhardy
