// Command-line front end: read a problem file, run the requested analysis,
// print a JSON report on stdout and a human summary on stderr.
//
// Exit codes: 0 success; 1 invalid problem file; 2 the inequality fails
// (infinite constant or violated support condition; the report is still
// printed); 3 a tolerance or truncation budget was exhausted.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "revhardy/problem_io.hpp"
#include "revhardy/revhardy.hpp"

namespace {

using revhardy::json;

struct CommonArgs {
    std::string file;
    double tol = -1.0;  // negative = use the file's value
    long long grid = -1;
    long long samples = -1;
    long long seed = -1;
    long long max_terms = -1;
    bool json_only = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("file", args.file, "problem file (JSON)")->required();
    cmd->add_option("--tol", args.tol, "relative enclosure tolerance");
    cmd->add_option("--grid", args.grid, "oracle sample grid size");
    cmd->add_option("--samples", args.samples, "oracle random samples");
    cmd->add_option("--seed", args.seed, "oracle random seed");
    cmd->add_option("--max-terms", args.max_terms, "discretization point budget");
    cmd->add_flag("--json-only", args.json_only, "suppress the stderr summary");
}

revhardy::ProblemFile load(const CommonArgs& args) {
    std::ifstream in(args.file);
    if (!in) throw revhardy::DomainError("cannot open " + args.file);
    json j = json::parse(in);
    revhardy::ProblemFile pf = revhardy::parse_problem(j);
    if (args.tol > 0.0) pf.tol = args.tol;
    if (args.max_terms > 0) {
        pf.max_terms = static_cast<std::size_t>(args.max_terms);
        pf.oracle.max_terms = pf.max_terms;
    }
    if (args.grid > 0) pf.oracle.grid = static_cast<std::size_t>(args.grid);
    if (args.samples >= 0) pf.oracle.samples = static_cast<std::size_t>(args.samples);
    if (args.seed >= 0) pf.oracle.seed = static_cast<std::uint64_t>(args.seed);
    return pf;
}

void emit(const json& report, const std::string& summary, bool json_only) {
    std::cout << report.dump(2) << "\n";
    if (!json_only) std::cerr << summary;
}

std::string enclosure_str(const revhardy::Enclosure& e) {
    std::ostringstream os;
    os.precision(12);
    os << "[" << e.lo.value() << ", " << e.hi.value() << "]";
    return os.str();
}

int run_constants(const CommonArgs& args, bool with_oracle) {
    revhardy::ProblemFile pf = load(args);
    revhardy::ProblemSpec spec = pf.to_spec();
    revhardy::AnalysisOptions opt;
    opt.tol = pf.tol;
    opt.max_terms = pf.max_terms;
    revhardy::ConstantsReport rep = revhardy::analyze(spec, opt);
    json out = revhardy::report_out(rep);

    std::ostringstream sum;
    sum.precision(12);
    sum << "regime " << revhardy::regime_name(rep.reg) << ", "
        << rep.constant_name << " = " << enclosure_str(rep.constant)
        << ", discrete A total = " << rep.discrete.total.value() << ", vanishing "
        << revhardy::verdict_name(rep.vanishing) << "\n";

    if (with_oracle) {
        revhardy::OracleResult res = revhardy::best_constant_estimate(spec, pf.oracle);
        out["oracle"] = revhardy::oracle_out(res);
        json ratios;
        double c = res.c_lower.value();
        ratios["c_lower_over_constant_hi"] =
            revhardy::io::num_out(revhardy::ext_div(res.c_lower, rep.constant.hi).value());
        ratios["c_lower_over_discrete_total"] = revhardy::io::num_out(
            revhardy::ext_div(res.c_lower, rep.discrete.total).value());
        out["ratios"] = ratios;
        sum << "oracle c_lower = " << c << " (" << res.strategy << ")\n";
    }
    emit(out, sum.str(), args.json_only);
    return rep.inequality_holds ? 0 : 2;
}

int run_discretize(const CommonArgs& args) {
    revhardy::ProblemFile pf = load(args);
    revhardy::ProblemSpec spec = pf.to_spec();
    revhardy::ProblemSpec base =
        spec.direction == revhardy::OperatorDirection::dual ? revhardy::reflect(spec)
                                                            : spec;
    revhardy::MonotoneFunction phi =
        revhardy::cumulative_norm(base.u, base.q, base.nu,
                                  revhardy::CumulativeSide::left_anchored)
            .right_continuous();
    revhardy::DiscretizingSequence d =
        revhardy::discretizing_sequence(phi, pf.max_terms);
    revhardy::DiscretizationCheck chk = revhardy::check_discretizing_sequence(d);

    json out;
    out["points"] = json::array();
    for (double x : d.points()) out["points"].push_back(revhardy::io::num_out(x));
    out["phi_right_values"] = json::array();
    for (double v : d.phi_right_values())
        out["phi_right_values"].push_back(revhardy::io::num_out(v));
    out["head_truncated"] = d.head_truncated();
    if (d.head_truncated()) {
        out["positivity_start"] = revhardy::io::num_out(d.positivity_start());
        out["phi_left_of_seed"] = revhardy::io::num_out(d.phi_left_of_seed());
        out["eps_rel"] = d.eps_rel();
    }
    out["invariants_ok"] = chk.ok;
    if (!chk.ok) out["invariants_detail"] = chk.detail;

    std::ostringstream sum;
    sum << d.points().size() << " points, invariants "
        << (chk.ok ? "ok" : ("FAILED: " + chk.detail)) << "\n";
    emit(out, sum.str(), args.json_only);
    return chk.ok ? 0 : 2;
}

int run_oracle(const CommonArgs& args) {
    revhardy::ProblemFile pf = load(args);
    revhardy::ProblemSpec spec = pf.to_spec();
    revhardy::OracleResult res = revhardy::best_constant_estimate(spec, pf.oracle);
    json out;
    out["oracle"] = revhardy::oracle_out(res);
    std::ostringstream sum;
    sum.precision(12);
    sum << "c_lower = " << res.c_lower.value() << " via " << res.strategy << "\n";
    emit(out, sum.str(), args.json_only);
    return res.c_lower.is_infinite() ? 2 : 0;
}

int run_reduce(const CommonArgs& args) {
    revhardy::ProblemFile pf = load(args);
    if (!pf.needs_reduction())
        throw revhardy::DomainError("reduce: the problem file has no lambda");
    revhardy::StepFunction w =
        revhardy::reduce_three_measure(*pf.lambda, pf.mu, pf.p);
    revhardy::ProblemFile reduced = pf;
    reduced.lambda.reset();
    reduced.w = w;
    json out = revhardy::problem_out(reduced);
    emit(out, "reduced three-measure instance to a two-measure one\n",
         args.json_only);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"characterization constants and best-constant estimates for "
                 "reverse Hardy-type inequalities with supremal operators"};
    app.require_subcommand(1);

    CommonArgs args;
    CLI::App* c_constants =
        app.add_subcommand("constants", "regime constant enclosures + verdicts");
    CLI::App* c_discretize =
        app.add_subcommand("discretize", "doubling sequence + invariant check");
    CLI::App* c_oracle =
        app.add_subcommand("oracle", "brute-force lower bound on the best constant");
    CLI::App* c_verify =
        app.add_subcommand("verify", "constants + oracle sandwich report");
    CLI::App* c_reduce =
        app.add_subcommand("reduce", "three-measure file to two-measure file");
    for (CLI::App* c : {c_constants, c_discretize, c_oracle, c_verify, c_reduce})
        add_common(c, args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_constants->parsed()) return run_constants(args, false);
        if (c_discretize->parsed()) return run_discretize(args);
        if (c_oracle->parsed()) return run_oracle(args);
        if (c_verify->parsed()) return run_constants(args, true);
        return run_reduce(args);
    } catch (const revhardy::ToleranceNotMet& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const revhardy::TruncationOverflow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const revhardy::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
