#include "unicheck/check.hpp"
#include "unicheck/closure.hpp"
#include "unicheck/gates.hpp"
#include "unicheck/haar_ref.hpp"
#include "unicheck/moments.hpp"
#include "unicheck/numerics.hpp"
#include "unicheck/permutation.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

namespace {

using namespace unicheck;

constexpr int kExitParse = 3;
constexpr int kExitNumerics = 4;

struct CommonArgs {
    std::string file;
    double tol = kSpectralTol;
    double rank_tol = kRankRelTol;
    int budget = kMatrixFreeBudget;
    std::uint64_t seed = kDefaultSeed;
    bool json = false;
    bool project_unitary = false;
};

GateSet load(const CommonArgs& args) {
    ParseOptions popts;
    popts.project_unitary = args.project_unitary;
    return parse_gate_set_file(args.file, popts);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int run_check_cmd(const CommonArgs& args, int t, const std::string& backend,
                  const std::string& diagnostics) {
    static const std::map<std::string, Backend> backends{
        {"auto", Backend::AUTO}, {"dense", Backend::DENSE}, {"matrixfree", Backend::MATRIX_FREE}};
    static const std::map<std::string, Diagnostics> diag{
        {"none", Diagnostics::NONE}, {"delta", Diagnostics::DELTA},
        {"closure", Diagnostics::CLOSURE}, {"all", Diagnostics::ALL}};

    CheckOptions opts;
    opts.backend = backends.at(backend);
    opts.diagnostics = diag.at(diagnostics);
    opts.t_override = t;
    opts.tol = args.tol;
    opts.rank_tol = args.rank_tol;
    opts.budget = args.budget;
    opts.seed = args.seed;

    CheckReport rep = run_check(load(args), opts);
    std::cout << (args.json ? to_json(rep) : to_text(rep));
    if (args.json) std::cout << "\n";
    return exit_code(rep.verdict);
}

int run_delta_cmd(const CommonArgs& args, int t) {
    GateSet s = normalized(load(args));
    const int order = t > 0 ? t : target_dimension(s.d).t;
    DeltaResult r;
    try {
        r = delta(s, order, args.tol, args.seed);
    } catch (const size_cap_error& e) {
        std::cerr << "error: " << e.what()
                  << " (try `check`, which decides at a smaller order)\n";
        return kExitParse;
    }
    if (args.json) {
        std::cout << "{\"schemaVersion\":1,\"d\":" << s.d << ",\"t\":" << order
                  << ",\"value\":" << fmt(r.value) << ",\"errorBound\":" << fmt(r.error_bound)
                  << ",\"atZero\":" << (r.at_zero ? "true" : "false")
                  << ",\"atOne\":" << (r.at_one ? "true" : "false")
                  << ",\"converged\":" << (r.converged ? "true" : "false") << "}\n";
    } else {
        std::cout << "delta(t=" << order << ") = " << fmt(r.value) << " +/- "
                  << fmt(r.error_bound);
        if (r.at_zero) std::cout << " [design]";
        if (r.at_one) std::cout << " [max]";
        std::cout << "\n";
    }
    return 0;
}

int run_haar_dim_cmd(int d, int t1, int t2, bool json) {
    if (t1 < 0 && t2 < 0) {
        t1 = t2 = target_dimension(d).t;
    } else if (t1 < 0 || t2 < 0) {
        throw validation_error("haar-dim: give both --t1 and --t2, or neither");
    }
    const std::uint64_t dim = haar_commutant_dim(d, t1, t2);
    if (json) {
        std::cout << "{\"schemaVersion\":1,\"d\":" << d << ",\"t1\":" << t1 << ",\"t2\":" << t2
                  << ",\"dim\":" << dim << "}\n";
    } else {
        std::cout << dim << "\n";
    }
    return 0;
}

int run_closure_cmd(const CommonArgs& args, int max_elements) {
    GateSet s = normalized(load(args));
    ClosureResult r = close_group(s, max_elements);
    if (args.json) {
        std::cout << "{\"schemaVersion\":1,\"status\":\"" << to_string(r.status) << "\"";
        if (r.status == ClosureStatus::FINITE) std::cout << ",\"order\":" << r.order();
        std::cout << ",\"productDepth\":" << r.product_depth << "}\n";
    } else {
        std::cout << "closure: " << to_string(r.status);
        if (r.status == ClosureStatus::FINITE) std::cout << ", order " << r.order();
        std::cout << ", product depth " << r.product_depth << "\n";
    }
    return 0;
}

GateSet make_set(int d, const std::vector<std::string>& names) {
    GateSet s;
    s.d = d;
    for (const std::string& n : names) s.gates.push_back({n, builtin(n, d)});
    return normalized(s);
}

int run_selftest() {
    int failures = 0;
    auto expect = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "ok: " : "FAIL: ") << what << "\n";
        if (!ok) ++failures;
    };

    for (const char* n : {"I", "X", "Y", "Z", "H", "S", "T", "F"}) {
        expect(unitarity_defect(builtin(n, 2)) < 1e-12, std::string("builtin ") + n + " (d=2)");
    }
    for (const char* n : {"I", "X", "Z", "F"}) {
        expect(unitarity_defect(builtin(n, 3)) < 1e-12, std::string("builtin ") + n + " (d=3)");
    }
    expect(unitarity_defect(builtin("CNOT", 4)) < 1e-12, "builtin CNOT (d=4)");

    for (int t = 1; t <= 3; ++t) {
        const double want[] = {1.0, 2.0, 5.0};
        double tr = std::real(haar_moment_operator(2, t).trace());
        expect(std::abs(tr - want[t - 1]) < 1e-8,
               "projector trace at d=2, t=" + std::to_string(t));
    }
    {
        CMat p = haar_moment_operator(2, 2);
        expect((p * p - p).cwiseAbs().maxCoeff() < 1e-10 &&
                   (p - p.adjoint()).cwiseAbs().maxCoeff() < 1e-10,
               "projector idempotent and hermitian at d=2, t=2");
    }

    // Decision thresholds against the exact modular Gram rank.
    std::uint64_t su2_sq = 0;
    for (const auto& [l, m] : su2_decompose(3)) su2_sq += m * m;
    expect(target_dimension(2).dim == 132 && gram_rank(6, 2) == 132 && su2_sq == 132,
           "d=2 target: 132 = gram rank(6,2) = su(2) multiplicity squares");
    std::uint64_t su3_sq = 0;
    for (const auto& [pq, m] : su3_reference()) su3_sq += m * m;
    expect(target_dimension(3).dim == 23 && gram_rank(4, 3) == 23 && su3_sq == 23,
           "d=3 target: 23 = gram rank(4,3) = su(3) multiplicity squares");
    expect(target_dimension(4).dim == 24 && gram_rank(4, 4) == 24,
           "d=4 target: 24 = gram rank(4,4) = 4!");
    expect(haar_commutant_dim(2, 2, 2) == 14, "full-group dim d=2, (2,2)");
    expect(gram_rank(2, 2) == 2, "gram rank n=2, d=2");

    {
        GateSet pauli = make_set(2, {"X", "Z"});
        CommutantResult dense = commutant_dim_dense(pauli, 1, 1);
        expect(dense.dim == 4 && dense.status == CommutantStatus::CERTIFIED,
               "pauli commutant (1,1) dense");
        CommutantResult mf = commutant_dim_matrixfree(pauli, 1, 1);
        expect(mf.dim == 4 && mf.status == CommutantStatus::CERTIFIED,
               "pauli commutant (1,1) matrix-free");
    }
    {
        GateSet ht = make_set(2, {"H", "T"});
        NecessaryCondition nc = necessary_condition(ht);
        expect(nc.holds && nc.dim == 2, "h,t passes the necessary condition");
    }
    {
        GateSet tgate = make_set(2, {"T"});
        CommutantResult dense = commutant_dim_dense(tgate, 1, 1);
        expect(dense.dim == 6 && dense.status == CommutantStatus::CERTIFIED,
               "lone diagonal gate commutant (1,1) dense");
        ClosureResult c = close_group(tgate);
        expect(c.status == ClosureStatus::FINITE && c.order() == 8, "closure of {T}");
        expect(group_commutant_dim(c.elements, 1, 1) == 6,
               "character oracle agrees on the lone diagonal gate");
    }
    {
        GateSet sgate = make_set(2, {"S"});
        ClosureResult c = close_group(sgate);
        expect(c.status == ClosureStatus::FINITE && c.order() == 4, "closure of {S}");
    }
    {
        GateSet idset = make_set(2, {"I"});
        DeltaResult r = delta(idset, 1);
        expect(r.at_one, "delta of the trivial set is 1");
    }

    std::cout << (failures == 0 ? "selftest passed" : "selftest FAILED") << "\n";
    return failures == 0 ? 0 : kExitNumerics;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"universality checker for finite gate sets"};
    app.require_subcommand(1);

    CommonArgs args;
    int t = 0;
    std::string backend = "auto";
    std::string diagnostics = "none";
    int closure_budget = kClosureBudget;
    int haar_d = 0;
    int haar_t1 = -1;
    int haar_t2 = -1;
    bool haar_json = false;

    auto add_common = [&](CLI::App* cmd, bool with_file) {
        if (with_file) {
            cmd->add_option("file", args.file, "gate-set JSON file")->required();
        }
        cmd->add_option("--tol", args.tol, "spectral-norm tolerance");
        cmd->add_option("--seed", args.seed, "rng seed");
        cmd->add_flag("--json", args.json, "emit JSON");
        cmd->add_flag("--project-unitary", args.project_unitary,
                      "snap near-unitary inputs to the closest unitary");
    };

    CLI::App* check = app.add_subcommand("check", "decide universality");
    add_common(check, true);
    check->add_option("--t", t, "override the balanced moment order");
    check->add_option("--rank-tol", args.rank_tol, "relative rank cutoff");
    check->add_option("--budget", args.budget, "matrix-free sweep budget");
    check->add_option("--backend", backend, "engine: auto|dense|matrixfree")
        ->check(CLI::IsMember({"auto", "dense", "matrixfree"}));
    check->add_option("--diagnostics", diagnostics, "extras: none|delta|closure|all")
        ->check(CLI::IsMember({"none", "delta", "closure", "all"}));

    CLI::App* delta_cmd = app.add_subcommand("delta", "design gap of the generating measure");
    add_common(delta_cmd, true);
    delta_cmd->add_option("--t", t, "moment order");

    CLI::App* haar = app.add_subcommand("haar-dim", "full-group commutant dimension");
    haar->add_option("--d", haar_d, "local dimension")->required();
    haar->add_option("--t1", haar_t1, "unconjugated copies (default: decisive order)");
    haar->add_option("--t2", haar_t2, "conjugated copies (default: decisive order)");
    haar->add_flag("--json", haar_json, "emit JSON");

    CLI::App* closure_cmd = app.add_subcommand("closure", "breadth-first projective closure");
    add_common(closure_cmd, true);
    closure_cmd->add_option("--budget", closure_budget, "element cap");

    CLI::App* selftest = app.add_subcommand("selftest", "quick internal consistency checks");
    (void)selftest;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitParse;
    }

    try {
        if (check->parsed()) return run_check_cmd(args, t, backend, diagnostics);
        if (delta_cmd->parsed()) return run_delta_cmd(args, t);
        if (haar->parsed()) return run_haar_dim_cmd(haar_d, haar_t1, haar_t2, haar_json);
        if (closure_cmd->parsed()) return run_closure_cmd(args, closure_budget);
        if (selftest->parsed()) return run_selftest();
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const size_cap_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const numerics_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerics;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerics;
    }
    return kExitParse;
}
