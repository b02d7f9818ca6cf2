// Acceptance gate: the headline capabilities, one criterion per line.
// Exits with the number of failed criteria.

#include "unicheck/check.hpp"
#include "unicheck/closure.hpp"
#include "unicheck/commutant.hpp"
#include "unicheck/gates.hpp"
#include "unicheck/haar_ref.hpp"
#include "unicheck/moments.hpp"
#include "unicheck/numerics.hpp"
#include "unicheck/permutation.hpp"

#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace unicheck;
using testsupport::builtin_set;
using testsupport::haar_unitary;
using testsupport::max_abs;
using testsupport::random_set;
using testsupport::set_of;

namespace {

using Expect = std::vector<std::string>;

void expect(Expect& problems, bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
}

std::string num(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

double commutation_residual(const GateSet& s, int t1, int t2, const CMat& x) {
    double worst = 0.0;
    for (const Gate& g : s.gates) {
        CMat l = mixed_lift(g.matrix, t1, t2);
        worst = std::max(worst, max_abs(matmul(l, x) - matmul(x, l)));
    }
    return worst;
}

GateSet qutrit_set() { return builtin_set(3, {"F", "PHASE(0.78539816339744831)"}); }

void criterion_1(Expect& p, double& budget) {
    budget = 60.0;
    expect(p, haar_commutant_dim(2, 3, 3) == 132, "dim(2;3,3) != 132");
    expect(p, haar_commutant_dim(3, 2, 2) == 23, "dim(3;2,2) != 23");
    for (int d = 4; d <= 6; ++d) {
        expect(p, haar_commutant_dim(d, 2, 2) == 24, "dim(" + std::to_string(d) + ";2,2) != 24");
    }
    expect(p, haar_commutant_dim(2, 2, 2) == 14, "dim(2;2,2) != 14");
}

void criterion_2(Expect& p, double& budget) {
    budget = 1.0;
    const std::map<int, std::uint64_t> want{{0, 5}, {2, 9}, {4, 5}, {6, 1}};
    const auto got = su2_decompose(3);
    expect(p, got == want, "su(2) balanced order-3 multiplicities are off");
    std::uint64_t squares = 0;
    for (const auto& [l, m] : got) squares += m * m;
    expect(p, squares == 132, "sum of squared multiplicities != 132");
}

void criterion_3(Expect& p, double& budget) {
    budget = 1.0;
    std::uint64_t squares = 0;
    for (const auto& [shape, m] : su3_reference()) squares += m * m;
    expect(p, squares == 23, "su(3) squared multiplicities != 23");
    expect(p, squares == gram_rank(4, 3), "su(3) squares disagree with the gram rank");
}

void criterion_4(Expect& p, double& budget) {
    budget = 600.0;
    const GateSet ht = builtin_set(2, {"H", "T"});
    CheckReport r = run_check(ht);
    expect(p, r.verdict == Verdict::UNIVERSAL, "verdict is not UNIVERSAL");
    expect(p, r.commutant_dim == 132 && r.target_dim == 132, "dimension mismatch at (3,3)");
    expect(p, r.t_used == 3, "wrong decisive order");
    expect(p, r.status == CommutantStatus::CERTIFIED, "verdict not certified");
    expect(p, r.gap_ratio >= 1e4, "gap ratio below 1e4: " + num(r.gap_ratio));

    // cross-check by the literal stacked commutator system
    const int t = 3;
    const Index side = 64, d2 = side * side;
    const CMat eye = CMat::Identity(side, side);
    const CMat eye_gate = CMat::Identity(2, 2);
    CMat stack(2 * d2, d2);
    Index row = 0;
    for (const Gate& g : ht.gates) {
        if (projectively_equal(g.matrix, eye_gate)) continue;  // zero block
        CMat l = mixed_lift(g.matrix, t, t);
        stack.block(row, 0, d2, d2) = kron(l, eye) - kron(eye, CMat(l.transpose()));
        row += d2;
    }
    expect(p, row == stack.rows(), "unexpected stack layout");
    RankReport rank = numerical_rank(stack);
    expect(p, rank.rank == d2 - 132, "stacked system rank != 3964: " + std::to_string(rank.rank));
    expect(p, rank.certified(), "stacked rank not certified");
}

void criterion_5(Expect& p, double& budget) {
    budget = 900.0;
    ClosureResult cl = close_group(builtin_set(2, {"H", "S"}));
    expect(p, cl.status == ClosureStatus::FINITE && cl.order() == 24,
           "clifford closure is not order 24");
    std::uint64_t oracle = 0;
    if (cl.status == ClosureStatus::FINITE) {
        oracle = group_commutant_dim(cl.elements, 3, 3);
        expect(p, oracle == 187, "character oracle at (3,3) != 187");
    }

    CheckOptions opts;
    opts.diagnostics = Diagnostics::ALL;
    CheckReport r = run_check(builtin_set(2, {"H", "S"}), opts);
    expect(p, r.verdict == Verdict::NOT_UNIVERSAL, "verdict is not NOT_UNIVERSAL");
    expect(p, r.commutant_dim == 187, "commutant dim != 187: " + std::to_string(r.commutant_dim));
    expect(p, r.commutant_dim == oracle, "engine disagrees with the character oracle");
    expect(p, r.target_dim == 132 && r.status == CommutantStatus::CERTIFIED,
           "target or certification is off");

    bool saw3 = false, saw6 = false;
    for (const DeltaDiagnostic& dd : r.deltas) {
        expect(p, dd.value >= 0.0 && dd.value <= 1.0 + 1e-9,
               "delta outside [0,1]: " + num(dd.value));
        if (dd.t == 3) {
            saw3 = true;
            expect(p, dd.group_value && *dd.group_value <= 1e-8,
                   "group delta at t=3 not ~0 (exact 3-design expected)");
        }
        if (dd.t == 6) {
            saw6 = true;
            expect(p, dd.group_value && *dd.group_value >= 1.0 - 1e-8,
                   "group delta at t=6 not ~1");
        }
    }
    expect(p, saw3 && saw6, "delta diagnostics missing an order");
}

void criterion_6(Expect& p, double& budget) {
    budget = 120.0;
    CheckReport xz = run_check(builtin_set(2, {"X", "Z"}));
    expect(p, xz.verdict == Verdict::NOT_UNIVERSAL, "pauli set not rejected");
    expect(p, xz.commutant_dim == 4 && xz.target_dim == 2,
           "pauli necessary-condition dimensions are off");

    CheckReport lone = run_check(builtin_set(2, {"T"}));
    expect(p, lone.verdict == Verdict::NOT_UNIVERSAL, "lone diagonal gate not rejected");
    expect(p, lone.commutant_dim != 2, "lone diagonal gate commutant reported as trivial");
    // the actual dimension, confirmed by the exact character oracle
    ClosureResult cl = close_group(builtin_set(2, {"T"}));
    expect(p, cl.status == ClosureStatus::FINITE && cl.order() == 8, "closure of {T} != 8");
    if (cl.status == ClosureStatus::FINITE) {
        expect(p, group_commutant_dim(cl.elements, 1, 1) == 6,
               "character oracle disagrees at (1,1)");
        expect(p, lone.commutant_dim == 6, "engine disagrees with the character oracle");
    }
}

void criterion_7(Expect& p, double& budget) {
    budget = 900.0;
    CheckReport r = run_check(qutrit_set());
    expect(p, r.verdict == Verdict::UNIVERSAL, "qutrit set not certified universal");
    expect(p, r.commutant_dim == 23 && r.target_dim == 23, "qutrit dimension mismatch");
    expect(p, r.t_used == 2, "wrong decisive order for d=3");
    expect(p, r.status == CommutantStatus::CERTIFIED && r.gap_ratio >= 1e4,
           "qutrit verdict not certified");
    expect(p, r.backend_used == Backend::DENSE, "expected the dense engine");
}

void criterion_8(Expect& p, double& budget) {
    budget = 900.0;
    std::mt19937_64 rng(801);
    int sets_checked = 0;

    for (int trial = 0; trial < 12; ++trial) {
        GateSet s = random_set(rng, 2, 2);
        for (int total = 2; total <= 4; ++total) {
            const std::uint64_t want = commutant_dim_dense(s, total, 0).dim;
            for (int t2 = 1; t2 <= total; ++t2) {
                expect(p, commutant_dim_dense(s, total - t2, t2).dim == want,
                       "d=2 split disagreement at total " + std::to_string(total));
            }
        }
        ++sets_checked;
    }
    for (int trial = 0; trial < 8; ++trial) {
        GateSet s = random_set(rng, 3, 2);
        for (int total = 2; total <= 3; ++total) {
            const std::uint64_t want = commutant_dim_dense(s, total, 0).dim;
            for (int t2 = 1; t2 <= total; ++t2) {
                expect(p, commutant_dim_dense(s, total - t2, t2).dim == want,
                       "d=3 split disagreement at total " + std::to_string(total));
            }
        }
        ++sets_checked;
    }
    // total order 4 at d=3 exceeds the dense cap; the matrix-free engine
    // covers the remaining splits
    for (int trial = 0; trial < 2; ++trial) {
        GateSet s = random_set(rng, 3, 2);
        MatrixFreeOptions opts;
        opts.dim_hint = 24;
        CommutantResult a = commutant_dim_matrixfree(s, 2, 2, opts);
        CommutantResult b = commutant_dim_matrixfree(s, 3, 1, opts);
        expect(p, a.status == CommutantStatus::CERTIFIED, "matrix-free (2,2) not certified");
        expect(p, b.status == CommutantStatus::CERTIFIED, "matrix-free (3,1) not certified");
        expect(p, a.dim == b.dim, "d=3 split disagreement at total 4");
        ++sets_checked;
    }
    expect(p, sets_checked >= 20, "fewer than 20 random sets exercised");

    // partial transpose: exact involution ...
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 5; ++trial) {
        const int d = trial % 2 == 0 ? 2 : 3;
        const int t = d == 2 ? 3 : 2;
        Index side = 1;
        for (int k = 0; k < t; ++k) side *= d;
        CMat x(side, side);
        for (Index i = 0; i < side; ++i)
            for (Index j = 0; j < side; ++j) x(i, j) = Cx(g(rng), g(rng));
        for (int n = 0; n <= t; ++n) {
            CMat twice = partial_transpose(partial_transpose(x, t, n, d), t, n, d);
            expect(p, max_abs(twice - x) == 0.0, "partial transpose is not an exact involution");
        }
    }
    // ... and the commutant mapping across splits
    for (int trial = 0; trial < 3; ++trial) {
        GateSet s = random_set(rng, 2, 2);
        for (const CMat& x : commutant_basis_dense(s, 2, 0)) {
            CMat y = partial_transpose(x, 2, 1, 2);
            expect(p, commutation_residual(s, 1, 1, y) <= 1e-9,
                   "mapped basis fails to commute at (1,1)");
        }
        for (const CMat& x : commutant_basis_dense(s, 3, 0)) {
            CMat y1 = partial_transpose(x, 3, 1, 2);
            expect(p, commutation_residual(s, 2, 1, y1) <= 1e-9,
                   "mapped basis fails to commute at (2,1)");
            CMat y2 = partial_transpose(x, 3, 2, 2);
            expect(p, commutation_residual(s, 1, 2, y2) <= 1e-9,
                   "mapped basis fails to commute at (1,2)");
        }
    }
}

void criterion_9(Expect& p, double& budget) {
    budget = 300.0;
    std::mt19937_64 rng(901);

    struct Case {
        int d, t;
    };
    for (Case c : {Case{2, 1}, Case{2, 2}, Case{2, 3}, Case{3, 1}, Case{3, 2}}) {
        CMat proj = haar_moment_operator(c.d, c.t);
        expect(p, max_abs(matmul(proj, proj) - proj) <= 1e-10, "projector not idempotent");
        expect(p, max_abs(CMat(proj - proj.adjoint())) <= 1e-10, "projector not hermitian");
        if (c.d == 2) {
            const double want[] = {1.0, 2.0, 5.0};
            expect(p, std::abs(proj.trace().real() - want[c.t - 1]) <= 1e-8,
                   "projector trace is off at t=" + std::to_string(c.t));
        }
        CMat l = mixed_lift(haar_unitary(rng, c.d), c.t, c.t);
        expect(p, max_abs(matmul(l, proj) - proj) <= 1e-10, "lift does not absorb the projector");
        expect(p, max_abs(matmul(proj, l) - proj) <= 1e-10, "projector does not absorb the lift");
    }

    for (int trial = 0; trial < 6; ++trial) {
        const int d = trial % 2 == 0 ? 2 : 3;
        GateSet s = random_set(rng, d, 2, trial % 3 == 0);
        DeltaResult r = delta(s, 2);
        expect(p, r.value >= 0.0 && r.value <= 1.0 + 1e-9, "delta outside [0,1]: " + num(r.value));
        expect(p, r.converged, "delta estimator did not converge");
    }

    // convolution law on adjoint-closed sets
    const CMat proj = haar_moment_operator(2, 2);
    for (int trial = 0; trial < 4; ++trial) {
        GateSet s = random_set(rng, 2, 2, true);
        const double d1 = delta(s, 2).value;
        for (int l = 2; l <= 3; ++l) {
            const double dl = spectral_norm(CMat(word_moment(s, 2, l) - proj)).value;
            expect(p, std::abs(dl - std::pow(d1, l)) <= 1e-7,
                   "convolution power law violated at l=" + std::to_string(l) + ": |" + num(dl) +
                       " - " + num(d1) + "^" + std::to_string(l) + "|");
        }
    }
}

void criterion_10(Expect& p, double& budget) {
    budget = 1800.0;
    std::mt19937_64 rng(1001);
    for (int trial = 0; trial < 10; ++trial) {
        const int d = trial % 2 == 0 ? 2 : 3;
        const int t1 = d == 2 ? 2 : 2, t2 = d == 2 ? 2 : 1;
        GateSet s = random_set(rng, d, 2);
        CommutantResult dense = commutant_dim_dense(s, t1, t2);
        CommutantResult mf = commutant_dim_matrixfree(s, t1, t2);
        expect(p, dense.status == CommutantStatus::CERTIFIED, "dense run not certified");
        expect(p, mf.status == CommutantStatus::CERTIFIED, "matrix-free run not certified");
        expect(p, dense.dim == mf.dim,
               "backend disagreement: dense " + std::to_string(dense.dim) + " vs matrix-free " +
                   std::to_string(mf.dim));
    }

    // beyond the dense cap: a generic pair at d=4 matches the full group
    GateSet big = random_set(rng, 4, 2);
    MatrixFreeOptions opts;
    opts.dim_hint = 24;
    CommutantResult r = commutant_dim_matrixfree(big, 2, 2, opts);
    expect(p, r.status == CommutantStatus::CERTIFIED, "d=4 matrix-free run not certified");
    expect(p, r.dim == 24, "d=4 commutant dim != 24: " + std::to_string(r.dim));
    expect(p, r.backend == Backend::MATRIX_FREE, "wrong backend tag");

    // starved runs must stay inconclusive rather than guess
    MatrixFreeOptions starved = opts;
    starved.budget = 3;
    CommutantResult starved_r = commutant_dim_matrixfree(big, 2, 2, starved);
    expect(p, starved_r.status == CommutantStatus::INCONCLUSIVE,
           "starved run did not report INCONCLUSIVE");
    expect(p, starved_r.dim == 1, "starved run claimed a nontrivial dimension");

    CheckOptions copts;
    copts.backend = Backend::MATRIX_FREE;
    copts.budget = 3;
    CheckReport rep = run_check(big, copts);
    expect(p, rep.verdict == Verdict::INCONCLUSIVE, "starved check issued a verdict");
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* title;
        void (*body)(Expect&, double&);
    };
    const Entry entries[] = {
        {1, "full-group commutant dimensions (exact modular rank)", criterion_1},
        {2, "su(2) decomposition at the decisive order", criterion_2},
        {3, "su(3) reference multiplicities", criterion_3},
        {4, "universal pair certified at (3,3), stacked-system cross-check", criterion_4},
        {5, "clifford generators rejected with exact oracle and design dichotomy", criterion_5},
        {6, "necessary-condition rejections", criterion_6},
        {7, "universal qutrit pair certified at (2,2)", criterion_7},
        {8, "split invariance and partial-transpose mapping", criterion_8},
        {9, "projector identities, delta range, convolution law", criterion_9},
        {10, "backend agreement and honest non-convergence", criterion_10},
    };

    int failed = 0;
    for (const Entry& e : entries) {
        Expect problems;
        double budget = 0.0;
        const auto start = std::chrono::steady_clock::now();
        try {
            e.body(problems, budget);
        } catch (const std::exception& ex) {
            problems.push_back(std::string("exception: ") + ex.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                          start)
                                .count();
        if (budget > 0.0 && secs > budget) {
            problems.push_back("exceeded the time budget: " + num(secs) + " s > " + num(budget) +
                               " s");
        }
        if (problems.empty()) {
            std::printf("[PASS] criterion %d: %s (%.1f s)\n", e.id, e.title, secs);
        } else {
            ++failed;
            std::printf("[FAIL] criterion %d: %s (%.1f s)\n", e.id, e.title, secs);
            for (const std::string& what : problems) {
                std::printf("       - %s\n", what.c_str());
            }
        }
        std::fflush(stdout);
    }
    std::printf("%d/10 criteria passed\n", 10 - failed);
    return failed;
}
