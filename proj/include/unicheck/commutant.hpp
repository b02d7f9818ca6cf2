#pragma once

#include "unicheck/gates.hpp"
#include "unicheck/types.hpp"

#include <cstdint>
#include <vector>

namespace unicheck {

enum class CommutantStatus {
    CERTIFIED,      // dimension trusted (clean spectral gap)
    UNCERTAIN,      // estimate computed but gap too small to certify
    INCONCLUSIVE,   // iteration budget exhausted before certification
};

enum class Backend {
    AUTO,
    DENSE,
    MATRIX_FREE,
};

struct CommutantResult {
    std::uint64_t dim = 1;     // identity always commutes, so dim >= 1
    CommutantStatus status = CommutantStatus::INCONCLUSIVE;
    double gap_ratio = 0.0;    // dense: singular value gap; matrix-free: Ritz gap
    int iterations = 0;        // matrix-free sweeps (0 for dense)
    Backend backend = Backend::DENSE;
};

// Dimension of the commutant { X : L_g X = X L_g for all g } of the (t1, t2)
// lifts L_g = g^{ox t1} ox conj(g)^{ox t2} over a normalized gate set.
//
// Dense path: the Gram matrix of the stacked commutation system
// [L_g ox I - I ox L_g^T]_g is accumulated analytically as
// sum_g (2 I - K_g - K_g^H) with K_g = kron(L_g, conj(L_g)); the dimension is
// D^2 minus the Gram rank. Exact for unitary lifts.
CommutantResult commutant_dim_dense(const GateSet& s, int t1, int t2,
                                    double rank_rel_tol = kRankRelTol);

// Orthonormal basis (as D x D matrices) of the commutant, from the null space
// of the same Gram matrix. Intended for property tests and diagnostics; the
// dimension-only entry points are the supported production path.
std::vector<CMat> commutant_basis_dense(const GateSet& s, int t1, int t2,
                                        double rank_rel_tol = kRankRelTol);

struct MatrixFreeOptions {
    double gap_tol = kMatrixFreeGapTol;    // Ritz values above 1 - gap_tol count as fixed
    double residual_tol = 1e-6;
    int block_extra = kMatrixFreeBlockExtra;
    int budget = kMatrixFreeBudget;        // total sweep budget
    std::uint64_t seed = kDefaultSeed;
    // Expected dimension (sets the initial block size). 0 = use a default.
    std::uint64_t dim_hint = 0;
};

// Same dimension, computed without materializing any D^2-sided object: block
// subspace iteration on the Hermitian channel Psi = (Phi + id)/2 where
// Phi(X) = avg over s and adjoints of L_g X L_g^H. Fixed points of Psi are
// exactly the commutant. Lift applications use tensor mode products.
CommutantResult commutant_dim_matrixfree(const GateSet& s, int t1, int t2,
                                         const MatrixFreeOptions& opts = {});

// Transpose of the last n tensor factors of an operator on (C^d)^{ox t}:
// out[(i,a),(j,b)] = x[(i,b),(j,a)] with a, b ranging over the last n factors.
// Involutive. Maps the commutant of the (t, 0) lifts onto the commutant of
// the (t - n, n) lifts bijectively, preserving dimension.
CMat partial_transpose(const CMat& x, int t, int n, int d);

struct NecessaryCondition {
    bool holds = false;          // dim == 2 (trivial + adjoint)
    std::uint64_t dim = 0;       // dim C(S^{1,1})
    std::uint64_t target = 2;
    CommutantStatus status = CommutantStatus::INCONCLUSIVE;
};

// Universality pre-check: the commutant of the (1, 1) lifts must be exactly
// 2-dimensional (U ox conj(U) = Ad_U + 1 stays irreducible). Larger values
// certify non-universality.
NecessaryCondition necessary_condition(const GateSet& s,
                                       double rank_rel_tol = kRankRelTol);

}  // namespace unicheck
