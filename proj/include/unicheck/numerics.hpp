#pragma once

#include "unicheck/types.hpp"

#include <vector>

namespace unicheck {

bool all_finite(const CMat& a);

// Throws size_cap_error if a dense matrix of this shape exceeds the cap.
void check_dense_cap(Index rows, Index cols);

// Plain product with an explicit shape check.
CMat matmul(const CMat& a, const CMat& b);

// Kronecker product; the left factor owns the most significant index:
// out((i1,i2),(j1,j2)) = a(i1,j1) * b(i2,j2).
CMat kron(const CMat& a, const CMat& b);

struct SpectralNormResult {
    double value = 0.0;
    double error_bound = 0.0;
    bool converged = false;
    int iterations = 0;
};

// Largest singular value by power iteration on the Gram operator x -> A^H(Ax),
// with a residual-based certificate and random restarts on stagnation.
SpectralNormResult spectral_norm(const CMat& a, double tol = kSpectralTol,
                                 std::uint64_t seed = kDefaultSeed,
                                 int max_iterations = 20000);

struct RankReport {
    Index rank = 0;
    // Smallest retained singular value over largest discarded one;
    // +inf when nothing was discarded or nothing retained.
    double gap_ratio = 0.0;
    RVec singular_values;  // descending

    bool certified() const { return gap_ratio >= kGapRatioCertified; }
};

// Numerical rank via the spectrum of the Hermitian Gram matrix A^H A.
// A singular value is retained when sigma^2 > rel_tol * lambda_max, i.e. the
// cutoff is relative on the Gram spectrum (sigma > sqrt(rel_tol) * sigma_max);
// thresholding sigma itself at 1e-10 would sit below the Gram-squared noise
// floor at the sizes the dense cap allows.
RankReport numerical_rank(const CMat& a, double rel_tol = kRankRelTol);

// Same report, starting from an already-formed Gram matrix (destroyed).
RankReport rank_from_gram(CMat gram, double rel_tol = kRankRelTol);

// Eigenvalues of a Hermitian matrix, ascending (LAPACK zheev, values only;
// the argument is taken by value and destroyed).
std::vector<double> hermitian_eigenvalues(CMat a);

}  // namespace unicheck
