#pragma once

#include "unicheck/gates.hpp"
#include "unicheck/types.hpp"

#include <cstdint>

namespace unicheck {

// The (t1, t2) lift of a d x d unitary: U^{ox t1} ox conj(U)^{ox t2}, a
// d^{t1+t2} square matrix. Dense construction; throws size_cap_error when the
// side exceeds kDenseSideCap.
CMat mixed_lift(const CMat& u, int t1, int t2);

// Moment operator of the uniform measure on a gate set at balanced order t:
// the average of the (t, t) lifts. The set should be normalized.
CMat moment_operator(const GateSet& s, int t);

// Moment operator of the l-fold convolution of the uniform measure: the
// average of lifts over all length-l words, which telescopes to the l-th
// power of moment_operator(s, t).
CMat word_moment(const GateSet& s, int t, int l);

// Moment operator of the Haar measure: the orthogonal projector onto
// span{ vec(P_s) : s in S_t } inside C^{d^t} ox C^{d^t}, built from the
// permutation Gram pseudo-inverse (cutoff kPinvCutoff). vec(A) stacks rows,
// i.e. vec(A) = sum_ij A_ij e_i ox e_j, so the lift acts as
// (U^{ox t} ox conj(U)^{ox t}) vec(A) = vec(U^{ox t} A U^{ox t H}). Trace
// equals the multiplicity of the trivial representation in the (t, t) lift.
// Requires t <= 6 and d^{2t} within the dense cap.
CMat haar_moment_operator(int d, int t);

struct DeltaResult {
    double value = 0.0;         // ||T_{nu,t} - T_{mu,t}||_inf
    double error_bound = 0.0;   // certificate radius from the norm estimator
    bool at_zero = false;       // value <= kAtOneWindow
    bool at_one = false;        // |value - 1| <= kAtOneWindow
    int iterations = 0;
    bool converged = false;
};

// delta(t, nu) for the uniform measure nu on s: spectral norm of the
// difference between the set's moment operator and the Haar projector at
// balanced order t. In [0, 1]; zero iff s is an exact t-design (as a measure).
// Values overshooting [0, 1] by more than the certified error are reported as
// numerics_error; smaller overshoots are clamped.
DeltaResult delta(const GateSet& s, int t, double tol = kSpectralTol,
                  std::uint64_t seed = kDefaultSeed);

// Matrix-free application helpers for the mixed lift acting by conjugation.
// x is a D x D matrix with D = d^{t1+t2}; the result is L x (rows) or x L^H
// (cols_adjoint) where L = mixed_lift(u, t1, t2), never materialized.
CMat apply_lift_rows(const CMat& u, int t1, int t2, const CMat& x);
CMat apply_lift_cols_adjoint(const CMat& u, int t1, int t2, const CMat& x);

}  // namespace unicheck
