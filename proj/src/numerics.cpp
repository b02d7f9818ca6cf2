#include "unicheck/numerics.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace unicheck {

bool all_finite(const CMat& a) {
    return a.allFinite();
}

void check_dense_cap(Index rows, Index cols) {
    if (rows > kDenseSideCap || cols > kDenseSideCap) {
        throw size_cap_error("dense object " + std::to_string(rows) + "x" +
                             std::to_string(cols) + " exceeds side cap " +
                             std::to_string(kDenseSideCap));
    }
}

CMat matmul(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows()) {
        throw validation_error("matmul: inner dimensions disagree");
    }
    check_dense_cap(a.rows(), b.cols());
    return a * b;
}

CMat kron(const CMat& a, const CMat& b) {
    check_dense_cap(a.rows() * b.rows(), a.cols() * b.cols());
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

namespace {

CVec random_unit(Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CVec v(n);
    for (Index i = 0; i < n; ++i) v[i] = Cx(gauss(rng), gauss(rng));
    double nrm = v.norm();
    if (nrm == 0.0) {
        v.setZero();
        v[0] = 1.0;
        return v;
    }
    return v / nrm;
}

}  // namespace

SpectralNormResult spectral_norm(const CMat& a, double tol, std::uint64_t seed,
                                 int max_iterations) {
    SpectralNormResult res;
    if (a.size() == 0) {
        res.converged = true;
        return res;
    }
    if (!all_finite(a)) throw numerics_error("spectral_norm: non-finite input");

    // Power iteration on the Gram operator x -> A^H (A x). Rayleigh quotients
    // are nondecreasing for a positive semidefinite operator, so the largest
    // quotient seen is the best lower bound on ||A||^2.
    std::mt19937_64 rng(seed);
    const Index n = a.cols();
    const int restarts = 3;
    const int per_start = std::max(max_iterations / restarts, 16);

    double best_theta = 0.0;
    double best_resid = std::numeric_limits<double>::infinity();
    bool converged = false;
    int used = 0;
    std::vector<double> stationary;  // stagnated Rayleigh quotients, one per restart

    for (int start = 0; start < restarts && !converged; ++start) {
        CVec x = random_unit(n, rng);
        double prev_theta = -1.0;
        int flat = 0;
        for (int it = 0; it < per_start; ++it) {
            ++used;
            CVec z = a.adjoint() * (a * x);
            double theta = std::real(x.dot(z));
            double resid = (z - theta * x).norm();
            if (theta > best_theta || (theta == best_theta && resid < best_resid)) {
                best_theta = theta;
                best_resid = resid;
            }
            if (resid <= tol * std::max(theta, 1e-300)) {
                converged = true;
                break;
            }
            if (prev_theta >= 0.0 &&
                std::abs(theta - prev_theta) <= 1e-3 * tol * std::max(theta, 1e-300)) {
                if (++flat >= 3) {  // stagnated; take a fresh start
                    stationary.push_back(theta);
                    break;
                }
            } else {
                flat = 0;
            }
            prev_theta = theta;
            double znrm = z.norm();
            if (znrm == 0.0) {  // x in the kernel; retry from scratch
                x = random_unit(n, rng);
                prev_theta = -1.0;
                continue;
            }
            x = z / znrm;
        }
    }

    // With a clustered top of the spectrum the eigenvector residual cannot
    // reach tol in any reasonable number of iterations even though the value
    // itself is fully converged. Independent restarts reaching the same
    // stationary quotient certify the value instead.
    if (!converged && stationary.size() >= 2) {
        std::sort(stationary.begin(), stationary.end());
        const double hi = stationary.back();
        const double next = stationary[stationary.size() - 2];
        if (hi - next <= 10.0 * tol * std::max(hi, 1e-300)) converged = true;
    }

    res.value = std::sqrt(std::max(best_theta, 0.0));
    // An eigenvalue of A^H A lies within best_resid of best_theta; translate
    // that radius to the singular-value scale.
    res.error_bound = res.value > 0.0 ? best_resid / (2.0 * res.value)
                                      : std::sqrt(best_resid);
    res.converged = converged;
    res.iterations = used;
    return res;
}

RankReport rank_from_gram(CMat gram, double rel_tol) {
    if (gram.rows() != gram.cols()) {
        throw validation_error("rank_from_gram: matrix not square");
    }
    RankReport rep;
    const Index n = gram.rows();
    if (n == 0) {
        rep.gap_ratio = std::numeric_limits<double>::infinity();
        return rep;
    }
    std::vector<double> lam = hermitian_eigenvalues(std::move(gram));  // ascending
    double lam_max = std::max(lam.back(), 0.0);

    rep.singular_values.resize(n);
    for (Index i = 0; i < n; ++i) {
        rep.singular_values[i] = std::sqrt(std::max(lam[static_cast<std::size_t>(n - 1 - i)], 0.0));
    }

    if (lam_max == 0.0) {
        rep.rank = 0;
        rep.gap_ratio = std::numeric_limits<double>::infinity();
        return rep;
    }

    // Threshold in the Gram spectrum: keep lambda > rel_tol * lambda_max,
    // i.e. sigma > sqrt(rel_tol) * sigma_max. Squaring pushes the noise floor
    // of the small eigenvalues to ~eps * lambda_max, safely below.
    const double cut = rel_tol * lam_max;
    Index rank = 0;
    for (double v : lam) {
        if (v > cut) ++rank;
    }
    rep.rank = rank;

    if (rank == 0 || rank == n) {
        rep.gap_ratio = std::numeric_limits<double>::infinity();
    } else {
        double smallest_kept = rep.singular_values[rank - 1];
        double largest_cut = rep.singular_values[rank];
        rep.gap_ratio = largest_cut > 0.0
                            ? smallest_kept / largest_cut
                            : std::numeric_limits<double>::infinity();
    }
    return rep;
}

RankReport numerical_rank(const CMat& a, double rel_tol) {
    if (!all_finite(a)) throw numerics_error("numerical_rank: non-finite input");
    // Work with the smaller Gram side.
    CMat gram = a.rows() >= a.cols() ? CMat(a.adjoint() * a) : CMat(a * a.adjoint());
    return rank_from_gram(std::move(gram), rel_tol);
}

std::vector<double> hermitian_eigenvalues(CMat a) {
    if (a.rows() != a.cols()) {
        throw validation_error("hermitian_eigenvalues: matrix not square");
    }
    const lapack_int n = static_cast<lapack_int>(a.rows());
    if (n == 0) return {};
    std::vector<double> w(static_cast<std::size_t>(n));
    lapack_int info = LAPACKE_zheev(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data());
    if (info != 0) {
        throw numerics_error("zheev failed with info " + std::to_string(info));
    }
    return w;
}

}  // namespace unicheck
