#include "unicheck/moments.hpp"

#include "unicheck/numerics.hpp"
#include "unicheck/permutation.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

namespace unicheck {

namespace {

Index pow_checked(int d, int n) {
    Index side = 1;
    for (int k = 0; k < n; ++k) {
        side *= d;
        if (side > kDenseSideCap) throw size_cap_error("lift side exceeds dense cap");
    }
    return side;
}

CVec vec_row_major(const CMat& a) {
    CVec v(a.rows() * a.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            v[i * a.cols() + j] = a(i, j);
        }
    }
    return v;
}

}  // namespace

CMat mixed_lift(const CMat& u, int t1, int t2) {
    if (u.rows() != u.cols()) throw validation_error("mixed_lift: matrix not square");
    if (t1 < 0 || t2 < 0 || t1 + t2 < 1) throw validation_error("mixed_lift: need t1 + t2 >= 1");
    const int d = static_cast<int>(u.rows());
    pow_checked(d, t1 + t2);

    CMat out = CMat::Ones(1, 1);
    const CMat uc = u.conjugate();
    for (int k = 0; k < t1; ++k) out = kron(out, u);
    for (int k = 0; k < t2; ++k) out = kron(out, uc);
    return out;
}

CMat moment_operator(const GateSet& s, int t) {
    if (s.gates.empty()) throw validation_error("moment_operator: empty gate set");
    if (t < 1) throw validation_error("moment_operator: need t >= 1");
    const Index side = pow_checked(s.d, 2 * t);
    CMat acc = CMat::Zero(side, side);
    for (const Gate& g : s.gates) {
        acc += mixed_lift(g.matrix, t, t);
    }
    acc /= static_cast<double>(s.gates.size());
    return acc;
}

CMat word_moment(const GateSet& s, int t, int l) {
    if (l < 1) throw validation_error("word_moment: need l >= 1");
    // The average of lifts over length-l words factorizes into the l-th power
    // of the one-step average, because the lift is multiplicative.
    const CMat step = moment_operator(s, t);
    CMat acc = step;
    for (int k = 1; k < l; ++k) acc = matmul(acc, step);
    return acc;
}

CMat haar_moment_operator(int d, int t) {
    if (d < 2 || t < 1) throw validation_error("haar_moment_operator: need d >= 2, t >= 1");
    if (t > 6) throw size_cap_error("haar_moment_operator: t > 6 unsupported");
    const Index side = pow_checked(d, 2 * t);

    const std::vector<Perm> perms = all_permutations(t);
    const Index m = static_cast<Index>(perms.size());

    CMat basis(side, m);
    for (Index s = 0; s < m; ++s) {
        basis.col(s) = vec_row_major(permutation_operator(perms[static_cast<std::size_t>(s)], d));
    }

    // Gram(a, b) = <vec P_a, vec P_b> = tr(P_a^H P_b) = d^{cycles(a^{-1} o b)}.
    Eigen::MatrixXd gram(m, m);
    for (Index a = 0; a < m; ++a) {
        const Perm ia = inverse(perms[static_cast<std::size_t>(a)]);
        for (Index b = 0; b < m; ++b) {
            int c = cycle_count(compose(ia, perms[static_cast<std::size_t>(b)]));
            gram(a, b) = std::pow(static_cast<double>(d), c);
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    if (es.info() != Eigen::Success) throw numerics_error("haar_moment_operator: gram eig failed");
    const Eigen::VectorXd& lam = es.eigenvalues();
    const double lam_max = lam.maxCoeff();
    Eigen::VectorXd inv_lam = Eigen::VectorXd::Zero(m);
    for (Index i = 0; i < m; ++i) {
        if (lam[i] > kPinvCutoff * lam_max) inv_lam[i] = 1.0 / lam[i];
    }
    Eigen::MatrixXd pinv = es.eigenvectors() * inv_lam.asDiagonal() * es.eigenvectors().transpose();

    CMat half = basis * pinv.cast<Cx>();
    return half * basis.adjoint();
}

DeltaResult delta(const GateSet& s, int t, double tol, std::uint64_t seed) {
    CMat diff = moment_operator(s, t);
    diff -= haar_moment_operator(s.d, t);
    SpectralNormResult norm = spectral_norm(diff, tol, seed);
    DeltaResult r;
    r.value = norm.value;
    r.error_bound = norm.error_bound;
    r.iterations = norm.iterations;
    r.converged = norm.converged;
    if (r.value > 1.0) {
        const double overshoot = r.value - 1.0;
        if (overshoot > std::max(tol, r.error_bound)) {
            throw numerics_error("delta: norm exceeds 1 beyond certified error");
        }
        r.value = 1.0;
    }
    r.at_zero = r.value <= kAtOneWindow;
    r.at_one = std::abs(r.value - 1.0) <= kAtOneWindow;
    return r;
}

namespace {

// Applies the d x d factor A along tensor mode `m` of the row index of x.
// Row index digits: slot 0 most significant, matching kron ordering.
CMat apply_mode_rows(const CMat& a, int d, int n, int m, const CMat& x) {
    const Index rows = x.rows();
    Index post = 1;
    for (int j = m + 1; j < n; ++j) post *= d;
    const Index pre = rows / (post * d);

    CMat y(rows, x.cols());
    for (Index c = 0; c < x.cols(); ++c) {
        for (Index p = 0; p < pre; ++p) {
            const Index base = p * d * post;
            for (Index q = 0; q < post; ++q) {
                for (int j = 0; j < d; ++j) {
                    Cx acc = 0.0;
                    for (int i = 0; i < d; ++i) {
                        acc += a(j, i) * x(base + i * post + q, c);
                    }
                    y(base + j * post + q, c) = acc;
                }
            }
        }
    }
    return y;
}

}  // namespace

CMat apply_lift_rows(const CMat& u, int t1, int t2, const CMat& x) {
    const int d = static_cast<int>(u.rows());
    const int n = t1 + t2;
    if (x.rows() != pow_checked(d, n)) {
        throw validation_error("apply_lift_rows: shape mismatch");
    }
    const CMat uc = u.conjugate();
    CMat y = x;
    for (int m = 0; m < n; ++m) {
        y = apply_mode_rows(m < t1 ? u : uc, d, n, m, y);
    }
    return y;
}

CMat apply_lift_cols_adjoint(const CMat& u, int t1, int t2, const CMat& x) {
    const int d = static_cast<int>(u.rows());
    const int n = t1 + t2;
    if (x.cols() != pow_checked(d, n)) {
        throw validation_error("apply_lift_cols_adjoint: shape mismatch");
    }
    // x L^H = (L x^H)^H with L = mixed_lift(u, t1, t2).
    const CMat uc = u.conjugate();
    CMat y = x.adjoint();
    for (int m = 0; m < n; ++m) {
        y = apply_mode_rows(m < t1 ? u : uc, d, n, m, y);
    }
    return y.adjoint();
}

}  // namespace unicheck
