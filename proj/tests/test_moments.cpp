#include "unicheck/closure.hpp"
#include "unicheck/gates.hpp"
#include "unicheck/moments.hpp"
#include "unicheck/numerics.hpp"
#include "unicheck/types.hpp"

#include <doctest.h>

#include "test_support.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace unicheck;
using testsupport::builtin_set;
using testsupport::haar_unitary;
using testsupport::max_abs;
using testsupport::random_set;
using testsupport::set_of;

TEST_SUITE("moments") {

TEST_CASE("mixed_lift on diagonal and product cases") {
    CMat t = builtin("T", 2);
    CMat lift = mixed_lift(t, 1, 1);
    CMat want = CMat::Zero(4, 4);
    want(0, 0) = 1.0;
    want(1, 1) = std::polar(1.0, -std::numbers::pi / 4.0);
    want(2, 2) = std::polar(1.0, std::numbers::pi / 4.0);
    want(3, 3) = 1.0;
    CHECK(max_abs(lift - want) < 1e-15);

    std::mt19937_64 rng(31);
    CMat u = haar_unitary(rng, 2);
    CHECK(max_abs(mixed_lift(u, 1, 0) - u) == doctest::Approx(0.0));
    CHECK(max_abs(mixed_lift(u, 0, 1) - u.conjugate()) == doctest::Approx(0.0));
    CHECK(max_abs(mixed_lift(u, 2, 0) - kron(u, u)) == doctest::Approx(0.0));
    CHECK(max_abs(mixed_lift(u, 2, 1) - kron(kron(u, u), u.conjugate())) ==
          doctest::Approx(0.0));

    CMat l = mixed_lift(u, 2, 2);
    CHECK(l.rows() == 16);
    CHECK(unitarity_defect(l) < 1e-12);
}

TEST_CASE("moment_operator averages the lifts") {
    GateSet id_only = builtin_set(2, {"I"});
    CHECK(max_abs(moment_operator(id_only, 2) - CMat::Identity(16, 16)) == doctest::Approx(0.0));

    GateSet ix = builtin_set(2, {"X"});  // normalized to {I, X}
    REQUIRE(ix.gates.size() == 2);
    CMat x = builtin("X", 2);
    CMat want = 0.5 * (CMat::Identity(4, 4) + kron(x, x.conjugate()));
    CHECK(max_abs(moment_operator(ix, 1) - want) < 1e-15);
    // adjoint-closed set gives a hermitian moment operator
    CHECK(max_abs(CMat(want - want.adjoint())) < 1e-15);
}

TEST_CASE("haar_moment_operator is the projector with the right traces") {
    for (int t = 1; t <= 3; ++t) {
        CMat p = haar_moment_operator(2, t);
        CAPTURE(t);
        CHECK(max_abs(matmul(p, p) - p) < 1e-10);
        CHECK(max_abs(CMat(p - p.adjoint())) < 1e-10);
        const double want_trace[] = {1.0, 2.0, 5.0};
        CHECK(p.trace().real() == doctest::Approx(want_trace[t - 1]).epsilon(1e-10));
        CHECK(std::abs(p.trace().imag()) < 1e-12);
    }
    CMat p32 = haar_moment_operator(3, 2);
    CHECK(max_abs(matmul(p32, p32) - p32) < 1e-10);
    CHECK(p32.trace().real() == doctest::Approx(2.0).epsilon(1e-10));

    // rank equals the trace for a projector
    RankReport r = numerical_rank(haar_moment_operator(2, 2));
    CHECK(r.rank == 2);
    CHECK(r.certified());

    CHECK_THROWS_AS(haar_moment_operator(1, 1), validation_error);
    CHECK_THROWS_AS(haar_moment_operator(2, 7), size_cap_error);
}

TEST_CASE("every lift absorbs the haar projector") {
    std::mt19937_64 rng(32);
    for (int d = 2; d <= 3; ++d) {
        for (int t = 1; t <= 2; ++t) {
            CMat p = haar_moment_operator(d, t);
            CMat l = mixed_lift(haar_unitary(rng, d), t, t);
            CAPTURE(d);
            CAPTURE(t);
            CHECK(max_abs(matmul(l, p) - p) < 1e-10);
            CHECK(max_abs(matmul(p, l) - p) < 1e-10);
        }
    }
    // consequently the moment operator of any set absorbs it too
    GateSet s = random_set(rng, 2, 2);
    CMat p = haar_moment_operator(2, 2);
    CHECK(max_abs(matmul(moment_operator(s, 2), p) - p) < 1e-10);
}

TEST_CASE("delta of the trivial set is maximal") {
    DeltaResult r = delta(builtin_set(2, {"I"}), 1);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.at_one);
    CHECK_FALSE(r.at_zero);
    CHECK(r.converged);
}

TEST_CASE("delta stays in the unit interval and certifies") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 4; ++trial) {
        GateSet s = random_set(rng, 2, 2, true);
        DeltaResult r = delta(s, 2);
        CAPTURE(trial);
        CHECK(r.value >= 0.0);
        CHECK(r.value <= 1.0 + 1e-9);
        CHECK(r.converged);
        CHECK(r.error_bound < 1e-6);
    }
}

TEST_CASE("delta of a universal generating set sits strictly inside (0, 1)") {
    DeltaResult r = delta(builtin_set(2, {"H", "T"}), 3);
    CHECK(r.value > 0.1);
    CHECK(r.value < 1.0 - 1e-6);
    CHECK_FALSE(r.at_zero);
    CHECK_FALSE(r.at_one);
}

TEST_CASE("a finite group given as a set is an exact design at its order") {
    // the clifford elements as an explicit gate set form an exact 3-design
    ClosureResult cl = close_group(builtin_set(2, {"H", "S"}));
    REQUIRE(cl.status == ClosureStatus::FINITE);
    REQUIRE(cl.order() == 24);
    GateSet cliff = set_of(2, cl.elements);
    CHECK(cliff.gates.size() == 24);

    DeltaResult d3 = delta(cliff, 3);
    CHECK(d3.value < 1e-8);
    CHECK(d3.at_zero);

    // but not a 4-design
    DeltaResult d4 = delta(cliff, 4);
    CHECK(d4.value > 1.0 - 1e-8);
    CHECK(d4.at_one);
}

TEST_CASE("word_moment telescopes to powers of the moment operator") {
    GateSet ix = builtin_set(2, {"X"});
    CMat t1 = moment_operator(ix, 1);
    CHECK(max_abs(word_moment(ix, 1, 1) - t1) == doctest::Approx(0.0));
    // averaging the four two-letter words by hand: {II, IX, XI, XX}
    CMat x = builtin("X", 2);
    CMat lift_i = CMat::Identity(4, 4), lift_x = kron(x, x.conjugate());
    CMat hand = 0.25 * (2.0 * lift_i + 2.0 * lift_x);
    CHECK(max_abs(word_moment(ix, 1, 2) - hand) < 1e-14);

    std::mt19937_64 rng(34);
    GateSet s = random_set(rng, 2, 2);
    CMat step = moment_operator(s, 2);
    CHECK(max_abs(word_moment(s, 2, 3) - matmul(matmul(step, step), step)) < 1e-10);
    CHECK_THROWS_AS(word_moment(s, 2, 0), validation_error);
}

TEST_CASE("convolution powers contract the design gap for symmetric sets") {
    std::mt19937_64 rng(35);
    CMat p = haar_moment_operator(2, 2);
    for (int trial = 0; trial < 3; ++trial) {
        GateSet s = random_set(rng, 2, 2, true);  // adjoint-closed
        const double d1 = delta(s, 2).value;
        for (int l = 2; l <= 3; ++l) {
            CMat w = word_moment(s, 2, l);
            const double dl = spectral_norm(CMat(w - p)).value;
            CAPTURE(trial);
            CAPTURE(l);
            CHECK(std::abs(dl - std::pow(d1, l)) < 1e-7);
        }
    }
}

TEST_CASE("matrix-free lift application matches the dense lift") {
    std::mt19937_64 rng(36);
    std::normal_distribution<double> g;
    auto rand_mat = [&](int n) {
        CMat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = Cx(g(rng), g(rng));
        return m;
    };
    struct Case {
        int d, t1, t2;
    };
    for (Case c : {Case{2, 2, 1}, Case{2, 1, 1}, Case{3, 1, 1}, Case{2, 3, 0}}) {
        const int side = static_cast<int>(std::pow(c.d, c.t1 + c.t2));
        CMat u = haar_unitary(rng, c.d);
        CMat x = rand_mat(side);
        CMat l = mixed_lift(u, c.t1, c.t2);
        CAPTURE(c.d);
        CAPTURE(c.t1);
        CAPTURE(c.t2);
        CHECK(max_abs(apply_lift_rows(u, c.t1, c.t2, x) - matmul(l, x)) < 1e-12);
        CHECK(max_abs(apply_lift_cols_adjoint(u, c.t1, c.t2, x) - matmul(x, CMat(l.adjoint()))) <
              1e-12);
    }
}

}  // TEST_SUITE
