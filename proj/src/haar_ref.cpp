#include "unicheck/haar_ref.hpp"

#include "unicheck/permutation.hpp"

namespace unicheck {

std::uint64_t haar_commutant_dim(int d, int t1, int t2) {
    if (d < 2) throw validation_error("haar_commutant_dim: need d >= 2");
    if (t1 < 0 || t2 < 0 || t1 + t2 < 1) {
        throw validation_error("haar_commutant_dim: need t1, t2 >= 0 with t1 + t2 >= 1");
    }
    return gram_rank(t1 + t2, d);
}

std::map<int, std::uint64_t> su2_decompose(int t) {
    if (t < 1 || t > 8) throw validation_error("su2_decompose: need 1 <= t <= 8");
    // U ox conj(U) for SU(2) splits as pi_2 + pi_0; fold that t times using
    // pi_l ox pi_2 = pi_{l+2} + pi_l + pi_{|l-2|} (the middle term drops out
    // at l = 0).
    std::map<int, std::uint64_t> mult{{0, 1}};
    for (int step = 0; step < t; ++step) {
        std::map<int, std::uint64_t> next;
        for (const auto& [l, m] : mult) {
            next[l] += m;  // tensor with pi_0
            if (l == 0) {
                next[2] += m;
            } else {
                next[l + 2] += m;
                next[l] += m;
                next[l - 2] += m;
            }
        }
        mult = std::move(next);
    }
    return mult;
}

std::map<std::pair<int, int>, std::uint64_t> su3_reference() {
    return {
        {{4, 2}, 1}, {{3, 0}, 1}, {{3, 3}, 1}, {{2, 1}, 4}, {{0, 0}, 2},
    };
}

TargetDimension target_dimension(int d) {
    if (d < 2) throw validation_error("target_dimension: need d >= 2");
    if (d == 2) return {3, 132};
    if (d == 3) return {2, 23};
    return {2, 24};
}

}  // namespace unicheck
