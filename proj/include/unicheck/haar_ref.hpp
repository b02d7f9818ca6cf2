#pragma once

#include "unicheck/types.hpp"

#include <cstdint>
#include <map>

namespace unicheck {

// Reference data for the Haar measure side: the commutant of the full unitary
// group's (t1, t2) lift is spanned by tensor-factor permutation operators, and
// its dimension equals the rank of the permutation Gram matrix with entries
// d^{#cycles}, computed exactly over modular arithmetic.

// dim C(U(d)^{t1,t2}) = gram_rank(t1 + t2, d); equals (t1+t2)! once
// d >= t1 + t2. Exact integer; requires t1 + t2 <= 7.
std::uint64_t haar_commutant_dim(int d, int t1, int t2);

// Multiplicities of SU(2) irreps pi_l (l = 2j, dimension l+1) in the balanced
// t-fold lift U^{ox t} ox conj(U)^{ox t} for d = 2, computed by iterated
// Clebsch-Gordan folding. Key: l, value: multiplicity m_l. Invariants:
// sum m_l^2 = gram_rank(2t, 2), sum m_l (l+1) = 4^t. Requires 1 <= t <= 8.
std::map<int, std::uint64_t> su2_decompose(int t);

// Multiplicities of SU(3) irreps in the balanced (2,2) lift for d = 3. Keys
// are highest-weight partitions (l1, l2) with l3 = 0, i.e. Dynkin labels
// (l1 - l2, l2). Invariants: sum m^2 = 23, sum m * dim = 81.
std::map<std::pair<int, int>, std::uint64_t> su3_reference();

// (t, target) pair the universality decision compares against: the smallest
// balanced order at which the commutant dimension separates universal sets,
// with the expected dimension for the full unitary group.
//   d = 2  -> (3, 132)
//   d = 3  -> (2, 23)
//   d >= 4 -> (2, 24)
struct TargetDimension {
    int t = 0;
    std::uint64_t dim = 0;
};
TargetDimension target_dimension(int d);

}  // namespace unicheck
