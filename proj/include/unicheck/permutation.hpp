#pragma once

#include "unicheck/types.hpp"

#include <cstdint>
#include <vector>

namespace unicheck {

// Permutations of {0,...,n-1} in one-line notation: p[k] is where slot k goes.
using Perm = std::vector<int>;

std::vector<Perm> all_permutations(int n);
Perm compose(const Perm& a, const Perm& b);  // (a o b)(k) = a[b[k]]
Perm inverse(const Perm& p);
int cycle_count(const Perm& p);

// Permutation operator on (C^d)^{ox n}: moves the content of slot k to slot
// p[k], so P_p |i_0 ... i_{n-1}> = |j_0 ... j_{n-1}> with j_{p[k]} = i_k.
// Satisfies P_a P_b = P_{a o b} and tr P_p = d^{cycle_count(p)}.
CMat permutation_operator(const Perm& p, int d);

// Rank of the n! x n! Gram matrix G(a,b) = d^{cycle_count(inverse(a) o b)}
// computed exactly by Gaussian elimination over two independent large primes.
// For d >= n this equals n!; in general it is sum of squared multiplicities of
// the S_n irreps surviving Schur-Weyl duality at local dimension d.
// Throws numerics_error if the primes cannot be trusted for this (n, d).
std::uint64_t gram_rank(int n, int d);

}  // namespace unicheck
