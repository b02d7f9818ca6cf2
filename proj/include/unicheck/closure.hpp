#pragma once

#include "unicheck/gates.hpp"
#include "unicheck/types.hpp"

#include <cstdint>
#include <vector>

namespace unicheck {

enum class ClosureStatus {
    FINITE,           // breadth-first closure stabilized
    BUDGET_EXCEEDED,  // element cap hit; group may be infinite or just large
};

struct ClosureResult {
    ClosureStatus status = ClosureStatus::BUDGET_EXCEEDED;
    std::vector<CMat> elements;      // canonical-phase representatives, PU(d)
    int product_depth = 0;           // longest word length that added an element
    std::uint64_t order() const { return elements.size(); }
};

// Breadth-first closure of the projective group generated by the set: all
// products of generators, deduplicated up to global phase, until either a
// level adds nothing (FINITE) or max_elements is hit. Generators need not
// include inverses; for a finite projective group they are reachable as
// powers.
ClosureResult close_group(const GateSet& s, int max_elements = kClosureBudget,
                          double phase_tol = kPhaseTol);

// Exact delta(t, nu_G) for the uniform measure on a finite projective group
// given by its closure elements: || avg_G lift - haar projector ||. For a
// group this is 0 or 1; the measured value is returned unmodified, but values
// further than 1e-6 from both raise numerics_error.
double group_delta_exact(const std::vector<CMat>& elements, int d, int t);

// dim C(G^{t1,t2}) for a finite projective group via characters:
// (1/|G|) sum_g |tr g|^{2(t1+t2)}, an exact integer. Rounds and validates the
// residue (<= 1e-6), else throws numerics_error.
std::uint64_t group_commutant_dim(const std::vector<CMat>& elements, int t1, int t2);

}  // namespace unicheck
