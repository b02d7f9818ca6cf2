#pragma once

#include "unicheck/types.hpp"

#include <istream>
#include <string>
#include <vector>

namespace unicheck {

struct Gate {
    std::string label;
    CMat matrix;
};

// A validated finite set of d x d unitaries carrying the uniform measure.
// Analysis routines require sets run through normalized(): the identity is a
// member and projective duplicates are merged.
struct GateSet {
    int d = 0;
    std::vector<Gate> gates;
    bool identity_added = false;    // identity was auto-inserted
    int duplicates_removed = 0;     // projective duplicates dropped

    std::size_t size() const { return gates.size(); }
};

struct ParseOptions {
    double unitarity_tol = kUnitarityTol;
    // Replace each input matrix by its polar-decomposition unitary factor
    // before validating (cleanup for near-unitary data).
    bool project_unitary = false;
};

// Reads the gate-set JSON format:
//   { "d": <int>, "gates": [ { "name": <string>, "matrix": [[[re,im],...],...] },
//                            { "name": "H", "builtin": true }, ... ] }
// Throws validation_error on malformed input, d < 2, shape mismatch, or a
// unitarity defect beyond tolerance.
GateSet parse_gate_set(const std::string& json_text, const ParseOptions& opts = {});
GateSet parse_gate_set_file(const std::string& path, const ParseOptions& opts = {});

// Builtin gates: I, X (shift), Y, Z (clock), H, S, T, CNOT, F (Fourier),
// PHASE(theta) = diag(1,...,1,e^{i theta}). Y/H/S/T require d=2, CNOT d=4.
CMat builtin(const std::string& name, int d);

// Largest entry-wise deviation of U^H U from the identity.
double unitarity_defect(const CMat& u);

// True iff u = e^{i phi} v for some phase, detected by |tr(u^H v)| >= d - tol.
bool projectively_equal(const CMat& u, const CMat& v, double phase_tol = kPhaseTol);

// Rescales u by a global phase so its largest-magnitude entry is real positive.
CMat canonical_phase(const CMat& u);

// Projects a near-unitary matrix onto the unitary group (polar factor).
CMat project_to_unitary(const CMat& a);

// Ensures the identity is present and merges projective duplicates, recording
// both in the returned set's flags. Idempotent.
GateSet normalized(const GateSet& s, double phase_tol = kPhaseTol);

}  // namespace unicheck
