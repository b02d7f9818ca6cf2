#pragma once

#include "unicheck/closure.hpp"
#include "unicheck/commutant.hpp"
#include "unicheck/gates.hpp"
#include "unicheck/moments.hpp"
#include "unicheck/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace unicheck {

enum class Verdict { UNIVERSAL, NOT_UNIVERSAL, INCONCLUSIVE };
enum class Diagnostics { NONE, DELTA, CLOSURE, ALL };

const char* to_string(Verdict v);
const char* to_string(Backend b);
const char* to_string(CommutantStatus s);
const char* to_string(ClosureStatus s);

struct CheckOptions {
    Backend backend = Backend::AUTO;
    Diagnostics diagnostics = Diagnostics::NONE;
    int t_override = 0;             // 0 = decide from d
    double tol = kSpectralTol;      // spectral-norm tolerance for deltas
    double rank_tol = kRankRelTol;  // dense rank cutoff
    int budget = kMatrixFreeBudget;
    std::uint64_t seed = kDefaultSeed;
};

struct DeltaDiagnostic {
    int t = 0;
    double value = 0.0;
    double error_bound = 0.0;
    bool at_zero = false;
    bool at_one = false;
    // Exact group-measure delta; present only when the closure is finite.
    std::optional<double> group_value;
};

struct ClosureDiagnostic {
    ClosureStatus status = ClosureStatus::BUDGET_EXCEEDED;
    std::uint64_t order = 0;   // meaningful when FINITE
    int product_depth = 0;
};

// Thresholds and knobs the verdict depended on, echoed into the report.
struct ToleranceRecord {
    double unitarity_tol = kUnitarityTol;
    double phase_tol = kPhaseTol;
    double rank_tol = kRankRelTol;
    double spectral_tol = kSpectralTol;
    double gap_ratio_certified = kGapRatioCertified;
    double at_one_window = kAtOneWindow;
    double matrixfree_gap_tol = kMatrixFreeGapTol;
    int budget = kMatrixFreeBudget;
    std::uint64_t seed = kDefaultSeed;
};

// Wall-clock seconds per pipeline stage; zero when a stage did not run.
struct TimingRecord {
    double parse_normalize = 0.0;
    double necessary_condition = 0.0;
    double commutant = 0.0;
    double diagnostics = 0.0;
    double total = 0.0;
};

struct CheckReport {
    Verdict verdict = Verdict::INCONCLUSIVE;
    int d = 0;
    int gate_count = 0;            // after normalization
    bool identity_added = false;
    int duplicates_removed = 0;
    int t_used = 0;                // balanced order the verdict rests on
    std::uint64_t target_dim = 0;  // full-group commutant dimension at t_used
    std::uint64_t commutant_dim = 0;
    std::uint64_t necessary_condition_dim = 0;  // dim C(S^{1,1}); 0 if skipped
    CommutantStatus status = CommutantStatus::INCONCLUSIVE;
    double gap_ratio = 0.0;
    Backend backend_used = Backend::DENSE;
    std::vector<DeltaDiagnostic> deltas;
    std::optional<ClosureDiagnostic> closure;
    ToleranceRecord tolerances;
    TimingRecord timings;
};

// Full decision pipeline on a normalized gate set: a cheap necessary condition
// at order (1, 1) first (any commutant beyond the trivial-plus-adjoint pair
// rules the set out), then the decisive balanced order for this d. dim ==
// target with a certified gap means UNIVERSAL; certified dim > target means
// NOT_UNIVERSAL; anything uncertified is INCONCLUSIVE. A certified dim <
// target is impossible for a valid input and raises numerics_error.
CheckReport run_check(const GateSet& s, const CheckOptions& opts = {});

// Report serialization: stable field order, floats printed with %.17g.
std::string to_json(const CheckReport& r);
std::string to_text(const CheckReport& r);

int exit_code(Verdict v);  // UNIVERSAL 0, NOT_UNIVERSAL 1, INCONCLUSIVE 2

}  // namespace unicheck
