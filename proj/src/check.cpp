#include "unicheck/check.hpp"

#include "unicheck/haar_ref.hpp"
#include "unicheck/numerics.hpp"
#include "unicheck/permutation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

namespace unicheck {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::UNIVERSAL: return "UNIVERSAL";
        case Verdict::NOT_UNIVERSAL: return "NOT_UNIVERSAL";
        case Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
    }
    return "?";
}

const char* to_string(Backend b) {
    switch (b) {
        case Backend::AUTO: return "auto";
        case Backend::DENSE: return "dense";
        case Backend::MATRIX_FREE: return "matrixfree";
    }
    return "?";
}

const char* to_string(CommutantStatus s) {
    switch (s) {
        case CommutantStatus::CERTIFIED: return "CERTIFIED";
        case CommutantStatus::UNCERTAIN: return "UNCERTAIN";
        case CommutantStatus::INCONCLUSIVE: return "INCONCLUSIVE";
    }
    return "?";
}

const char* to_string(ClosureStatus s) {
    switch (s) {
        case ClosureStatus::FINITE: return "FINITE";
        case ClosureStatus::BUDGET_EXCEEDED: return "BUDGET_EXCEEDED";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool fits_cap(int d, int exponent) {
    Index v = 1;
    for (int k = 0; k < exponent; ++k) {
        v *= d;
        if (v > kDenseSideCap) return false;
    }
    return true;
}

// Moment operators at order t are d^{2t}-sided; the dense commutant engine
// squares that again for its Gram matrix.
bool lift_fits(int d, int t) { return fits_cap(d, 2 * t); }
bool dense_engine_fits(int d, int t) { return fits_cap(d, 4 * t); }

// Full-group commutant dimension at balanced order t. The decisive order per
// d uses the pinned constants; other orders fall back to the exact Gram rank
// or the SU(2) multiplicity sum.
std::uint64_t target_dim_for(int d, int t) {
    const TargetDimension decisive = target_dimension(d);
    if (t == decisive.t) return decisive.dim;
    if (2 * t <= 7) return haar_commutant_dim(d, t, t);
    if (d == 2 && t <= 8) {
        std::uint64_t sum = 0;
        for (const auto& [l, m] : su2_decompose(t)) sum += m * m;
        return sum;
    }
    if (d >= 2 * t && 2 * t <= 20) {
        std::uint64_t f = 1;
        for (int k = 2; k <= 2 * t; ++k) f *= static_cast<std::uint64_t>(k);
        return f;
    }
    throw size_cap_error("target dimension out of supported range");
}

CommutantResult run_engine(const GateSet& s, int t, Backend want,
                           const CheckOptions& opts, std::uint64_t dim_hint) {
    Backend pick = want;
    if (pick == Backend::AUTO) {
        pick = dense_engine_fits(s.d, t) ? Backend::DENSE : Backend::MATRIX_FREE;
    }
    if (pick == Backend::DENSE) {
        return commutant_dim_dense(s, t, t, opts.rank_tol);
    }
    MatrixFreeOptions mf;
    mf.budget = opts.budget;
    mf.seed = opts.seed;
    mf.dim_hint = dim_hint;
    return commutant_dim_matrixfree(s, t, t, mf);
}

std::vector<int> delta_orders(int d) {
    std::vector<int> ts;
    if (d == 2) {
        ts = {3, 6};
    } else if (d == 3) {
        ts = {2, 4};
    } else {
        ts = {2};
    }
    std::vector<int> kept;
    for (int t : ts) {
        if (lift_fits(d, t)) kept.push_back(t);
    }
    return kept;
}

}  // namespace

CheckReport run_check(const GateSet& input, const CheckOptions& opts) {
    const auto t_start = Clock::now();
    auto stage_start = t_start;

    const GateSet s = normalized(input);
    CheckReport rep;
    rep.d = s.d;
    rep.gate_count = static_cast<int>(s.gates.size());
    rep.identity_added = s.identity_added;
    rep.duplicates_removed = s.duplicates_removed;
    rep.tolerances.rank_tol = opts.rank_tol;
    rep.tolerances.spectral_tol = opts.tol;
    rep.tolerances.budget = opts.budget;
    rep.tolerances.seed = opts.seed;
    rep.timings.parse_normalize = seconds_since(stage_start);

    const TargetDimension decisive = target_dimension(s.d);
    const int t_main = opts.t_override > 0 ? opts.t_override : decisive.t;

    bool decided = false;

    // Cheap necessary condition first: at order (1,1) the full group reaches
    // commutant dimension 2, so anything above 2 already rules the set out.
    if (t_main > 1) {
        stage_start = Clock::now();
        CommutantResult nec = run_engine(s, 1, opts.backend, opts, 2);
        rep.timings.necessary_condition = seconds_since(stage_start);
        rep.necessary_condition_dim = nec.dim;
        if (nec.status == CommutantStatus::CERTIFIED && nec.dim > 2) {
            rep.verdict = Verdict::NOT_UNIVERSAL;
            rep.t_used = 1;
            rep.target_dim = 2;
            rep.commutant_dim = nec.dim;
            rep.status = nec.status;
            rep.gap_ratio = nec.gap_ratio;
            rep.backend_used = nec.backend;
            decided = true;
        } else if (nec.status == CommutantStatus::CERTIFIED && nec.dim < 2) {
            throw numerics_error("commutant dimension below the full-group value");
        }
    }

    if (!decided) {
        rep.t_used = t_main;
        rep.target_dim = target_dim_for(s.d, t_main);
        stage_start = Clock::now();
        CommutantResult main = run_engine(s, t_main, opts.backend, opts, rep.target_dim);
        rep.timings.commutant = seconds_since(stage_start);
        rep.commutant_dim = main.dim;
        rep.status = main.status;
        rep.gap_ratio = main.gap_ratio;
        rep.backend_used = main.backend;
        if (t_main == 1) rep.necessary_condition_dim = main.dim;

        if (main.status == CommutantStatus::CERTIFIED) {
            if (main.dim == rep.target_dim) {
                // Matching the full group is decisive from the dimension-
                // dependent order upward, only necessary below it.
                rep.verdict = t_main >= decisive.t ? Verdict::UNIVERSAL : Verdict::INCONCLUSIVE;
            } else if (main.dim > rep.target_dim) {
                rep.verdict = Verdict::NOT_UNIVERSAL;
            } else {
                throw numerics_error("commutant dimension below the full-group value");
            }
        } else {
            rep.verdict = Verdict::INCONCLUSIVE;
        }
    }

    if (opts.diagnostics == Diagnostics::NONE) {
        rep.timings.total = seconds_since(t_start);
        return rep;
    }

    stage_start = Clock::now();
    ClosureResult closure = close_group(s);
    if (opts.diagnostics == Diagnostics::CLOSURE || opts.diagnostics == Diagnostics::ALL) {
        ClosureDiagnostic cd;
        cd.status = closure.status;
        cd.order = closure.status == ClosureStatus::FINITE ? closure.order() : 0;
        cd.product_depth = closure.product_depth;
        rep.closure = cd;
    }
    if (opts.diagnostics == Diagnostics::DELTA || opts.diagnostics == Diagnostics::ALL) {
        for (int t : delta_orders(s.d)) {
            DeltaResult dr = delta(s, t, opts.tol, opts.seed);
            DeltaDiagnostic dd;
            dd.t = t;
            dd.value = dr.value;
            dd.error_bound = dr.error_bound;
            dd.at_zero = dr.at_zero;
            dd.at_one = dr.at_one;
            if (closure.status == ClosureStatus::FINITE) {
                dd.group_value = group_delta_exact(closure.elements, s.d, t);
            }
            rep.deltas.push_back(dd);
        }
    }
    rep.timings.diagnostics = seconds_since(stage_start);
    rep.timings.total = seconds_since(t_start);
    return rep;
}

namespace {

std::string fmt_double(double v) {
    if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";  // json has no inf
    if (std::isnan(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_human(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

const char* json_bool(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string to_json(const CheckReport& r) {
    std::ostringstream out;
    out << "{";
    out << "\"schemaVersion\":1";
    out << ",\"verdict\":\"" << to_string(r.verdict) << "\"";
    out << ",\"d\":" << r.d;
    out << ",\"gateCount\":" << r.gate_count;
    out << ",\"identityAdded\":" << json_bool(r.identity_added);
    out << ",\"duplicatesRemoved\":" << r.duplicates_removed;
    out << ",\"tUsed\":" << r.t_used;
    out << ",\"targetDim\":" << r.target_dim;
    out << ",\"commutantDim\":" << r.commutant_dim;
    out << ",\"necessaryConditionDim\":" << r.necessary_condition_dim;
    out << ",\"certainty\":\"" << to_string(r.status) << "\"";
    out << ",\"gapRatio\":" << fmt_double(r.gap_ratio);
    out << ",\"backend\":\"" << to_string(r.backend_used) << "\"";
    if (!r.deltas.empty()) {
        out << ",\"deltaDiagnostics\":[";
        bool first = true;
        for (const DeltaDiagnostic& d : r.deltas) {
            if (!first) out << ",";
            first = false;
            out << "{\"t\":" << d.t;
            out << ",\"value\":" << fmt_double(d.value);
            out << ",\"errorBound\":" << fmt_double(d.error_bound);
            out << ",\"atZero\":" << json_bool(d.at_zero);
            out << ",\"atOne\":" << json_bool(d.at_one);
            if (d.group_value) out << ",\"groupValue\":" << fmt_double(*d.group_value);
            out << "}";
        }
        out << "]";
    }
    if (r.closure) {
        out << ",\"closureDiagnostics\":{";
        out << "\"status\":\"" << to_string(r.closure->status) << "\"";
        if (r.closure->status == ClosureStatus::FINITE) {
            out << ",\"order\":" << r.closure->order;
        }
        out << ",\"productDepth\":" << r.closure->product_depth;
        out << "}";
    }
    out << ",\"tolerances\":{";
    out << "\"unitarityTol\":" << fmt_double(r.tolerances.unitarity_tol);
    out << ",\"phaseTol\":" << fmt_double(r.tolerances.phase_tol);
    out << ",\"rankTol\":" << fmt_double(r.tolerances.rank_tol);
    out << ",\"spectralTol\":" << fmt_double(r.tolerances.spectral_tol);
    out << ",\"gapRatioCertified\":" << fmt_double(r.tolerances.gap_ratio_certified);
    out << ",\"atOneWindow\":" << fmt_double(r.tolerances.at_one_window);
    out << ",\"matrixfreeGapTol\":" << fmt_double(r.tolerances.matrixfree_gap_tol);
    out << ",\"budget\":" << r.tolerances.budget;
    out << ",\"seed\":" << r.tolerances.seed;
    out << "}";
    out << ",\"timings\":{";
    out << "\"parseNormalize\":" << fmt_double(r.timings.parse_normalize);
    out << ",\"necessaryCondition\":" << fmt_double(r.timings.necessary_condition);
    out << ",\"commutant\":" << fmt_double(r.timings.commutant);
    out << ",\"diagnostics\":" << fmt_double(r.timings.diagnostics);
    out << ",\"total\":" << fmt_double(r.timings.total);
    out << "}";
    out << "}";
    return out.str();
}

std::string to_text(const CheckReport& r) {
    std::ostringstream out;
    out << "verdict: " << to_string(r.verdict) << "\n";
    out << "d: " << r.d << ", gates: " << r.gate_count;
    if (r.identity_added) out << " (identity added)";
    if (r.duplicates_removed > 0) {
        out << " (" << r.duplicates_removed << " duplicate(s) removed)";
    }
    out << "\n";
    out << "order: t=" << r.t_used << ", commutant dim: " << r.commutant_dim
        << ", target: " << r.target_dim << "\n";
    if (r.necessary_condition_dim > 0) {
        out << "necessary condition: dim C(S^{1,1}) = " << r.necessary_condition_dim
            << " (want 2)\n";
    }
    out << "certainty: " << to_string(r.status) << ", gap ratio: " << fmt_human(r.gap_ratio)
        << ", backend: " << to_string(r.backend_used) << "\n";
    for (const DeltaDiagnostic& d : r.deltas) {
        out << "delta(t=" << d.t << "): " << fmt_human(d.value) << " +/- "
            << fmt_human(d.error_bound);
        if (d.at_zero) out << " [design]";
        if (d.at_one) out << " [max]";
        if (d.group_value) out << ", group-exact: " << fmt_human(*d.group_value);
        out << "\n";
    }
    if (r.closure) {
        out << "closure: " << to_string(r.closure->status);
        if (r.closure->status == ClosureStatus::FINITE) {
            out << ", order " << r.closure->order;
        }
        out << ", product depth " << r.closure->product_depth << "\n";
    }
    out << "time: " << fmt_human(r.timings.total) << " s\n";
    return out.str();
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::UNIVERSAL: return 0;
        case Verdict::NOT_UNIVERSAL: return 1;
        case Verdict::INCONCLUSIVE: return 2;
    }
    return 2;
}

}  // namespace unicheck
