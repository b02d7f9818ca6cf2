#include "unicheck/check.hpp"
#include "unicheck/closure.hpp"
#include "unicheck/commutant.hpp"
#include "unicheck/gates.hpp"
#include "unicheck/haar_ref.hpp"
#include "unicheck/moments.hpp"
#include "unicheck/numerics.hpp"
#include "unicheck/permutation.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

namespace py = pybind11;
using namespace unicheck;

namespace {

GateSet build_set(int d, const std::vector<CMat>& matrices,
                  std::optional<std::vector<std::string>> labels, bool project_unitary,
                  double unitarity_tol) {
    if (d < 2) throw validation_error("d must be at least 2");
    if (matrices.empty()) throw validation_error("need at least one gate");
    if (labels && labels->size() != matrices.size()) {
        throw validation_error("labels and matrices disagree in length");
    }
    GateSet s;
    s.d = d;
    for (std::size_t i = 0; i < matrices.size(); ++i) {
        Gate g;
        g.label = labels ? (*labels)[i] : "g" + std::to_string(i);
        g.matrix = matrices[i];
        if (g.matrix.rows() != d || g.matrix.cols() != d) {
            throw validation_error("gate '" + g.label + "' is not " + std::to_string(d) + "x" +
                                   std::to_string(d));
        }
        if (project_unitary) g.matrix = project_to_unitary(g.matrix);
        if (unitarity_defect(g.matrix) > unitarity_tol) {
            throw validation_error("gate '" + g.label + "' is not unitary within tolerance");
        }
        s.gates.push_back(std::move(g));
    }
    return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "universality checks for finite gate sets";

    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<size_cap_error>(m, "SizeCapError", PyExc_ValueError);
    py::register_exception<numerics_error>(m, "NumericsError", PyExc_RuntimeError);

    py::enum_<Verdict>(m, "Verdict")
        .value("UNIVERSAL", Verdict::UNIVERSAL)
        .value("NOT_UNIVERSAL", Verdict::NOT_UNIVERSAL)
        .value("INCONCLUSIVE", Verdict::INCONCLUSIVE);

    py::enum_<CommutantStatus>(m, "CommutantStatus")
        .value("CERTIFIED", CommutantStatus::CERTIFIED)
        .value("UNCERTAIN", CommutantStatus::UNCERTAIN)
        .value("INCONCLUSIVE", CommutantStatus::INCONCLUSIVE);

    py::enum_<ClosureStatus>(m, "ClosureStatus")
        .value("FINITE", ClosureStatus::FINITE)
        .value("BUDGET_EXCEEDED", ClosureStatus::BUDGET_EXCEEDED);

    py::enum_<Backend>(m, "Backend")
        .value("AUTO", Backend::AUTO)
        .value("DENSE", Backend::DENSE)
        .value("MATRIX_FREE", Backend::MATRIX_FREE);

    py::enum_<Diagnostics>(m, "Diagnostics")
        .value("NONE", Diagnostics::NONE)
        .value("DELTA", Diagnostics::DELTA)
        .value("CLOSURE", Diagnostics::CLOSURE)
        .value("ALL", Diagnostics::ALL);

    py::class_<GateSet>(m, "GateSet")
        .def_readonly("d", &GateSet::d)
        .def_readonly("identity_added", &GateSet::identity_added)
        .def_readonly("duplicates_removed", &GateSet::duplicates_removed)
        .def("__len__", [](const GateSet& s) { return s.gates.size(); })
        .def("labels",
             [](const GateSet& s) {
                 std::vector<std::string> out;
                 for (const Gate& g : s.gates) out.push_back(g.label);
                 return out;
             })
        .def("matrix", [](const GateSet& s, std::size_t i) {
            if (i >= s.gates.size()) throw py::index_error();
            return s.gates[i].matrix;
        });

    m.def("parse_gate_set",
          [](const std::string& text, bool project_unitary, double unitarity_tol) {
              ParseOptions o;
              o.project_unitary = project_unitary;
              o.unitarity_tol = unitarity_tol;
              return parse_gate_set(text, o);
          },
          py::arg("json_text"), py::arg("project_unitary") = false,
          py::arg("unitarity_tol") = kUnitarityTol);
    m.def("gate_set", &build_set, py::arg("d"), py::arg("matrices"),
          py::arg("labels") = std::nullopt, py::arg("project_unitary") = false,
          py::arg("unitarity_tol") = kUnitarityTol);
    m.def("builtin", &builtin, py::arg("name"), py::arg("d"));
    m.def("normalized", &normalized, py::arg("gate_set"), py::arg("phase_tol") = kPhaseTol);

    m.def("mixed_lift", &mixed_lift, py::arg("u"), py::arg("t1"), py::arg("t2"));
    m.def("moment_operator", &moment_operator, py::arg("gate_set"), py::arg("t"));
    m.def("word_moment", &word_moment, py::arg("gate_set"), py::arg("t"), py::arg("l"));
    m.def("partial_transpose", &partial_transpose, py::arg("x"), py::arg("t"), py::arg("n"),
          py::arg("d"));
    m.def("haar_moment_operator", &haar_moment_operator, py::arg("d"), py::arg("t"));
    m.def("haar_commutant_dim", &haar_commutant_dim, py::arg("d"), py::arg("t1"), py::arg("t2"));
    m.def("gram_rank", &gram_rank, py::arg("n"), py::arg("d"));
    m.def("su2_decompose", &su2_decompose, py::arg("t"));
    m.def("su3_reference", &su3_reference);
    m.def("target_dimension", [](int d) {
        TargetDimension td = target_dimension(d);
        return py::make_tuple(td.t, td.dim);
    });

    py::class_<DeltaResult>(m, "DeltaResult")
        .def_readonly("value", &DeltaResult::value)
        .def_readonly("error_bound", &DeltaResult::error_bound)
        .def_readonly("at_zero", &DeltaResult::at_zero)
        .def_readonly("at_one", &DeltaResult::at_one)
        .def_readonly("converged", &DeltaResult::converged);
    m.def("delta", &delta, py::arg("gate_set"), py::arg("t"), py::arg("tol") = kSpectralTol,
          py::arg("seed") = kDefaultSeed);

    py::class_<CommutantResult>(m, "CommutantResult")
        .def_readonly("dim", &CommutantResult::dim)
        .def_readonly("status", &CommutantResult::status)
        .def_readonly("gap_ratio", &CommutantResult::gap_ratio)
        .def_readonly("iterations", &CommutantResult::iterations)
        .def_readonly("backend", &CommutantResult::backend);
    m.def("commutant_dim_dense", &commutant_dim_dense, py::arg("gate_set"), py::arg("t1"),
          py::arg("t2"), py::arg("rank_rel_tol") = kRankRelTol);
    m.def("commutant_basis_dense", &commutant_basis_dense, py::arg("gate_set"), py::arg("t1"),
          py::arg("t2"), py::arg("rank_rel_tol") = kRankRelTol);
    m.def("commutant_dim_matrixfree",
          [](const GateSet& s, int t1, int t2, int budget, std::uint64_t seed,
             std::uint64_t dim_hint) {
              MatrixFreeOptions o;
              o.budget = budget;
              o.seed = seed;
              o.dim_hint = dim_hint;
              return commutant_dim_matrixfree(s, t1, t2, o);
          },
          py::arg("gate_set"), py::arg("t1"), py::arg("t2"),
          py::arg("budget") = kMatrixFreeBudget, py::arg("seed") = kDefaultSeed,
          py::arg("dim_hint") = 0);

    py::class_<NecessaryCondition>(m, "NecessaryCondition")
        .def_readonly("holds", &NecessaryCondition::holds)
        .def_readonly("dim", &NecessaryCondition::dim)
        .def_readonly("target", &NecessaryCondition::target)
        .def_readonly("status", &NecessaryCondition::status);
    m.def("necessary_condition", &necessary_condition, py::arg("gate_set"),
          py::arg("rank_rel_tol") = kRankRelTol);

    py::class_<ClosureResult>(m, "ClosureResult")
        .def_readonly("status", &ClosureResult::status)
        .def_readonly("product_depth", &ClosureResult::product_depth)
        .def_property_readonly("order", &ClosureResult::order)
        .def_property_readonly("elements",
                               [](const ClosureResult& r) { return r.elements; });
    m.def("close_group", &close_group, py::arg("gate_set"),
          py::arg("max_elements") = kClosureBudget, py::arg("phase_tol") = kPhaseTol);
    m.def("group_delta_exact", &group_delta_exact, py::arg("elements"), py::arg("d"),
          py::arg("t"));
    m.def("group_commutant_dim", &group_commutant_dim, py::arg("elements"), py::arg("t1"),
          py::arg("t2"));

    py::class_<DeltaDiagnostic>(m, "DeltaDiagnostic")
        .def_readonly("t", &DeltaDiagnostic::t)
        .def_readonly("value", &DeltaDiagnostic::value)
        .def_readonly("error_bound", &DeltaDiagnostic::error_bound)
        .def_readonly("at_zero", &DeltaDiagnostic::at_zero)
        .def_readonly("at_one", &DeltaDiagnostic::at_one)
        .def_readonly("group_value", &DeltaDiagnostic::group_value);

    py::class_<ClosureDiagnostic>(m, "ClosureDiagnostic")
        .def_readonly("status", &ClosureDiagnostic::status)
        .def_readonly("order", &ClosureDiagnostic::order)
        .def_readonly("product_depth", &ClosureDiagnostic::product_depth);

    py::class_<CheckReport>(m, "CheckReport")
        .def_readonly("verdict", &CheckReport::verdict)
        .def_readonly("d", &CheckReport::d)
        .def_readonly("gate_count", &CheckReport::gate_count)
        .def_readonly("identity_added", &CheckReport::identity_added)
        .def_readonly("duplicates_removed", &CheckReport::duplicates_removed)
        .def_readonly("t_used", &CheckReport::t_used)
        .def_readonly("target_dim", &CheckReport::target_dim)
        .def_readonly("commutant_dim", &CheckReport::commutant_dim)
        .def_readonly("necessary_condition_dim", &CheckReport::necessary_condition_dim)
        .def_readonly("status", &CheckReport::status)
        .def_readonly("gap_ratio", &CheckReport::gap_ratio)
        .def_readonly("backend", &CheckReport::backend_used)
        .def_readonly("deltas", &CheckReport::deltas)
        .def_readonly("closure", &CheckReport::closure)
        .def("json", &to_json)
        .def("__repr__", [](const CheckReport& r) {
            std::ostringstream out;
            out << "<CheckReport " << to_string(r.verdict) << " dim=" << r.commutant_dim
                << "/" << r.target_dim << ">";
            return out.str();
        });
    m.def("run_check",
          [](const GateSet& s, Backend backend, Diagnostics diagnostics, int t, double tol,
             double rank_tol, int budget, std::uint64_t seed) {
              CheckOptions o;
              o.backend = backend;
              o.diagnostics = diagnostics;
              o.t_override = t;
              o.tol = tol;
              o.rank_tol = rank_tol;
              o.budget = budget;
              o.seed = seed;
              return run_check(s, o);
          },
          py::arg("gate_set"), py::arg("backend") = Backend::AUTO,
          py::arg("diagnostics") = Diagnostics::NONE, py::arg("t") = 0,
          py::arg("tol") = kSpectralTol, py::arg("rank_tol") = kRankRelTol,
          py::arg("budget") = kMatrixFreeBudget, py::arg("seed") = kDefaultSeed);
}
