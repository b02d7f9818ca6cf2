#include "unicheck/gates.hpp"

#include "unicheck/numerics.hpp"

#include <json.hpp>

#include <Eigen/SVD>

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

namespace unicheck {

namespace {

using nlohmann::json;

CMat matrix_from_json(const json& rows, int d, const std::string& label) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != d) {
        throw validation_error("gate '" + label + "': matrix must have " +
                               std::to_string(d) + " rows");
    }
    CMat m(d, d);
    for (int i = 0; i < d; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != d) {
            throw validation_error("gate '" + label + "': row " + std::to_string(i) +
                                   " must have " + std::to_string(d) + " entries");
        }
        for (int j = 0; j < d; ++j) {
            const json& e = row[static_cast<std::size_t>(j)];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                throw validation_error("gate '" + label + "': entry (" + std::to_string(i) +
                                       "," + std::to_string(j) + ") must be [re, im]");
            }
            m(i, j) = Cx(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

}  // namespace

GateSet parse_gate_set(const std::string& json_text, const ParseOptions& opts) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw validation_error(std::string("gate set is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw validation_error("gate set must be a JSON object");
    if (!root.contains("d") || !root["d"].is_number_integer()) {
        throw validation_error("gate set needs an integer field 'd'");
    }
    const int d = root["d"].get<int>();
    if (d < 2) throw validation_error("d must be at least 2");
    if (!root.contains("gates") || !root["gates"].is_array() || root["gates"].empty()) {
        throw validation_error("gate set needs a non-empty 'gates' array");
    }

    GateSet s;
    s.d = d;
    for (const json& g : root["gates"]) {
        if (!g.is_object() || !g.contains("name") || !g["name"].is_string()) {
            throw validation_error("every gate needs a string 'name'");
        }
        Gate gate;
        gate.label = g["name"].get<std::string>();
        const bool is_builtin = g.contains("builtin") && g["builtin"].is_boolean() &&
                                g["builtin"].get<bool>();
        if (is_builtin && g.contains("matrix")) {
            throw validation_error("gate '" + gate.label +
                                   "': give either 'matrix' or 'builtin', not both");
        }
        if (is_builtin) {
            gate.matrix = builtin(gate.label, d);
        } else if (g.contains("matrix")) {
            gate.matrix = matrix_from_json(g["matrix"], d, gate.label);
        } else {
            throw validation_error("gate '" + gate.label + "': needs 'matrix' or 'builtin'");
        }
        if (!all_finite(gate.matrix)) {
            throw validation_error("gate '" + gate.label + "': non-finite entries");
        }
        if (opts.project_unitary) gate.matrix = project_to_unitary(gate.matrix);
        double defect = unitarity_defect(gate.matrix);
        if (defect > opts.unitarity_tol) {
            std::ostringstream msg;
            msg << "gate '" << gate.label << "': unitarity defect " << defect
                << " exceeds tolerance " << opts.unitarity_tol;
            throw validation_error(msg.str());
        }
        s.gates.push_back(std::move(gate));
    }
    return s;
}

GateSet parse_gate_set_file(const std::string& path, const ParseOptions& opts) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open gate-set file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_gate_set(buf.str(), opts);
}

CMat builtin(const std::string& name, int d) {
    const double pi = std::numbers::pi;
    auto require_d = [&](int want) {
        if (d != want) {
            throw validation_error("builtin '" + name + "' needs d=" + std::to_string(want) +
                                   ", got d=" + std::to_string(d));
        }
    };

    if (name == "I") return CMat::Identity(d, d);
    if (name == "X") {  // cyclic shift
        CMat m = CMat::Zero(d, d);
        for (int j = 0; j < d; ++j) m((j + 1) % d, j) = 1.0;
        return m;
    }
    if (name == "Z") {  // clock
        CMat m = CMat::Zero(d, d);
        for (int j = 0; j < d; ++j) m(j, j) = std::polar(1.0, 2.0 * pi * j / d);
        return m;
    }
    if (name == "F") {  // discrete Fourier transform
        CMat m(d, d);
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                m(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                                     2.0 * pi * j * k / d);
            }
        }
        return m;
    }
    if (name == "Y") {
        require_d(2);
        CMat m = CMat::Zero(2, 2);
        m(0, 1) = Cx(0, -1);
        m(1, 0) = Cx(0, 1);
        return m;
    }
    if (name == "H") {
        require_d(2);
        CMat m(2, 2);
        const double r = 1.0 / std::sqrt(2.0);
        m << r, r, r, -r;
        return m;
    }
    if (name == "S") {
        require_d(2);
        CMat m = CMat::Zero(2, 2);
        m(0, 0) = 1.0;
        m(1, 1) = Cx(0, 1);
        return m;
    }
    if (name == "T") {
        require_d(2);
        CMat m = CMat::Zero(2, 2);
        m(0, 0) = 1.0;
        m(1, 1) = std::polar(1.0, pi / 4.0);
        return m;
    }
    if (name == "CNOT") {
        require_d(4);
        CMat m = CMat::Zero(4, 4);
        m(0, 0) = m(1, 1) = 1.0;
        m(2, 3) = m(3, 2) = 1.0;
        return m;
    }
    if (name.rfind("PHASE(", 0) == 0 && name.back() == ')') {
        const std::string arg = name.substr(6, name.size() - 7);
        double theta = 0.0;
        try {
            std::size_t used = 0;
            theta = std::stod(arg, &used);
            if (used != arg.size()) throw std::invalid_argument(arg);
        } catch (const std::exception&) {
            throw validation_error("PHASE angle '" + arg + "' is not a number");
        }
        CMat m = CMat::Identity(d, d);
        m(d - 1, d - 1) = std::polar(1.0, theta);
        return m;
    }
    throw validation_error("unknown builtin gate '" + name + "'");
}

double unitarity_defect(const CMat& u) {
    if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
    CMat r = u.adjoint() * u - CMat::Identity(u.rows(), u.cols());
    return r.cwiseAbs().maxCoeff();
}

bool projectively_equal(const CMat& u, const CMat& v, double phase_tol) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) return false;
    const double d = static_cast<double>(u.rows());
    return std::abs((u.adjoint() * v).trace()) >= d - phase_tol;
}

CMat canonical_phase(const CMat& u) {
    Index bi = 0, bj = 0;
    double best = -1.0;
    for (Index j = 0; j < u.cols(); ++j) {
        for (Index i = 0; i < u.rows(); ++i) {
            double a = std::abs(u(i, j));
            if (a > best) {
                best = a;
                bi = i;
                bj = j;
            }
        }
    }
    if (best <= 0.0) return u;
    Cx phase = u(bi, bj) / best;
    return u / phase;
}

CMat project_to_unitary(const CMat& a) {
    Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

GateSet normalized(const GateSet& s, double phase_tol) {
    if (s.d < 2) throw validation_error("gate set has invalid dimension");
    GateSet out;
    out.d = s.d;
    out.identity_added = s.identity_added;
    out.duplicates_removed = s.duplicates_removed;

    const CMat eye = CMat::Identity(s.d, s.d);
    bool has_identity = false;
    for (const Gate& g : s.gates) {
        bool dup = false;
        for (const Gate& kept : out.gates) {
            if (projectively_equal(kept.matrix, g.matrix, phase_tol)) {
                dup = true;
                break;
            }
        }
        if (dup) {
            ++out.duplicates_removed;
            continue;
        }
        if (projectively_equal(g.matrix, eye, phase_tol)) has_identity = true;
        out.gates.push_back(g);
    }
    if (!has_identity) {
        out.gates.insert(out.gates.begin(), Gate{"I", eye});
        out.identity_added = true;
    }
    return out;
}

}  // namespace unicheck
