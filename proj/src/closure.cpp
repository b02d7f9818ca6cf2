#include "unicheck/closure.hpp"

#include "unicheck/moments.hpp"
#include "unicheck/numerics.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

namespace unicheck {

namespace {

// Projective dedup needs pairwise phase-insensitive comparisons; bucketing by
// |tr| (also phase-insensitive) keeps them near-constant time.
class TraceIndex {
  public:
    explicit TraceIndex(double width) : width_(width) {}

    int find(const std::vector<CMat>& elements, const CMat& u, double phase_tol) const {
        const std::int64_t b = bucket(u);
        for (std::int64_t probe = b - 1; probe <= b + 1; ++probe) {
            auto it = buckets_.find(probe);
            if (it == buckets_.end()) continue;
            for (int idx : it->second) {
                if (projectively_equal(elements[static_cast<std::size_t>(idx)], u, phase_tol)) {
                    return idx;
                }
            }
        }
        return -1;
    }

    void insert(const CMat& u, int idx) { buckets_[bucket(u)].push_back(idx); }

  private:
    std::int64_t bucket(const CMat& u) const {
        return static_cast<std::int64_t>(std::floor(std::abs(u.trace()) / width_));
    }

    double width_;
    std::unordered_map<std::int64_t, std::vector<int>> buckets_;
};

}  // namespace

ClosureResult close_group(const GateSet& s, int max_elements, double phase_tol) {
    if (s.gates.empty()) throw validation_error("close_group: empty gate set");
    if (max_elements < static_cast<int>(s.gates.size())) {
        throw validation_error("close_group: max_elements below the generator count");
    }
    const int d = s.d;
    const CMat eye = CMat::Identity(d, d);

    ClosureResult res;
    TraceIndex index(1e-6);
    auto add_if_new = [&](const CMat& u) -> bool {
        if (index.find(res.elements, u, phase_tol) >= 0) return false;
        CMat canon = canonical_phase(u);
        index.insert(canon, static_cast<int>(res.elements.size()));
        res.elements.push_back(std::move(canon));
        return true;
    };

    add_if_new(eye);
    std::vector<int> frontier;
    for (const Gate& g : s.gates) {
        if (add_if_new(g.matrix)) frontier.push_back(static_cast<int>(res.elements.size()) - 1);
    }

    // Words over the generators, by length. Inverses are not needed: in a
    // finite projective group every generator has finite order, so its
    // inverse shows up as a power.
    std::vector<CMat> generators;
    for (const Gate& g : s.gates) {
        if (!projectively_equal(g.matrix, eye, phase_tol)) generators.push_back(g.matrix);
    }

    res.product_depth = frontier.empty() ? 0 : 1;
    int depth = 1;  // word length of the current frontier
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int idx : frontier) {
            for (const CMat& g : generators) {
                CMat prod = res.elements[static_cast<std::size_t>(idx)] * g;
                if (add_if_new(prod)) {
                    next.push_back(static_cast<int>(res.elements.size()) - 1);
                    res.product_depth = depth + 1;
                    if (static_cast<int>(res.elements.size()) > max_elements) {
                        res.status = ClosureStatus::BUDGET_EXCEEDED;
                        return res;
                    }
                }
            }
        }
        ++depth;
        frontier = std::move(next);
    }
    res.status = ClosureStatus::FINITE;

    // Spot-check closedness on random pairs; a miss means the dedup tolerance
    // misbehaved.
    std::mt19937_64 rng(kDefaultSeed);
    std::uniform_int_distribution<std::size_t> pick(0, res.elements.size() - 1);
    for (int trial = 0; trial < 100; ++trial) {
        const CMat prod = res.elements[pick(rng)] * res.elements[pick(rng)];
        if (index.find(res.elements, prod, phase_tol) < 0) {
            throw numerics_error("close_group: product escaped the closed set");
        }
    }
    return res;
}

double group_delta_exact(const std::vector<CMat>& elements, int d, int t) {
    if (elements.empty()) throw validation_error("group_delta_exact: empty group");
    CMat diff = -haar_moment_operator(d, t);
    for (const CMat& g : elements) {
        diff += mixed_lift(g, t, t) / static_cast<double>(elements.size());
    }
    const double value = spectral_norm(diff).value;
    if (value > 1e-6 && std::abs(value - 1.0) > 1e-6) {
        throw numerics_error("group_delta_exact: group moment gap " + std::to_string(value) +
                             " is not 0 or 1");
    }
    return value;
}

std::uint64_t group_commutant_dim(const std::vector<CMat>& elements, int t1, int t2) {
    if (elements.empty()) throw validation_error("group_commutant_dim: empty group");
    if (t1 < 0 || t2 < 0 || t1 + t2 < 1) {
        throw validation_error("group_commutant_dim: need t1 + t2 >= 1");
    }
    // Character average of the conjugation action: each element contributes
    // |tr g|^{2(t1+t2)}, and the group average is the exact integer dimension.
    double acc = 0.0;
    const int power = 2 * (t1 + t2);
    for (const CMat& g : elements) {
        acc += std::pow(std::abs(g.trace()), power);
    }
    acc /= static_cast<double>(elements.size());
    const double rounded = std::round(acc);
    if (std::abs(acc - rounded) > 1e-6) {
        throw numerics_error("group_commutant_dim: non-integer average " + std::to_string(acc));
    }
    return static_cast<std::uint64_t>(rounded);
}

}  // namespace unicheck
