#include "unicheck/permutation.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

namespace unicheck {

std::vector<Perm> all_permutations(int n) {
    if (n < 0) throw validation_error("all_permutations: negative n");
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<Perm> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

Perm compose(const Perm& a, const Perm& b) {
    if (a.size() != b.size()) throw validation_error("compose: size mismatch");
    Perm c(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        c[k] = a[static_cast<std::size_t>(b[k])];
    }
    return c;
}

Perm inverse(const Perm& p) {
    Perm inv(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        inv[static_cast<std::size_t>(p[k])] = static_cast<int>(k);
    }
    return inv;
}

int cycle_count(const Perm& p) {
    std::vector<bool> seen(p.size(), false);
    int cycles = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (seen[k]) continue;
        ++cycles;
        std::size_t j = k;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<std::size_t>(p[j]);
        }
    }
    return cycles;
}

CMat permutation_operator(const Perm& p, int d) {
    const int n = static_cast<int>(p.size());
    Index dim = 1;
    for (int k = 0; k < n; ++k) {
        dim *= d;
        if (dim > kDenseSideCap) {
            throw size_cap_error("permutation operator side exceeds cap");
        }
    }
    CMat out = CMat::Zero(dim, dim);
    std::vector<Index> digits(static_cast<std::size_t>(n));
    for (Index col = 0; col < dim; ++col) {
        // Slot 0 is the most significant digit, matching the kron convention.
        Index rest = col;
        for (int k = n - 1; k >= 0; --k) {
            digits[static_cast<std::size_t>(k)] = rest % d;
            rest /= d;
        }
        Index row = 0;
        std::vector<Index> target(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            target[static_cast<std::size_t>(p[static_cast<std::size_t>(k)])] =
                digits[static_cast<std::size_t>(k)];
        }
        for (int k = 0; k < n; ++k) {
            row = row * d + target[static_cast<std::size_t>(k)];
        }
        out(row, col) = 1.0;
    }
    return out;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) {
    return static_cast<u64>((static_cast<u128>(a) * b) % p);
}

u64 powmod(u64 base, u64 exp, u64 p) {
    u64 r = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, p);
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    return r;
}

// Row-echelon rank of a dense matrix over F_p.
std::size_t rank_mod_p(std::vector<u64> m, std::size_t n, u64 p) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < n; ++col) {
        std::size_t pivot = n;
        for (std::size_t r = rank; r < n; ++r) {
            if (m[r * n + col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == n) continue;
        if (pivot != rank) {
            for (std::size_t c = col; c < n; ++c) {
                std::swap(m[pivot * n + c], m[rank * n + c]);
            }
        }
        const u64 inv = powmod(m[rank * n + col], p - 2, p);
        for (std::size_t r = rank + 1; r < n; ++r) {
            u64 lead = m[r * n + col];
            if (lead == 0) continue;
            const u64 f = mulmod(lead, inv, p);
            for (std::size_t c = col; c < n; ++c) {
                u64 sub = mulmod(f, m[rank * n + c], p);
                u64 cur = m[r * n + c];
                m[r * n + c] = cur >= sub ? cur - sub : cur + (p - sub);
            }
        }
        ++rank;
    }
    return rank;
}

bool fits_below(u64 d, int n, u64 p) {
    u128 v = 1;
    for (int k = 0; k < n; ++k) {
        v *= d;
        if (v >= p) return false;
    }
    return true;
}

}  // namespace

std::uint64_t gram_rank(int n, int d) {
    if (n < 0 || d < 1) throw validation_error("gram_rank: bad arguments");
    if (n > 7) throw size_cap_error("gram_rank: n! too large beyond n = 7");

    const std::vector<Perm> perms = all_permutations(n);
    const std::size_t m = perms.size();

    // Cycle counts of inverse(a) o b; entries of the Gram matrix are d^count.
    std::vector<std::uint8_t> counts(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        const Perm ia = inverse(perms[a]);
        for (std::size_t b = 0; b < m; ++b) {
            counts[a * m + b] = static_cast<std::uint8_t>(cycle_count(compose(ia, perms[b])));
        }
    }

    static constexpr std::array<u64, 4> primes = {2199023255579ULL, 4398046511119ULL,
                                                  6597069766657ULL, 8796093022237ULL};

    std::vector<std::size_t> ranks;
    for (u64 p : primes) {
        if (!fits_below(static_cast<u64>(d), n, p)) continue;  // entries would wrap
        std::vector<u64> pow_d(static_cast<std::size_t>(n) + 1);
        pow_d[0] = 1 % p;
        for (int k = 1; k <= n; ++k) pow_d[static_cast<std::size_t>(k)] = mulmod(pow_d[static_cast<std::size_t>(k - 1)], static_cast<u64>(d), p);

        std::vector<u64> mat(m * m);
        for (std::size_t i = 0; i < m * m; ++i) mat[i] = pow_d[counts[i]];
        ranks.push_back(rank_mod_p(std::move(mat), m, p));
        if (ranks.size() >= 2 && ranks[ranks.size() - 1] == ranks[ranks.size() - 2]) {
            return ranks.back();
        }
    }
    if (ranks.size() < 2) {
        throw numerics_error("gram_rank: no pair of trusted primes for d^" +
                             std::to_string(n));
    }
    throw numerics_error("gram_rank: modular ranks disagree across primes");
}

}  // namespace unicheck
