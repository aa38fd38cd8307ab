// Test-only oracles, independent of the library's solve paths. Expected
// values in the test files were computed with these (or by hand) and then
// frozen; the oracles stay around so the derivations remain executable.
#pragma once

#include <optional>
#include <vector>

#include "logconv/lp.hpp"
#include "logconv/rational.hpp"

namespace oracle {

using logconv::LPProblem;
using logconv::Rat;
using logconv::RatVec;

// Gaussian elimination for a square system; nullopt when singular.
inline std::optional<RatVec> solve_square(std::vector<RatVec> a, RatVec b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!a[r][col].is_zero()) { piv = r; break; }
        if (piv < 0) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Rat f = a[r][col] / a[col][col];
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    RatVec x(n);
    for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

// Brute-force LP maximum by enumerating every basic solution (square
// subsystems of tight rows) and keeping the feasible ones. Complete for
// bounded feasible regions: a nonempty bounded polyhedron has a vertex and
// the optimum is attained at one. Returns nullopt when no basic feasible
// solution exists (for bounded instances: infeasible).
inline std::optional<Rat> brute_force_max(const LPProblem& p) {
    const int n = p.num_vars;
    std::vector<logconv::LPRow> all = p.ineqs;
    for (const auto& e : p.eqs) all.push_back(e);
    const int m = static_cast<int>(all.size());
    if (m < n) return std::nullopt;

    std::vector<int> idx(n);
    std::optional<Rat> best;
    auto feasible = [&](const RatVec& x) {
        for (const auto& r : p.ineqs)
            if (logconv::dot(r.a, x) > r.b) return false;
        for (const auto& r : p.eqs)
            if (logconv::dot(r.a, x) != r.b) return false;
        return true;
    };
    // iterate n-subsets of row indices
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (;;) {
        std::vector<RatVec> a;
        RatVec b;
        for (int i : idx) {
            a.push_back(all[i].a);
            b.push_back(all[i].b);
        }
        if (auto x = solve_square(a, b); x && feasible(*x)) {
            Rat v = logconv::dot(p.objective, *x);
            if (!best || v > *best) best = v;
        }
        int k = n - 1;
        while (k >= 0 && idx[k] == m - n + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int i = k + 1; i < n; ++i) idx[i] = idx[i - 1] + 1;
    }
    return best;
}

// 1D convex extremal function for S=[s0,s1] ⊆ U=[u0,u1]:
//   Φ(x) = max(0, (s0−x)/(s0−u0), (x−s1)/(u1−s1)），
// degenerate pieces (S touching ∂U on a side) contribute nothing on that side.
inline Rat phi_1d(const Rat& u0, const Rat& u1, const Rat& s0, const Rat& s1, const Rat& x) {
    Rat v(0);
    if (s0 > u0 && x < s0) {
        Rat c = (s0 - x) / (s0 - u0);
        if (c > v) v = c;
    }
    if (s1 < u1 && x > s1) {
        Rat c = (x - s1) / (u1 - s1);
        if (c > v) v = c;
    }
    return v;
}

}  // namespace oracle
