#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logconv/extremal.hpp"

namespace logconv {

// One factor S_j ⊆ U_j of a cross, carried as an extremal problem.
struct CrossFactor {
    ExtremalProblem prob;

    int dim() const { return prob.dim(); }
};

// N ≥ 2 factors. The cross is T = ∪_j S_1×…×U_j×…×S_N; the additive region
// is W = {x ∈ ΠU_j : Σ Φ_j(x_j) < 1}. make() precomputes everything the
// classification routes need, so specs are immutable afterwards and safe to
// share across threads.
struct CrossSpec {
    std::vector<CrossFactor> factors;
    std::vector<int> offsets;  // block start per factor
    int total_dim = 0;

    VData t_hull;                               // generators of the closed hull of T
    std::vector<std::vector<LPRow>> s_rows;     // H-rows of conv(S_j)'s bounded part
    std::vector<char> s_fulldim;                // int S_j ≠ ∅
    std::vector<char> classifiable;             // s_fulldim and H-rows available (dim ≤ 3)

    static CrossSpec make(std::vector<CrossFactor> factors);

    int blocks() const { return static_cast<int>(factors.size()); }
    RatVec block_of(const RatVec& x, int j) const;
};

enum class WClass { Inside, Boundary, Outside };
const char* to_string(WClass c);

// Exact classification of a point against the cross theorem: the Φ-sum side
// and closed-hull membership side are computed independently; the consistency
// contract (sum<1 ⇒ member, sum>1 ⇒ non-member, sum=1 ⇒ member) is what
// verification campaigns assert.
struct Trichotomy {
    Rat phi_sum;
    WClass w_class = WClass::Inside;
    bool hull_member = false;

    bool consistent() const {
        if (w_class == WClass::Outside) return !hull_member;
        return hull_member;
    }
};

// ∃ j: x_j ∈ U_j (closed) and x_k ∈ conv(S_k) for every k ≠ j.
bool cross_membership(const CrossSpec& spec, const RatVec& x);

// Σ_j Φ_{S_j,U_j}(x_j); every block must be interior to its U_j.
Rat w_value(const CrossSpec& spec, const RatVec& x);

// Both hull routes (vertex-union LP and the scaled-decomposition LP) are run
// on every query and must agree exactly; disagreement throws invariant_error.
// Requires int S_j ≠ ∅ for every factor.
Trichotomy conv_cross_classify(const CrossSpec& spec, const RatVec& x);

// lhs = Φ_{S_1×…×S_N, W}(x) evaluated against the hull-of-T generators,
// rhs = Σ Φ_j(x_j). The additivity identity says lhs = rhs exactly.
// Requires Σ Φ_j(x_j) < 1 (x interior to W).
std::pair<Rat, Rat> product_phi_check(const CrossSpec& spec, const RatVec& x);

struct CrossViolation {
    int sample_index = -1;
    RatVec point;
    std::string detail;
};

struct CrossReport {
    int samples = 0;
    int inside = 0, boundary = 0, outside = 0;
    std::vector<CrossViolation> violations;
    std::vector<std::string> notes;

    bool ok() const { return violations.empty(); }
};

// Seeded campaign over num_samples points (half spread through ΠU_j, a
// quarter on the cross itself, a quarter aimed at the predicted boundary via
// sublevel generators); asserts the trichotomy contract on every sample.
CrossReport verify_cross_theorem(const CrossSpec& spec, int num_samples, uint64_t seed);

namespace detail {
// Scaled-decomposition membership LP from the hull-of-union formula.
bool scaled_decomposition_member(const CrossSpec& spec, const RatVec& x);
// Deterministic campaign point generator: kind 0/1 = spread through ΠU_j,
// 2 = point of the cross, 3 = aimed at the predicted boundary.
RatVec sample_cross_point(const CrossSpec& spec, SplitMix64& rng, int kind);
}  // namespace detail

}  // namespace logconv
