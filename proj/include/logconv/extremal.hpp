#pragma once

#include <string>
#include <vector>

#include "logconv/polytope.hpp"
#include "logconv/rng.hpp"

namespace logconv {

// A pair S ⊆ U of convex bodies in generator form. S may be given as cells
// or as a bare point cloud (plus ray mask); evaluation only ever consumes
// the generator data, per the hull invariance Φ_{conv(S),U} = Φ_{S,U}.
struct ExtremalProblem {
    std::vector<Cell> s_cells;  // empty when built from points
    VData s_vdata;
    Cell u;
    VData u_vdata;

    static ExtremalProblem from_cells(std::vector<Cell> s, Cell u);
    static ExtremalProblem from_points(std::vector<RatVec> pts, std::set<int> rays, Cell u);

    int dim() const { return u.poly.dim; }
};

// Affine function x ↦ c·x + d competing in the dual formulation:
// ≤ 0 on S, ≤ 1 on U, and c_j ≥ 0 for every ray −e_j of U.
struct AffineCompetitor {
    RatVec c;
    Rat d;

    Rat eval(const RatVec& x) const { return dot(c, x) + d; }
};

// Φ via the best affine competitor at x (sup of affine minorants).
// Requires x interior to U. The witness is verified exactly before returning.
std::pair<Rat, AffineCompetitor> phi_dual(const ExtremalProblem& prob, const RatVec& x);

// Φ via the Minkowski decomposition: least t with x ∈ (1−t)·conv(S) + t·U.
Rat phi_gauge(const ExtremalProblem& prob, const RatVec& x);

// Self-checking evaluation: returns the dual value after asserting exact
// equality with the gauge value (invariant_error on mismatch — a bug signal).
Rat phi(const ExtremalProblem& prob, const RatVec& x);

// Generators of the closure of the sublevel set U_μ = {Φ < μ}:
// points (1−μ)v + μw over vertex pairs, rays of U. 0 < μ < 1.
VData sublevel_vdata(const ExtremalProblem& prob, const Rat& mu);

namespace detail {
// Evaluation cores used when U exists only as generator data (sublevel sets,
// hulls of crosses). No interior check; callers establish it.
std::pair<Rat, AffineCompetitor> phi_dual_core(const VData& s, const VData& u, const RatVec& x);
Rat phi_gauge_core(const VData& s, const VData& u, const RatVec& x);
Rat phi_core_checked(const VData& s, const VData& u, const RatVec& x);
}  // namespace detail

struct PhiIdentityReport {
    struct Entry {
        std::string property;  // "range", "hull_invariance", "rescaling", "monotone_chain"
        bool pass = true;
        std::string counterexample;
    };
    std::vector<Entry> entries;
    std::vector<std::string> flagged;  // samples outside a required domain (not fatal)

    bool all_pass() const {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
};

// Exact checks of the basic identities on one instance:
//  range           0 ≤ Φ < 1 on samples, Φ = 0 at S-generators interior to U;
//  hull_invariance scattered S-generators vs pruned extreme points;
//  rescaling       μ·Φ_{S,U_μ} = Φ_{S,U} at samples with Φ < μ;
//  monotone_chain  non-increasing values along the nested chain, each
//                  ≥ Φ_{S,U}, small final gap (< 1/10) at the last element.
PhiIdentityReport verify_phi_identities(const ExtremalProblem& prob, const Rat& mu,
                                        const std::vector<RatVec>& samples,
                                        const std::vector<ExtremalProblem>& nested_chain);

// Scaled-copy chain (S_k, U_k) = (z + f_k·(S−z), z + f_k·(U−z)) with
// f_k = (steps+k)/(2·steps) increasing to 1 and z the barycenter of S's
// generators; nested, with the final element equal to (S, U).
std::vector<ExtremalProblem> shrink_chain(const ExtremalProblem& prob, int steps = 3);

// Documented random instance family: U is an H-box or simplex with vertex
// data from {−8..8}/{1,2,4}; S is U shrunk toward a random interior point by
// a factor in [1/8, 1/2] (so S ⊂ int U by construction). When
// point_cloud_s is set, S is handed over as scattered points (vertex images
// plus interior points) instead of one cell.
ExtremalProblem random_extremal_problem(SplitMix64& rng, int dim, bool point_cloud_s = false);

}  // namespace logconv
