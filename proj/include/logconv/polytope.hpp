#pragma once

#include <optional>
#include <set>
#include <vector>

#include "logconv/lp.hpp"
#include "logconv/rational.hpp"
#include "logconv/rng.hpp"

namespace logconv {

// Bounded full-dimensional H-polytope {x : a·x ≤ b per row}. Both properties
// are certified at construction time by LP (boundedness in every ±e_i
// direction, and a strictly feasible point), so downstream code can rely on
// them without re-checking.
struct HPolytope {
    int dim = 0;
    std::vector<LPRow> rows;
    RatVec interior_point;  // strictly feasible witness found at construction

    static HPolytope make(int dim, std::vector<LPRow> rows);
};

// H-polytope plus an axis-extension mask: the denoted (closed) set is
// poly + cone{-e_j : j ∈ ext}. Indices in ext are 0-based.
struct Cell {
    HPolytope poly;
    std::set<int> ext;
};

// Generator description: conv(vertices) + cone{-e_j : j ∈ rays}.
struct VData {
    int dim = 0;
    std::vector<RatVec> vertices;
    std::set<int> rays;
};

// Exact membership of x in the closed denoted set of the cell.
bool contains(const Cell& cell, const RatVec& x);

// Membership in the interior of the denoted set (int(P + cone) = int(P) + cone).
bool interior_contains(const Cell& cell, const RatVec& x);

// All feasible basic solutions from dim-subsets of rows, deduplicated and
// lexicographically sorted.
VData vertices(const HPolytope& poly);

// vertices(poly) with the cell's ray mask attached.
VData cell_vdata(const Cell& cell);

// x ∈ conv(vertices) + cone(rays), decided by one feasibility LP over
// combination weights.
bool hull_membership(const VData& vd, const RatVec& x);

// Interior membership decided from generator data alone (2·dim small LPs).
bool hull_interior_contains(const VData& vd, const RatVec& x);

// Generators of conv of the union of the cells: all vertex lists merged,
// all ray masks merged.
VData hull_of_union(const std::vector<Cell>& cells);

// Exact irredundant H-representation by brute force over dim-subsets of
// vertices. Requires dim ≤ 3, no rays, full-dimensional input.
HPolytope facets(const VData& vd);

// Strictly positive random vertex combination: interior point of a
// full-dimensional hull (rays ignored; descend separately if wanted).
RatVec sample_interior_point(const VData& vd, SplitMix64& rng);

namespace detail {

// As facets(), but for possibly-unbounded generator data (rays allowed);
// returns the row list of the closed set conv(V) + cone(R). dim ≤ 3.
std::vector<LPRow> facet_rows(const VData& vd);

// Vertex enumeration without the HPolytope validity gate; correct whenever
// the row system is bounded (degenerate/lower-dimensional sets allowed).
std::vector<RatVec> enumerate_vertices(int dim, const std::vector<LPRow>& rows);

std::optional<RatVec> solve_square(std::vector<RatVec> a, RatVec b);

// Rank of the affine hull direction space: span{v_i - v_0} + span{rays}.
int affine_rank(const std::vector<RatVec>& pts, const std::set<int>& rays, int dim);

// Strict-feasibility margin LP: max t s.t. a·x + t ≤ b, t ≤ 1.
// margin > 0 means `point` is strictly inside every row; margin 0 means the
// set is nonempty but has no interior; nullopt means it is empty.
struct InteriorProbe {
    Rat margin;
    RatVec point;
};
std::optional<InteriorProbe> interior_probe(int dim, const std::vector<LPRow>& rows);

}  // namespace detail

}  // namespace logconv
