#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "logconv/errors.hpp"
#include "logconv/polytope.hpp"
#include "logconv/rng.hpp"
#include "oracles.hpp"

using namespace logconv;

namespace {

Rat q(long n, long d = 1) { return Rat(n, d); }

HPolytope box2(Rat x0, Rat x1, Rat y0, Rat y1) {
    return HPolytope::make(2, {{{q(1), q(0)}, x1},
                               {{q(-1), q(0)}, -x0},
                               {{q(0), q(1)}, y1},
                               {{q(0), q(-1)}, -y0}});
}

HPolytope box1(Rat lo, Rat hi) {
    return HPolytope::make(1, {{{q(1)}, hi}, {{q(-1)}, -lo}});
}

bool has_vertex(const VData& vd, const RatVec& v) {
    return std::find(vd.vertices.begin(), vd.vertices.end(), v) != vd.vertices.end();
}

}  // namespace

TEST_CASE("construction validates boundedness and full dimension") {
    CHECK_THROWS_AS(HPolytope::make(1, {{{q(1)}, q(0)}}), input_error);           // unbounded below
    CHECK_THROWS_AS(HPolytope::make(1, {{{q(1)}, q(0)}, {{q(-1)}, q(-1)}}), input_error);  // empty
    CHECK_THROWS_AS(HPolytope::make(1, {{{q(1)}, q(0)}, {{q(-1)}, q(0)}}), input_error);   // a point
    auto p = box1(q(-1), q(1));
    CHECK(p.interior_point[0] > q(-1));
    CHECK(p.interior_point[0] < q(1));
}

TEST_CASE("cell membership with and without rays") {
    Cell square{box2(q(-1), q(1), q(-1), q(1)), {}};
    CHECK(contains(square, {q(0), q(0)}));
    CHECK(contains(square, {q(1), q(1)}));  // closed
    CHECK(!contains(square, {q(2), q(0)}));
    CHECK_THROWS_AS(contains(square, {q(0)}), input_error);

    Cell strip{box2(q(-1), q(0), q(-1), q(0)), {0}};
    CHECK(contains(strip, {q(-5), q(-1, 2)}));  // reached along -e_1
    CHECK(!contains(strip, {q(-5), q(1, 2)}));
    CHECK(!contains(strip, {q(1, 2), q(-1, 2)}));

    CHECK(interior_contains(strip, {q(-5), q(-1, 2)}));
    CHECK(!interior_contains(strip, {q(-5), q(0)}));   // on the face y = 0
    CHECK(!interior_contains(square, {q(1), q(0)}));
    CHECK(interior_contains(square, {q(0), q(0)}));
}

TEST_CASE("vertex enumeration: square, triangle, diamond") {
    auto sq = vertices(box2(q(-1), q(1), q(-1), q(1)));
    CHECK(sq.vertices.size() == 4);
    CHECK(has_vertex(sq, {q(1), q(1)}));
    CHECK(has_vertex(sq, {q(-1), q(-1)}));

    auto tri = vertices(HPolytope::make(
        2, {{{q(-1), q(0)}, q(0)}, {{q(0), q(-1)}, q(0)}, {{q(1), q(1)}, q(1)}}));
    CHECK(tri.vertices.size() == 3);
    CHECK(has_vertex(tri, {q(0), q(0)}));
    CHECK(has_vertex(tri, {q(1), q(0)}));
    CHECK(has_vertex(tri, {q(0), q(1)}));

    // all 2x2 row systems of {±x ± y ≤ 1}, feasible ones kept
    auto dia = vertices(HPolytope::make(2, {{{q(1), q(1)}, q(1)},
                                            {{q(1), q(-1)}, q(1)},
                                            {{q(-1), q(1)}, q(1)},
                                            {{q(-1), q(-1)}, q(1)}}));
    CHECK(dia.vertices.size() == 4);
    CHECK(has_vertex(dia, {q(1), q(0)}));
    CHECK(has_vertex(dia, {q(0), q(-1)}));
}

TEST_CASE("hull membership by combination LP") {
    VData tri{2, {{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}}, {}};
    CHECK(hull_membership(tri, {q(1, 4), q(1, 4)}));   // x+y ≤ 1 holds
    CHECK(!hull_membership(tri, {q(3, 4), q(3, 4)}));  // x+y = 3/2 > 1
    CHECK(hull_membership(tri, {q(1, 2), q(1, 2)}));   // on the edge

    VData ray_pt{2, {{q(0), q(0)}}, {0}};
    CHECK(hull_membership(ray_pt, {q(-7), q(0)}));
    CHECK(!hull_membership(ray_pt, {q(1), q(0)}));
    CHECK_THROWS_AS(hull_membership(VData{2, {}, {}}, {q(0), q(0)}), input_error);
}

TEST_CASE("hull of union: shared edge and the L-shape pentagon") {
    Cell left{box2(q(-1), q(0), q(0), q(1)), {}};
    Cell right{box2(q(0), q(1), q(0), q(1)), {}};
    auto rect = hull_of_union({left, right});
    // denotes the 1x2 rectangle: spot-check samples both ways
    CHECK(hull_membership(rect, {q(1, 2), q(1, 2)}));
    CHECK(hull_membership(rect, {q(-1), q(1)}));
    CHECK(!hull_membership(rect, {q(0), q(3, 2)}));

    Cell a{box2(q(-2), q(0), q(-2), q(-1)), {}};
    Cell b{box2(q(-2), q(-1), q(-2), q(0)), {}};
    auto pent = hull_of_union({a, b});
    for (const RatVec& v : {RatVec{q(-2), q(-2)}, RatVec{q(0), q(-2)}, RatVec{q(0), q(-1)},
                            RatVec{q(-1), q(0)}, RatVec{q(-2), q(0)}})
        CHECK(has_vertex(pent, v));

    auto single = hull_of_union({a});
    CHECK(single.vertices.size() == 4);

    CHECK_THROWS_AS(hull_of_union({}), input_error);
}

TEST_CASE("facets: triangle, pentagon with the cut corner, degenerate input") {
    VData tri{2, {{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}}, {}};
    auto poly = facets(tri);
    REQUIRE(poly.rows.size() == 3);
    // the three rows denote -x ≤ 0, -y ≤ 0, x+y ≤ 1 up to scaling
    for (const auto& x : {RatVec{q(1, 4), q(1, 4)}, RatVec{q(0), q(1)}})
        for (const auto& r : poly.rows) CHECK(dot(r.a, x) <= r.b);

    Cell a{box2(q(-2), q(0), q(-2), q(-1)), {}};
    Cell b{box2(q(-2), q(-1), q(-2), q(0)), {}};
    auto pent = facets(hull_of_union({a, b}));
    REQUIRE(pent.rows.size() == 5);
    bool found_cut = false;
    for (const auto& r : pent.rows)
        found_cut |= r.a == RatVec{q(1), q(1)} && r.b == q(-1);  // canonical x+y ≤ -1
    CHECK(found_cut);

    VData segment{2, {{q(0), q(0)}, {q(1), q(0)}}, {}};
    CHECK_THROWS_AS(facets(segment), input_error);
    VData withray{2, {{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}}, {0}};
    CHECK_THROWS_AS(facets(withray), input_error);
}

TEST_CASE("facets in three dimensions: cube and simplex") {
    std::vector<RatVec> cube_verts;
    for (int m = 0; m < 8; ++m)
        cube_verts.push_back({q(m & 1 ? 1 : -1), q(m & 2 ? 1 : -1), q(m & 4 ? 1 : -1)});
    auto cube = facets(VData{3, cube_verts, {}});
    CHECK(cube.rows.size() == 6);

    auto simplex = facets(VData{
        3, {{q(0), q(0), q(0)}, {q(1), q(0), q(0)}, {q(0), q(1), q(0)}, {q(0), q(0), q(1)}}, {}});
    CHECK(simplex.rows.size() == 4);
    bool diag = false;
    for (const auto& r : simplex.rows) diag |= r.a == RatVec{q(1), q(1), q(1)} && r.b == q(1);
    CHECK(diag);
}

TEST_CASE("round trip facets(vertices(P)) denotes the same set") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        int n = static_cast<int>(rng.below(2)) + 2;  // 2 or 3
        // random box, then up to two extra cuts; reroll degenerate results
        std::vector<LPRow> rows;
        for (int c = 0; c < n; ++c) {
            Rat lo(rng.range(-4, 0)), hi(rng.range(1, 4));
            RatVec up(n, q(0)), down(n, q(0));
            up[c] = q(1);
            down[c] = q(-1);
            rows.push_back({up, hi});
            rows.push_back({down, -lo});
        }
        for (int extra = static_cast<int>(rng.below(3)); extra > 0; --extra) {
            RatVec a;
            for (int c = 0; c < n; ++c) a.push_back(Rat(rng.range(-2, 2), rng.range(1, 2)));
            rows.push_back({a, Rat(rng.range(1, 5))});
        }
        HPolytope p;
        try {
            p = HPolytope::make(n, rows);
        } catch (const input_error&) {
            continue;  // a cut emptied the box; not this trial's subject
        }
        auto back = facets(vertices(p));
        Cell orig{p, {}}, redone{back, {}};
        for (int s = 0; s < 30; ++s) {
            RatVec x;
            for (int c = 0; c < n; ++c) x.push_back(Rat(rng.range(-6, 6), 2));
            CHECK(contains(orig, x) == contains(redone, x));
        }
    }
}

TEST_CASE("contains agrees with hull_membership through V-data") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        Cell cell{box2(Rat(rng.range(-4, -1)), Rat(rng.range(0, 3)), Rat(rng.range(-4, -1)),
                       Rat(rng.range(0, 3))),
                  {}};
        if (rng.below(2)) cell.ext.insert(static_cast<int>(rng.below(2)));
        auto vd = cell_vdata(cell);
        for (int s = 0; s < 40; ++s) {
            RatVec x = {Rat(rng.range(-12, 6), 2), Rat(rng.range(-12, 6), 2)};
            CHECK(contains(cell, x) == hull_membership(vd, x));
        }
    }
}

TEST_CASE("hull of union contains every input cell") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Cell> cells;
        int k = static_cast<int>(rng.below(3)) + 1;
        for (int i = 0; i < k; ++i) {
            Rat x0(rng.range(-5, 0)), y0(rng.range(-5, 0));
            cells.push_back({box2(x0, x0 + Rat(rng.range(1, 3)), y0, y0 + Rat(rng.range(1, 3))), {}});
            if (rng.below(3) == 0) cells.back().ext.insert(static_cast<int>(rng.below(2)));
        }
        auto hull = hull_of_union(cells);
        for (const auto& c : cells) {
            auto vd = cell_vdata(c);
            for (int s = 0; s < 10; ++s) {
                RatVec x = sample_interior_point(vd, rng);
                for (int j : vd.rays)
                    if (rng.below(2)) x[j] -= Rat(rng.range(0, 6));
                CHECK(hull_membership(hull, x));
            }
        }
    }
}
