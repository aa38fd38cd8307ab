#include "logconv/cross.hpp"

#include <algorithm>

#include "logconv/errors.hpp"

namespace logconv {

const char* to_string(WClass c) {
    switch (c) {
        case WClass::Inside: return "INSIDE";
        case WClass::Boundary: return "BOUNDARY";
        case WClass::Outside: return "OUTSIDE";
    }
    return "?";
}

RatVec CrossSpec::block_of(const RatVec& x, int j) const {
    return RatVec(x.begin() + offsets[j], x.begin() + offsets[j] + factors[j].dim());
}

namespace {

// Embed a block-local index set at the factor's offset.
void merge_rays(std::set<int>& dst, const std::set<int>& src, int offset) {
    for (int j : src) dst.insert(offset + j);
}

// Cartesian products of one generator list per block, concatenated.
std::vector<RatVec> block_products(const std::vector<const std::vector<RatVec>*>& lists,
                                   int total_dim, const std::vector<int>& offsets) {
    std::vector<RatVec> out;
    std::vector<size_t> idx(lists.size(), 0);
    for (;;) {
        RatVec p(total_dim);
        for (size_t j = 0; j < lists.size(); ++j) {
            const RatVec& v = (*lists[j])[idx[j]];
            std::copy(v.begin(), v.end(), p.begin() + offsets[j]);
        }
        out.push_back(std::move(p));
        size_t k = 0;
        while (k < lists.size()) {
            if (++idx[k] < lists[k]->size()) break;
            idx[k] = 0;
            ++k;
        }
        if (k == lists.size()) return out;
    }
}

}  // namespace

CrossSpec CrossSpec::make(std::vector<CrossFactor> f) {
    if (f.size() < 2) throw input_error("CrossSpec: need at least two factors");
    CrossSpec spec;
    spec.factors = std::move(f);
    for (const auto& fac : spec.factors) {
        spec.offsets.push_back(spec.total_dim);
        spec.total_dim += fac.dim();
    }

    const int N = spec.blocks();
    spec.s_rows.resize(N);
    spec.s_fulldim.assign(N, 0);
    spec.classifiable.assign(N, 0);
    for (int j = 0; j < N; ++j) {
        const VData& sv = spec.factors[j].prob.s_vdata;
        spec.s_fulldim[j] =
            detail::affine_rank(sv.vertices, sv.rays, sv.dim) == sv.dim ? 1 : 0;
        // The scaled-decomposition route needs H-rows of conv(S)'s bounded
        // part, so that part must be full-dimensional on its own.
        if (spec.s_fulldim[j] && sv.dim <= 3 &&
            detail::affine_rank(sv.vertices, {}, sv.dim) == sv.dim) {
            spec.s_rows[j] = detail::facet_rows({sv.dim, sv.vertices, {}});
            spec.classifiable[j] = 1;
        }
    }

    // Hull of T: per slab T_k the vertex products, rays merged across blocks.
    spec.t_hull.dim = spec.total_dim;
    for (int k = 0; k < N; ++k) {
        std::vector<const std::vector<RatVec>*> lists;
        for (int j = 0; j < N; ++j)
            lists.push_back(j == k ? &spec.factors[j].prob.u_vdata.vertices
                                   : &spec.factors[j].prob.s_vdata.vertices);
        auto pts = block_products(lists, spec.total_dim, spec.offsets);
        spec.t_hull.vertices.insert(spec.t_hull.vertices.end(), pts.begin(), pts.end());
        merge_rays(spec.t_hull.rays, spec.factors[k].prob.u_vdata.rays, spec.offsets[k]);
        for (int j = 0; j < N; ++j)
            if (j != k) merge_rays(spec.t_hull.rays, spec.factors[j].prob.s_vdata.rays, spec.offsets[j]);
    }
    std::sort(spec.t_hull.vertices.begin(), spec.t_hull.vertices.end(), lex_less);
    spec.t_hull.vertices.erase(std::unique(spec.t_hull.vertices.begin(), spec.t_hull.vertices.end()),
                               spec.t_hull.vertices.end());
    return spec;
}

bool cross_membership(const CrossSpec& spec, const RatVec& x) {
    if (static_cast<int>(x.size()) != spec.total_dim)
        throw input_error("cross_membership: point dimension mismatch");
    for (int j = 0; j < spec.blocks(); ++j) {
        if (!contains(spec.factors[j].prob.u, spec.block_of(x, j))) continue;
        bool all_in_s = true;
        for (int k = 0; k < spec.blocks() && all_in_s; ++k) {
            if (k == j) continue;
            all_in_s = hull_membership(spec.factors[k].prob.s_vdata, spec.block_of(x, k));
        }
        if (all_in_s) return true;
    }
    return false;
}

Rat w_value(const CrossSpec& spec, const RatVec& x) {
    if (static_cast<int>(x.size()) != spec.total_dim)
        throw input_error("w_value: point dimension mismatch");
    Rat sum;
    for (int j = 0; j < spec.blocks(); ++j) sum += phi(spec.factors[j].prob, spec.block_of(x, j));
    return sum;
}

namespace detail {

bool scaled_decomposition_member(const CrossSpec& spec, const RatVec& x) {
    // Feasibility of x = Σ_k y^k with each y^k in t_k · T_k (bounded parts
    // scaled by t_k, ray coefficients free), t ≥ 0, Σ t = 1.
    const int N = spec.blocks();
    const int T = spec.total_dim;

    // Columns: per slab k: y^k (T free vars), then γ^k over the slab's rays;
    // then t_1..t_N.
    std::vector<std::vector<int>> slab_rays(N);       // global coordinates
    for (int k = 0; k < N; ++k) {
        std::set<int> rays;
        merge_rays(rays, spec.factors[k].prob.u_vdata.rays, spec.offsets[k]);
        for (int j = 0; j < N; ++j)
            if (j != k) merge_rays(rays, spec.factors[j].prob.s_vdata.rays, spec.offsets[j]);
        slab_rays[k].assign(rays.begin(), rays.end());
    }
    std::vector<int> y_col(N), g_col(N);
    int nv = 0;
    for (int k = 0; k < N; ++k) {
        y_col[k] = nv;
        nv += T;
        g_col[k] = nv;
        nv += static_cast<int>(slab_rays[k].size());
    }
    const int t_col = nv;
    nv += N;

    std::vector<LPRow> eqs, ineqs;
    for (int c = 0; c < T; ++c) {
        RatVec a(nv, Rat(0));
        for (int k = 0; k < N; ++k) {
            a[y_col[k] + c] = Rat(1);
            for (size_t t = 0; t < slab_rays[k].size(); ++t)
                if (slab_rays[k][t] == c) a[g_col[k] + t] = Rat(-1);
        }
        eqs.push_back({std::move(a), x[c]});
    }
    {
        RatVec a(nv, Rat(0));
        for (int k = 0; k < N; ++k) a[t_col + k] = Rat(1);
        eqs.push_back({std::move(a), Rat(1)});
    }
    for (int k = 0; k < N; ++k) {
        for (int j = 0; j < N; ++j) {
            const auto& rows = j == k ? spec.factors[j].prob.u.poly.rows : spec.s_rows[j];
            for (const auto& r : rows) {
                RatVec a(nv, Rat(0));
                for (int c = 0; c < spec.factors[j].dim(); ++c)
                    a[y_col[k] + spec.offsets[j] + c] = r.a[c];
                a[t_col + k] = -r.b;
                ineqs.push_back({std::move(a), Rat(0)});
            }
        }
    }
    for (int k = 0; k < N; ++k) {
        RatVec a(nv, Rat(0));
        a[t_col + k] = Rat(-1);
        ineqs.push_back({std::move(a), Rat(0)});
    }
    for (int k = 0; k < N; ++k)
        for (size_t t = 0; t < slab_rays[k].size(); ++t) {
            RatVec a(nv, Rat(0));
            a[g_col[k] + t] = Rat(-1);
            ineqs.push_back({std::move(a), Rat(0)});
        }
    return lp_feasible(nv, ineqs, eqs).has_value();
}

}  // namespace detail

Trichotomy conv_cross_classify(const CrossSpec& spec, const RatVec& x) {
    for (int j = 0; j < spec.blocks(); ++j) {
        if (!spec.s_fulldim[j])
            throw input_error("conv_cross_classify: factor " + std::to_string(j + 1) +
                              " has lower-dimensional S (int S empty)");
        if (!spec.classifiable[j])
            throw input_error("conv_cross_classify: factor " + std::to_string(j + 1) +
                              (spec.factors[j].dim() > 3
                                   ? " exceeds the facet-enumeration dimension limit"
                                   : " has no full-dimensional bounded part for conv(S)"));
    }
    Trichotomy tri;
    tri.phi_sum = w_value(spec, x);
    tri.w_class = tri.phi_sum < Rat(1)   ? WClass::Inside
                  : tri.phi_sum == Rat(1) ? WClass::Boundary
                                          : WClass::Outside;
    bool via_vertices = hull_membership(spec.t_hull, x);
    bool via_decomposition = detail::scaled_decomposition_member(spec, x);
    if (via_vertices != via_decomposition)
        throw invariant_error(std::string("conv_cross_classify: hull routes disagree at ") +
                              vec_str(x) + " (vertex-union " + (via_vertices ? "in" : "out") +
                              ", scaled-decomposition " + (via_decomposition ? "in" : "out") + ")");
    tri.hull_member = via_vertices;
    return tri;
}

std::pair<Rat, Rat> product_phi_check(const CrossSpec& spec, const RatVec& x) {
    Rat rhs = w_value(spec, x);
    if (rhs >= Rat(1))
        throw domain_error("product_phi_check: point not interior to W (phi sum " + rhs.str() + ")");

    // S_1×…×S_N generators.
    VData s_prod;
    s_prod.dim = spec.total_dim;
    std::vector<const std::vector<RatVec>*> lists;
    for (int j = 0; j < spec.blocks(); ++j) lists.push_back(&spec.factors[j].prob.s_vdata.vertices);
    s_prod.vertices = block_products(lists, spec.total_dim, spec.offsets);
    for (int j = 0; j < spec.blocks(); ++j)
        merge_rays(s_prod.rays, spec.factors[j].prob.s_vdata.rays, spec.offsets[j]);

    Rat lhs = detail::phi_core_checked(s_prod, spec.t_hull, x);
    return {lhs, rhs};
}

namespace detail {

RatVec sample_cross_point(const CrossSpec& spec, SplitMix64& rng, int kind) {
    const int N = spec.blocks();
    RatVec x(spec.total_dim);
    auto put_block = [&](int j, const RatVec& v) {
        std::copy(v.begin(), v.end(), x.begin() + spec.offsets[j]);
    };
    auto interior_u = [&](int j) {
        return sample_interior_point(spec.factors[j].prob.u_vdata, rng);
    };

    if (kind == 2) {
        // point of T: one block roams U, the rest stay in conv(S)
        int roam = static_cast<int>(rng.below(static_cast<uint64_t>(N)));
        for (int j = 0; j < N; ++j)
            put_block(j, j == roam ? interior_u(j)
                                   : sample_interior_point(spec.factors[j].prob.s_vdata, rng));
        return x;
    }
    if (kind == 3) {
        // aim at Σφ = 1: fill all blocks but one, then land the last one on
        // the matching sublevel generators
        int target = static_cast<int>(rng.below(static_cast<uint64_t>(N)));
        Rat partial;
        for (int j = 0; j < N; ++j) {
            if (j == target) continue;
            RatVec b = interior_u(j);
            partial += phi(spec.factors[j].prob, b);
            put_block(j, b);
        }
        Rat mu = Rat(1) - partial;
        const auto& fac = spec.factors[target].prob;
        if (mu.sgn() > 0 && mu < Rat(1)) {
            const auto& sv = fac.s_vdata.vertices;
            const auto& uv = fac.u_vdata.vertices;
            const RatVec& v = sv[rng.below(sv.size())];
            const RatVec& w = uv[rng.below(uv.size())];
            RatVec b(fac.dim());
            for (int c = 0; c < fac.dim(); ++c) b[c] = (Rat(1) - mu) * v[c] + mu * w[c];
            if (!interior_contains(fac.u, b)) {
                // nudge inward, keeping the sum near 1
                RatVec z = sample_interior_point(fac.u_vdata, rng);
                for (int c = 0; c < fac.dim(); ++c)
                    b[c] += Rat(1, 64) * (z[c] - b[c]);
            }
            put_block(target, b);
        } else {
            put_block(target, interior_u(target));
        }
        return x;
    }
    // default: independent interior points of the U_j
    for (int j = 0; j < N; ++j) put_block(j, interior_u(j));
    return x;
}

}  // namespace detail

CrossReport verify_cross_theorem(const CrossSpec& spec, int num_samples, uint64_t seed) {
    CrossReport rep;
    SplitMix64 rng(seed);
    for (int i = 0; i < num_samples; ++i) {
        int kind = i % 4;  // 50% spread, 25% cross points, 25% boundary-targeted
        RatVec x = detail::sample_cross_point(spec, rng, kind);
        Trichotomy tri = conv_cross_classify(spec, x);
        switch (tri.w_class) {
            case WClass::Inside: ++rep.inside; break;
            case WClass::Boundary: ++rep.boundary; break;
            case WClass::Outside: ++rep.outside; break;
        }
        if (!tri.consistent()) {
            rep.violations.push_back(
                {i, x,
                 std::string("phi sum ") + tri.phi_sum.str() + " (" + to_string(tri.w_class) +
                     ") but hull membership " + (tri.hull_member ? "true" : "false")});
        }
        ++rep.samples;
    }
    return rep;
}

}  // namespace logconv
