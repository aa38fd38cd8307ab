#include "logconv/extremal.hpp"

#include <algorithm>

#include "logconv/errors.hpp"

namespace logconv {

namespace {

void validate_pair(const VData& s, const Cell& u) {
    if (s.vertices.empty()) throw input_error("ExtremalProblem: S is empty");
    if (s.dim != u.poly.dim) throw input_error("ExtremalProblem: S/U dimension mismatch");
    for (int j : s.rays)
        if (!u.ext.count(j))
            throw input_error("ExtremalProblem: S ray -e_" + std::to_string(j + 1) +
                              " not among U's rays");
    for (const auto& v : s.vertices)
        if (!contains(u, v))
            throw input_error("ExtremalProblem: S vertex " + vec_str(v) + " outside U");
}

}  // namespace

ExtremalProblem ExtremalProblem::from_cells(std::vector<Cell> s, Cell u) {
    if (s.empty()) throw input_error("ExtremalProblem: S is empty");
    ExtremalProblem p;
    p.s_vdata = hull_of_union(s);
    p.s_cells = std::move(s);
    p.u_vdata = cell_vdata(u);
    p.u = std::move(u);
    validate_pair(p.s_vdata, p.u);
    return p;
}

ExtremalProblem ExtremalProblem::from_points(std::vector<RatVec> pts, std::set<int> rays, Cell u) {
    ExtremalProblem p;
    p.s_vdata.dim = u.poly.dim;
    for (const auto& v : pts)
        if (static_cast<int>(v.size()) != u.poly.dim)
            throw input_error("ExtremalProblem: S point dimension mismatch");
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    p.s_vdata.vertices = std::move(pts);
    p.s_vdata.rays = std::move(rays);
    p.u_vdata = cell_vdata(u);
    p.u = std::move(u);
    validate_pair(p.s_vdata, p.u);
    return p;
}

namespace detail {

std::pair<Rat, AffineCompetitor> phi_dual_core(const VData& s, const VData& u, const RatVec& x) {
    const int n = s.dim;
    // Variables: c_1..c_n, d. Maximize c·x + d subject to
    //   c·v + d ≤ 0  (v generator of S),  c·w + d ≤ 1  (w generator of U),
    //   c_j ≥ 0      (j ray of U).
    LPProblem p;
    p.num_vars = n + 1;
    p.objective = x;
    p.objective.push_back(Rat(1));
    for (const auto& v : s.vertices) {
        RatVec a = v;
        a.push_back(Rat(1));
        p.ineqs.push_back({std::move(a), Rat(0)});
    }
    for (const auto& w : u.vertices) {
        RatVec a = w;
        a.push_back(Rat(1));
        p.ineqs.push_back({std::move(a), Rat(1)});
    }
    for (int j : u.rays) {
        RatVec a(n + 1, Rat(0));
        a[j] = Rat(-1);
        p.ineqs.push_back({std::move(a), Rat(0)});
    }
    auto out = lp_solve(p);
    if (out.status != LPStatus::Optimal)
        throw invariant_error(std::string("phi_dual: competitor LP ") + to_string(out.status) +
                              " at " + vec_str(x));
    AffineCompetitor comp;
    comp.c.assign(out.point.begin(), out.point.begin() + n);
    comp.d = out.point[n];
    return {out.value, std::move(comp)};
}

Rat phi_gauge_core(const VData& s, const VData& u, const RatVec& x) {
    const int n = s.dim;
    const int ks = static_cast<int>(s.vertices.size());
    const int ku = static_cast<int>(u.vertices.size());
    std::vector<int> rays(u.rays.begin(), u.rays.end());
    const int kr = static_cast<int>(rays.size());
    const int nv = ks + ku + kr + 1;  // α, β, γ, t
    const int t_col = nv - 1;

    LPProblem p;
    p.num_vars = nv;
    p.objective.assign(nv, Rat());
    p.objective[t_col] = Rat(-1);  // minimize t
    for (int c = 0; c < n; ++c) {
        RatVec a(nv, Rat(0));
        for (int i = 0; i < ks; ++i) a[i] = s.vertices[i][c];
        for (int i = 0; i < ku; ++i) a[ks + i] = u.vertices[i][c];
        for (int t = 0; t < kr; ++t)
            if (rays[t] == c) a[ks + ku + t] = Rat(-1);
        p.eqs.push_back({std::move(a), x[c]});
    }
    {
        RatVec a(nv, Rat(0));  // Σα = 1 − t
        for (int i = 0; i < ks; ++i) a[i] = Rat(1);
        a[t_col] = Rat(1);
        p.eqs.push_back({std::move(a), Rat(1)});
    }
    {
        RatVec a(nv, Rat(0));  // Σβ = t
        for (int i = 0; i < ku; ++i) a[ks + i] = Rat(1);
        a[t_col] = Rat(-1);
        p.eqs.push_back({std::move(a), Rat(0)});
    }
    for (int i = 0; i < nv; ++i) {
        RatVec a(nv, Rat(0));
        a[i] = Rat(-1);
        p.ineqs.push_back({std::move(a), Rat(0)});
    }
    auto out = lp_solve(p);
    if (out.status != LPStatus::Optimal)
        throw invariant_error(std::string("phi_gauge: decomposition LP ") + to_string(out.status) +
                              " at " + vec_str(x));
    return -out.value;
}

Rat phi_core_checked(const VData& s, const VData& u, const RatVec& x) {
    auto [dual_value, comp] = phi_dual_core(s, u, x);
    Rat gauge_value = phi_gauge_core(s, u, x);
    if (dual_value != gauge_value)
        throw invariant_error("phi: dual value " + dual_value.str() + " != gauge value " +
                              gauge_value.str() + " at " + vec_str(x));
    (void)comp;
    return dual_value;
}

}  // namespace detail

static void require_interior(const ExtremalProblem& prob, const RatVec& x) {
    if (static_cast<int>(x.size()) != prob.dim())
        throw input_error("phi: point dimension mismatch");
    if (!interior_contains(prob.u, x))
        throw domain_error("phi: point " + vec_str(x) + " not interior to U");
}

std::pair<Rat, AffineCompetitor> phi_dual(const ExtremalProblem& prob, const RatVec& x) {
    require_interior(prob, x);
    auto [value, comp] = detail::phi_dual_core(prob.s_vdata, prob.u_vdata, x);
    // The witness must satisfy every competitor constraint exactly and
    // attain the value.
    for (const auto& v : prob.s_vdata.vertices)
        if (comp.eval(v).sgn() > 0)
            throw invariant_error("phi_dual: witness positive on S at " + vec_str(v));
    for (const auto& w : prob.u_vdata.vertices)
        if (comp.eval(w) > Rat(1))
            throw invariant_error("phi_dual: witness exceeds 1 on U at " + vec_str(w));
    for (int j : prob.u_vdata.rays)
        if (comp.c[j].sgn() < 0)
            throw invariant_error("phi_dual: witness decreasing along ray -e_" + std::to_string(j + 1));
    if (comp.eval(x) != value)
        throw invariant_error("phi_dual: witness does not attain the reported value");
    return {value, comp};
}

Rat phi_gauge(const ExtremalProblem& prob, const RatVec& x) {
    require_interior(prob, x);
    return detail::phi_gauge_core(prob.s_vdata, prob.u_vdata, x);
}

Rat phi(const ExtremalProblem& prob, const RatVec& x) {
    require_interior(prob, x);
    return detail::phi_core_checked(prob.s_vdata, prob.u_vdata, x);
}

VData sublevel_vdata(const ExtremalProblem& prob, const Rat& mu) {
    if (mu.sgn() <= 0 || mu >= Rat(1))
        throw input_error("sublevel_vdata: mu must lie in (0,1), got " + mu.str());
    VData vd;
    vd.dim = prob.dim();
    Rat one_minus(1);
    one_minus -= mu;
    for (const auto& v : prob.s_vdata.vertices)
        for (const auto& w : prob.u_vdata.vertices) {
            RatVec p(vd.dim);
            for (int c = 0; c < vd.dim; ++c) p[c] = one_minus * v[c] + mu * w[c];
            vd.vertices.push_back(std::move(p));
        }
    std::sort(vd.vertices.begin(), vd.vertices.end(), lex_less);
    vd.vertices.erase(std::unique(vd.vertices.begin(), vd.vertices.end()), vd.vertices.end());
    vd.rays = prob.u_vdata.rays;
    return vd;
}

namespace {

// Drop generators that lie in the hull of the remaining ones.
VData prune_to_extreme(const VData& vd) {
    VData out = vd;
    for (size_t i = 0; i < out.vertices.size() && out.vertices.size() > 1;) {
        VData rest = out;
        rest.vertices.erase(rest.vertices.begin() + static_cast<long>(i));
        if (hull_membership(rest, out.vertices[i]))
            out.vertices.erase(out.vertices.begin() + static_cast<long>(i));
        else
            ++i;
    }
    return out;
}

}  // namespace

PhiIdentityReport verify_phi_identities(const ExtremalProblem& prob, const Rat& mu,
                               const std::vector<RatVec>& samples,
                               const std::vector<ExtremalProblem>& nested_chain) {
    PhiIdentityReport rep;
    PhiIdentityReport::Entry a{"range", true, ""}, b{"hull_invariance", true, ""},
        c{"rescaling", true, ""}, e{"monotone_chain", true, ""};

    VData s_extreme = prune_to_extreme(prob.s_vdata);
    VData u_mu = sublevel_vdata(prob, mu);  // validates mu in (0,1)

    for (const auto& x : samples) {
        if (!interior_contains(prob.u, x)) {
            rep.flagged.push_back("sample " + vec_str(x) + " not interior to U");
            continue;
        }
        Rat v = phi(prob, x);
        if (a.pass && (v.sgn() < 0 || v >= Rat(1))) {
            a.pass = false;
            a.counterexample = "phi(" + vec_str(x) + ") = " + v.str() + " outside [0,1)";
        }
        if (b.pass) {
            Rat v2 = detail::phi_core_checked(s_extreme, prob.u_vdata, x);
            if (v2 != v) {
                b.pass = false;
                b.counterexample = "phi from raw S " + v.str() + " != phi from extreme points " + v2.str() +
                                   " at " + vec_str(x);
            }
        }
        if (c.pass && v < mu) {
            Rat scaled = mu * detail::phi_core_checked(prob.s_vdata, u_mu, x);
            if (scaled != v) {
                c.pass = false;
                c.counterexample = "mu*phi_{S,U_mu} = " + scaled.str() + " != " + v.str() + " at " + vec_str(x);
            }
        }
        if (e.pass && !nested_chain.empty()) {
            Rat prev;
            bool have_prev = false;
            for (const auto& link : nested_chain) {
                if (!interior_contains(link.u, x)) {
                    rep.flagged.push_back("sample " + vec_str(x) + " outside a chain member's U");
                    have_prev = false;
                    break;
                }
                Rat vk = phi(link, x);
                if (have_prev && vk > prev) {
                    e.pass = false;
                    e.counterexample = "chain value increased " + prev.str() + " -> " + vk.str() +
                                       " at " + vec_str(x);
                    break;
                }
                if (vk < v) {
                    e.pass = false;
                    e.counterexample = "chain value " + vk.str() + " below phi_{S,U} = " + v.str() +
                                       " at " + vec_str(x);
                    break;
                }
                prev = vk;
                have_prev = true;
            }
            if (e.pass && have_prev) {
                Rat gap = prev - v;
                if (gap >= Rat(1, 10)) {
                    e.pass = false;
                    e.counterexample = "final chain gap " + gap.str() + " >= 1/10 at " + vec_str(x);
                }
            }
        }
    }

    // Φ = 0 at S generators (those interior to U; boundary generators flagged).
    for (const auto& v : prob.s_vdata.vertices) {
        if (!interior_contains(prob.u, v)) {
            rep.flagged.push_back("S generator " + vec_str(v) + " on the boundary of U");
            continue;
        }
        Rat val = phi(prob, v);
        if (a.pass && !val.is_zero()) {
            a.pass = false;
            a.counterexample = "phi at S generator " + vec_str(v) + " = " + val.str() + " != 0";
        }
    }

    rep.entries = {a, b, c, e};
    return rep;
}

namespace {

Cell scale_cell(const Cell& cell, const RatVec& z, const Rat& f) {
    std::vector<LPRow> rows;
    for (const auto& r : cell.poly.rows) {
        // {x : a·x ≤ f·b + (1−f)·a·z} is z + f·(P − z)
        Rat b = f * r.b + (Rat(1) - f) * dot(r.a, z);
        rows.push_back({r.a, std::move(b)});
    }
    Cell out;
    out.poly = HPolytope::make(cell.poly.dim, std::move(rows));
    out.ext = cell.ext;
    return out;
}

}  // namespace

std::vector<ExtremalProblem> shrink_chain(const ExtremalProblem& prob, int steps) {
    if (steps < 1) throw input_error("shrink_chain: need at least one step");
    // Barycenter of S's generators lies in conv(S), so the scaled copies nest.
    RatVec z(prob.dim(), Rat(0));
    for (const auto& v : prob.s_vdata.vertices)
        for (int c = 0; c < prob.dim(); ++c) z[c] += v[c];
    Rat inv(1, static_cast<long>(prob.s_vdata.vertices.size()));
    for (auto& c : z) c *= inv;

    std::vector<ExtremalProblem> chain;
    for (int k = 1; k <= steps; ++k) {
        Rat f(static_cast<long>(steps + k), static_cast<long>(2 * steps));  // (steps+k)/(2·steps) → 1
        if (k == steps) {
            chain.push_back(prob);
            continue;
        }
        std::vector<RatVec> s_pts;
        for (const auto& v : prob.s_vdata.vertices) {
            RatVec p(prob.dim());
            for (int c = 0; c < prob.dim(); ++c) p[c] = z[c] + f * (v[c] - z[c]);
            s_pts.push_back(std::move(p));
        }
        Cell uk = scale_cell(prob.u, z, f);
        chain.push_back(ExtremalProblem::from_points(std::move(s_pts), prob.s_vdata.rays, std::move(uk)));
    }
    return chain;
}

ExtremalProblem random_extremal_problem(SplitMix64& rng, int dim, bool point_cloud_s) {
    auto coord = [&]() { return Rat(rng.range(-8, 8), 1L << rng.below(3)); };

    Cell u;
    if (rng.below(2) == 0) {
        // box
        std::vector<LPRow> rows;
        for (int c = 0; c < dim; ++c) {
            Rat lo = coord(), hi = coord();
            while (hi == lo) hi = coord();
            if (hi < lo) std::swap(lo, hi);
            RatVec up(dim, Rat(0)), down(dim, Rat(0));
            up[c] = Rat(1);
            down[c] = Rat(-1);
            rows.push_back({std::move(up), hi});
            rows.push_back({std::move(down), -lo});
        }
        u.poly = HPolytope::make(dim, std::move(rows));
    } else {
        // simplex {x ≥ p, Σ(x − p) ≤ h}
        RatVec p(dim);
        for (auto& c : p) c = coord();
        Rat h(rng.range(1, 8), 1L << rng.below(3));
        std::vector<LPRow> rows;
        for (int c = 0; c < dim; ++c) {
            RatVec a(dim, Rat(0));
            a[c] = Rat(-1);
            rows.push_back({std::move(a), -p[c]});
        }
        RatVec ones(dim, Rat(1));
        Rat b = h;
        for (int c = 0; c < dim; ++c) b += p[c];
        rows.push_back({std::move(ones), b});
        u.poly = HPolytope::make(dim, std::move(rows));
    }

    VData uv = cell_vdata(u);
    RatVec z = sample_interior_point(uv, rng);
    Rat f(rng.range(1, 4), 8);  // shrink factor in [1/8, 1/2]

    if (!point_cloud_s) {
        std::vector<Cell> s = {scale_cell(u, z, f)};
        return ExtremalProblem::from_cells(std::move(s), std::move(u));
    }
    std::vector<RatVec> pts;
    for (const auto& v : uv.vertices) {
        RatVec p(dim);
        for (int c = 0; c < dim; ++c) p[c] = z[c] + f * (v[c] - z[c]);
        pts.push_back(std::move(p));
    }
    // a few interior points of S for scatter
    int extra = static_cast<int>(rng.below(3)) + 1;
    VData sv{dim, pts, {}};
    for (int i = 0; i < extra; ++i) pts.push_back(sample_interior_point(sv, rng));
    return ExtremalProblem::from_points(std::move(pts), {}, std::move(u));
}

}  // namespace logconv
