#include "logconv/polytope.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "logconv/errors.hpp"

namespace logconv {

namespace detail {

std::optional<RatVec> solve_square(std::vector<RatVec> a, RatVec b) {
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

namespace {

int matrix_rank(std::vector<RatVec> m) {
    if (m.empty()) return 0;
    const int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < static_cast<int>(m.size()); ++col) {
        int piv = -1;
        for (int r = rank; r < static_cast<int>(m.size()); ++r)
            if (!m[r][col].is_zero()) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        for (int r = 0; r < static_cast<int>(m.size()); ++r) {
            if (r == rank || m[r][col].is_zero()) continue;
            Rat f = m[r][col] / m[rank][col];
            for (int c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

// Visits every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(int n, int k, F&& fn) {
    if (k > n || k <= 0) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        fn(idx);
        int t = k - 1;
        while (t >= 0 && idx[t] == n - k + t) --t;
        if (t < 0) return;
        ++idx[t];
        for (int i = t + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
}

// Scale (a, b) by the unique positive rational making all entries integral
// with gcd 1; keeps the inequality direction, gives a canonical row key.
std::vector<Rat> canonical_row(const RatVec& a, const Rat& b) {
    std::vector<Rat> full = a;
    full.push_back(b);
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& r : full) {
        if (r.is_zero()) continue;
        mpz_class num = r.raw().get_num(), den = r.raw().get_den();
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), num.get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), den.get_mpz_t());
    }
    if (num_gcd == 0) return full;  // all-zero row
    mpq_class scale(den_lcm, num_gcd);
    scale.canonicalize();
    Rat s = Rat::parse(scale.get_str());
    for (auto& r : full) r *= s;
    return full;
}

}  // namespace

std::vector<RatVec> enumerate_vertices(int dim, const std::vector<LPRow>& rows) {
    const int m = static_cast<int>(rows.size());
    std::vector<RatVec> found;
    auto feasible = [&](const RatVec& x) {
        for (const auto& r : rows)
            if (dot(r.a, x) > r.b) return false;
        return true;
    };
    for_each_subset(m, dim, [&](const std::vector<int>& idx) {
        std::vector<RatVec> a;
        RatVec b;
        for (int i : idx) {
            a.push_back(rows[i].a);
            b.push_back(rows[i].b);
        }
        auto x = solve_square(std::move(a), std::move(b));
        if (x && feasible(*x)) found.push_back(std::move(*x));
    });
    std::sort(found.begin(), found.end(), lex_less);
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

int affine_rank(const std::vector<RatVec>& pts, const std::set<int>& rays, int dim) {
    std::vector<RatVec> dirs;
    for (size_t i = 1; i < pts.size(); ++i) {
        RatVec d(dim);
        for (int c = 0; c < dim; ++c) d[c] = pts[i][c] - pts[0][c];
        dirs.push_back(std::move(d));
    }
    for (int j : rays) {
        RatVec d(dim, Rat(0));
        d[j] = Rat(-1);
        dirs.push_back(std::move(d));
    }
    return matrix_rank(std::move(dirs));
}

std::optional<InteriorProbe> interior_probe(int dim, const std::vector<LPRow>& rows) {
    LPProblem p;
    p.num_vars = dim + 1;
    p.objective.assign(dim + 1, Rat());
    p.objective[dim] = Rat(1);
    for (const auto& r : rows) {
        RatVec a = r.a;
        a.push_back(Rat(1));
        p.ineqs.push_back({std::move(a), r.b});
    }
    RatVec cap(dim + 1, Rat());
    cap[dim] = Rat(1);
    p.ineqs.push_back({std::move(cap), Rat(1)});
    auto out = lp_solve(p);
    if (out.status == LPStatus::Infeasible) return std::nullopt;
    if (out.status != LPStatus::Optimal)
        throw invariant_error("interior_probe: capped slack LP cannot be unbounded");
    // t < 0 means the row system itself is infeasible
    if (out.value.sgn() < 0) return std::nullopt;
    InteriorProbe probe;
    probe.margin = out.value;
    probe.point.assign(out.point.begin(), out.point.begin() + dim);
    return probe;
}

std::vector<LPRow> facet_rows(const VData& vd) {
    const int n = vd.dim;
    if (n < 1 || n > 3) throw input_error("facet enumeration supports dimensions 1..3");
    if (vd.vertices.empty()) throw input_error("facet enumeration: empty vertex list");
    if (affine_rank(vd.vertices, vd.rays, n) < n)
        throw input_error("facet enumeration: input not full-dimensional");

    struct Gen {
        bool is_ray;
        RatVec v;  // vertex coordinates, or the ray direction -e_j
    };
    std::vector<Gen> gens;
    for (const auto& v : vd.vertices) gens.push_back({false, v});
    for (int j : vd.rays) {
        RatVec d(n, Rat(0));
        d[j] = Rat(-1);
        gens.push_back({true, std::move(d)});
    }

    auto valid = [&](const RatVec& a, const Rat& b) {
        for (const auto& v : vd.vertices)
            if (dot(a, v) > b) return false;
        for (int j : vd.rays)
            if (a[j].sgn() < 0) return false;  // a·(-e_j) = -a_j must be ≤ 0
        return true;
    };

    std::map<std::vector<Rat>, LPRow, decltype([](const std::vector<Rat>& x, const std::vector<Rat>& y) {
                 return lex_less(x, y);
             })>
        kept;

    for_each_subset(static_cast<int>(gens.size()), n, [&](const std::vector<int>& idx) {
        bool has_vertex = false;
        for (int i : idx) has_vertex |= !gens[i].is_ray;
        if (!has_vertex) return;

        // Solve for the hyperplane (a, b): a·v = b on chosen vertices,
        // a·r = 0 along chosen rays. Unknowns (a, b); nullspace must be 1-D.
        std::vector<RatVec> sys;
        for (int i : idx) {
            RatVec r = gens[i].v;
            r.push_back(gens[i].is_ray ? Rat(0) : Rat(-1));
            sys.push_back(std::move(r));
        }
        // Gaussian elimination to reduced row-echelon; find the free column.
        const int cols = n + 1;
        std::vector<int> pivot_col;
        int rank = 0;
        for (int col = 0; col < cols && rank < n; ++col) {
            int piv = -1;
            for (int r = rank; r < n; ++r)
                if (!sys[r][col].is_zero()) { piv = r; break; }
            if (piv < 0) continue;
            std::swap(sys[piv], sys[rank]);
            for (int r = 0; r < n; ++r) {
                if (r == rank || sys[r][col].is_zero()) continue;
                Rat f = sys[r][col] / sys[rank][col];
                for (int c = col; c < cols; ++c) sys[r][c] -= f * sys[rank][c];
            }
            pivot_col.push_back(col);
            ++rank;
        }
        if (rank < n) return;  // degenerate subset
        int free_col = 0;
        {
            std::vector<char> is_pivot(cols, 0);
            for (int c : pivot_col) is_pivot[c] = 1;
            for (int c = 0; c < cols; ++c)
                if (!is_pivot[c]) { free_col = c; break; }
        }
        std::vector<Rat> sol(cols, Rat(0));
        sol[free_col] = Rat(1);
        for (int r = n - 1; r >= 0; --r) {
            int pc = pivot_col[r];
            Rat acc = -sys[r][free_col];  // only free column contributes
            sol[pc] = acc / sys[r][pc];
        }
        RatVec a(sol.begin(), sol.begin() + n);
        Rat b = sol[n];
        bool a_zero = true;
        for (const auto& c : a) a_zero &= c.is_zero();
        if (a_zero) return;

        if (valid(a, b)) {
            auto key = canonical_row(a, b);
            RatVec ka(key.begin(), key.begin() + n);
            kept.emplace(key, LPRow{std::move(ka), key[n]});
        }
        RatVec na(a.size());
        for (size_t i = 0; i < a.size(); ++i) na[i] = -a[i];
        Rat nb = -b;
        if (valid(na, nb)) {
            auto key = canonical_row(na, nb);
            RatVec ka(key.begin(), key.begin() + n);
            kept.emplace(key, LPRow{std::move(ka), key[n]});
        }
    });

    std::vector<LPRow> rows;
    for (auto& [key, row] : kept) rows.push_back(std::move(row));
    return rows;
}

}  // namespace detail

HPolytope HPolytope::make(int dim, std::vector<LPRow> rows) {
    if (dim < 1) throw input_error("HPolytope: dimension must be >= 1");
    for (const auto& r : rows)
        if (static_cast<int>(r.a.size()) != dim)
            throw input_error("HPolytope: row length != dim");

    // Strictly feasible witness via the margin LP: max t, a·x + t ≤ b, t ≤ 1.
    LPProblem slack;
    slack.num_vars = dim + 1;
    slack.objective.assign(dim + 1, Rat());
    slack.objective[dim] = Rat(1);
    for (const auto& r : rows) {
        RatVec a = r.a;
        a.push_back(Rat(1));
        slack.ineqs.push_back({std::move(a), r.b});
    }
    RatVec cap(dim + 1, Rat());
    cap[dim] = Rat(1);
    slack.ineqs.push_back({std::move(cap), Rat(1)});
    auto out = lp_solve(slack);
    if (out.status == LPStatus::Infeasible || out.value.sgn() < 0)
        throw input_error("HPolytope: empty row system");
    if (out.status != LPStatus::Optimal)
        throw invariant_error("HPolytope: capped slack LP cannot be unbounded");
    if (out.value.sgn() == 0)
        throw input_error("HPolytope: not full-dimensional (no strictly feasible point)");

    // Bounded in every ±e_i direction.
    for (int i = 0; i < dim; ++i) {
        for (int s : {1, -1}) {
            LPProblem p;
            p.num_vars = dim;
            p.objective.assign(dim, Rat());
            p.objective[i] = Rat(s);
            p.ineqs = rows;
            if (lp_solve(p).status == LPStatus::Unbounded)
                throw input_error("HPolytope: unbounded in coordinate " + std::to_string(i));
        }
    }

    HPolytope poly;
    poly.dim = dim;
    poly.rows = std::move(rows);
    poly.interior_point.assign(out.point.begin(), out.point.begin() + dim);
    return poly;
}

bool contains(const Cell& cell, const RatVec& x) {
    if (static_cast<int>(x.size()) != cell.poly.dim)
        throw input_error("contains: point dimension mismatch");
    if (cell.ext.empty()) {
        for (const auto& r : cell.poly.rows)
            if (dot(r.a, x) > r.b) return false;
        return true;
    }
    // x ∈ P + cone{-e_j}  ⇔  ∃ s ≥ 0 : x + Σ s_j e_j ∈ P.
    std::vector<int> exts(cell.ext.begin(), cell.ext.end());
    const int k = static_cast<int>(exts.size());
    std::vector<LPRow> ineqs;
    for (const auto& r : cell.poly.rows) {
        RatVec a(k);
        for (int t = 0; t < k; ++t) a[t] = r.a[exts[t]];
        ineqs.push_back({std::move(a), r.b - dot(r.a, x)});
    }
    for (int t = 0; t < k; ++t) {
        RatVec a(k, Rat(0));
        a[t] = Rat(-1);
        ineqs.push_back({std::move(a), Rat(0)});
    }
    return lp_feasible(k, ineqs, {}).has_value();
}

bool interior_contains(const Cell& cell, const RatVec& x) {
    if (static_cast<int>(x.size()) != cell.poly.dim)
        throw input_error("interior_contains: point dimension mismatch");
    // max t s.t. x + Σ s_j e_j strictly feasible with margin t; int(P+C) = int(P)+C.
    std::vector<int> exts(cell.ext.begin(), cell.ext.end());
    const int k = static_cast<int>(exts.size());
    LPProblem p;
    p.num_vars = k + 1;
    p.objective.assign(k + 1, Rat());
    p.objective[k] = Rat(1);
    for (const auto& r : cell.poly.rows) {
        RatVec a(k + 1);
        for (int t = 0; t < k; ++t) a[t] = r.a[exts[t]];
        a[k] = Rat(1);
        p.ineqs.push_back({std::move(a), r.b - dot(r.a, x)});
    }
    for (int t = 0; t < k; ++t) {
        RatVec a(k + 1, Rat(0));
        a[t] = Rat(-1);
        p.ineqs.push_back({std::move(a), Rat(0)});
    }
    RatVec cap(k + 1, Rat());
    cap[k] = Rat(1);
    p.ineqs.push_back({std::move(cap), Rat(1)});
    auto out = lp_solve(p);
    if (out.status == LPStatus::Infeasible) return false;
    if (out.status != LPStatus::Optimal)
        throw invariant_error("interior_contains: capped LP cannot be unbounded");
    return out.value.sgn() > 0;
}

VData vertices(const HPolytope& poly) {
    VData vd;
    vd.dim = poly.dim;
    vd.vertices = detail::enumerate_vertices(poly.dim, poly.rows);
    if (vd.vertices.empty())
        throw invariant_error("vertices: validated polytope produced no vertices");
    return vd;
}

VData cell_vdata(const Cell& cell) {
    VData vd = vertices(cell.poly);
    vd.rays = cell.ext;
    return vd;
}

bool hull_membership(const VData& vd, const RatVec& x) {
    if (vd.vertices.empty()) throw input_error("hull_membership: empty vertex list");
    if (static_cast<int>(x.size()) != vd.dim)
        throw input_error("hull_membership: point dimension mismatch");
    const int k = static_cast<int>(vd.vertices.size());
    std::vector<int> rays(vd.rays.begin(), vd.rays.end());
    const int r = static_cast<int>(rays.size());
    const int nv = k + r;

    std::vector<LPRow> eqs;
    for (int c = 0; c < vd.dim; ++c) {
        RatVec a(nv);
        for (int i = 0; i < k; ++i) a[i] = vd.vertices[i][c];
        for (int t = 0; t < r; ++t) a[k + t] = rays[t] == c ? Rat(-1) : Rat(0);
        eqs.push_back({std::move(a), x[c]});
    }
    RatVec ones(nv, Rat(0));
    for (int i = 0; i < k; ++i) ones[i] = Rat(1);
    eqs.push_back({std::move(ones), Rat(1)});

    std::vector<LPRow> ineqs;
    for (int i = 0; i < nv; ++i) {
        RatVec a(nv, Rat(0));
        a[i] = Rat(-1);
        ineqs.push_back({std::move(a), Rat(0)});
    }
    return lp_feasible(nv, ineqs, eqs).has_value();
}

bool hull_interior_contains(const VData& vd, const RatVec& x) {
    if (static_cast<int>(x.size()) != vd.dim)
        throw input_error("hull_interior_contains: point dimension mismatch");
    // Interior ⇔ for every direction ±e_c some positive step stays inside.
    const int k = static_cast<int>(vd.vertices.size());
    std::vector<int> rays(vd.rays.begin(), vd.rays.end());
    const int r = static_cast<int>(rays.size());
    const int nv = k + r + 1;  // weights + step size ε

    for (int c = 0; c < vd.dim; ++c) {
        for (int s : {1, -1}) {
            LPProblem p;
            p.num_vars = nv;
            p.objective.assign(nv, Rat());
            p.objective[nv - 1] = Rat(1);
            for (int d = 0; d < vd.dim; ++d) {
                RatVec a(nv);
                for (int i = 0; i < k; ++i) a[i] = vd.vertices[i][d];
                for (int t = 0; t < r; ++t) a[k + t] = rays[t] == d ? Rat(-1) : Rat(0);
                a[nv - 1] = d == c ? Rat(-s) : Rat(0);  // combo − ε·s·e_c = x
                p.eqs.push_back({std::move(a), x[d]});
            }
            RatVec ones(nv, Rat(0));
            for (int i = 0; i < k; ++i) ones[i] = Rat(1);
            p.eqs.push_back({std::move(ones), Rat(1)});
            for (int i = 0; i < nv; ++i) {
                RatVec a(nv, Rat(0));
                a[i] = Rat(-1);
                p.ineqs.push_back({std::move(a), Rat(0)});
            }
            RatVec cap(nv, Rat(0));
            cap[nv - 1] = Rat(1);
            p.ineqs.push_back({std::move(cap), Rat(1)});
            auto out = lp_solve(p);
            if (out.status == LPStatus::Infeasible) return false;
            if (out.status != LPStatus::Optimal)
                throw invariant_error("hull_interior_contains: capped LP cannot be unbounded");
            if (out.value.sgn() <= 0) return false;
        }
    }
    return true;
}

VData hull_of_union(const std::vector<Cell>& cells) {
    if (cells.empty()) throw input_error("hull_of_union: no cells");
    const int dim = cells[0].poly.dim;
    VData vd;
    vd.dim = dim;
    for (const auto& c : cells) {
        if (c.poly.dim != dim) throw input_error("hull_of_union: mixed dimensions");
        VData cv = cell_vdata(c);
        vd.vertices.insert(vd.vertices.end(), cv.vertices.begin(), cv.vertices.end());
        vd.rays.insert(cv.rays.begin(), cv.rays.end());
    }
    std::sort(vd.vertices.begin(), vd.vertices.end(), lex_less);
    vd.vertices.erase(std::unique(vd.vertices.begin(), vd.vertices.end()), vd.vertices.end());
    return vd;
}

HPolytope facets(const VData& vd) {
    if (!vd.rays.empty()) throw input_error("facets: bounded input required (rays present)");
    if (vd.dim > 3) throw input_error("facets: dimension > 3 unsupported");
    return HPolytope::make(vd.dim, detail::facet_rows(vd));
}

RatVec sample_interior_point(const VData& vd, SplitMix64& rng) {
    const int k = static_cast<int>(vd.vertices.size());
    std::vector<long> w(k);
    long total = 0;
    for (auto& wi : w) {
        wi = rng.range(1, 16);
        total += wi;
    }
    RatVec x(vd.dim, Rat(0));
    for (int i = 0; i < k; ++i) {
        Rat lambda(w[i], total);
        for (int c = 0; c < vd.dim; ++c) x[c] += lambda * vd.vertices[i][c];
    }
    return x;
}

}  // namespace logconv
