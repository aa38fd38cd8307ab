#include "logconv/reinhardt.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "logconv/errors.hpp"

namespace logconv {

using bigfloat = boost::multiprecision::cpp_bin_float_50;

RatVec LogPoint::finite_coords() const {
    RatVec out;
    for (const auto& c : coords) {
        if (!c) throw input_error("log point has a -inf coordinate where a finite one is required");
        out.push_back(*c);
    }
    return out;
}

ReinhardtDomain ReinhardtDomain::make(int n, std::vector<Cell> cells,
                                      std::vector<bool> axis_meets) {
    if (n < 1) throw input_error("ReinhardtDomain: dimension must be >= 1");
    if (cells.empty()) throw input_error("ReinhardtDomain: no cells");
    if (static_cast<int>(axis_meets.size()) != n)
        throw input_error("ReinhardtDomain: axis flag count != dimension");
    for (const auto& c : cells) {
        if (c.poly.dim != n) throw input_error("ReinhardtDomain: cell dimension mismatch");
        for (int j : c.ext)
            if (j < 0 || j >= n) throw input_error("ReinhardtDomain: ray index out of range");
    }
    for (int j = 0; j < n; ++j) {
        if (!axis_meets[j]) continue;
        bool receding = false;
        for (const auto& c : cells) receding |= c.ext.count(j) > 0;
        if (!receding)
            throw input_error("ReinhardtDomain: axis flag " + std::to_string(j + 1) +
                              " set but no cell recedes in -e_" + std::to_string(j + 1));
    }
    ReinhardtDomain dom;
    dom.n = n;
    dom.cells = std::move(cells);
    dom.axis_meets = std::move(axis_meets);
    return dom;
}

namespace {

mpz_class round_to_integer(const bigfloat& x) {
    bigfloat r = boost::multiprecision::round(x);
    std::ostringstream os;
    os << std::fixed << std::setprecision(0) << r;
    std::string s = os.str();
    if (auto dot = s.find('.'); dot != std::string::npos) s.resize(dot);
    if (s.empty() || s == "-") s = "0";
    return mpz_class(s, 10);
}

Rat round_to_precision(const bigfloat& x, int precision) {
    bigfloat scale = boost::multiprecision::pow(bigfloat(10), precision);
    mpz_class num = round_to_integer(x * scale);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(precision));
    mpq_class q(num, den);
    q.canonicalize();
    return Rat::parse(q.get_str());
}

bigfloat to_bigfloat(const Rat& r) {
    return bigfloat(r.raw().get_num().get_str()) / bigfloat(r.raw().get_den().get_str());
}

void check_precision(int precision) {
    if (precision < 1 || precision > 30)
        throw input_error("precision must lie in 1..30");
}

}  // namespace

LogPoint log_point(const std::vector<Rat>& moduli, int precision) {
    check_precision(precision);
    LogPoint p;
    for (const auto& m : moduli) {
        if (m.sgn() < 0) throw input_error("negative modulus " + m.str());
        if (m.is_zero()) {
            p.coords.push_back(std::nullopt);
            continue;
        }
        bigfloat v = boost::multiprecision::log(to_bigfloat(m));
        p.coords.push_back(round_to_precision(v, precision));
    }
    return p;
}

std::vector<Rat> modulus_point(const LogPoint& p, int precision) {
    check_precision(precision);
    std::vector<Rat> out;
    for (const auto& c : p.coords) {
        if (!c) {
            out.push_back(Rat(0));
            continue;
        }
        bigfloat v = boost::multiprecision::exp(to_bigfloat(*c));
        out.push_back(round_to_precision(v, precision));
    }
    return out;
}

bool contains_point(const ReinhardtDomain& dom, const LogPoint& p) {
    if (p.dim() != dom.n) throw input_error("contains_point: dimension mismatch");
    std::vector<int> zero_set;
    for (int j = 0; j < dom.n; ++j)
        if (!p.coords[j]) zero_set.push_back(j);

    if (zero_set.empty()) {
        RatVec x = p.finite_coords();
        for (const auto& c : dom.cells)
            if (contains(c, x)) return true;
        return false;
    }
    for (int j : zero_set)
        if (!dom.axis_meets[j]) return false;

    for (const auto& cell : dom.cells) {
        bool covers = true;
        for (int j : zero_set) covers &= cell.ext.count(j) > 0;
        if (!covers) continue;
        // Feasibility with -inf coordinates free and the cell's other rays
        // available for descent: variables v_j (j in zero set, free) and
        // s_k ≥ 0 (k in ext \ zero set).
        std::vector<int> svars;
        for (int k : cell.ext)
            if (p.coords[k].has_value()) svars.push_back(k);
        const int nz = static_cast<int>(zero_set.size());
        const int ns = static_cast<int>(svars.size());
        std::vector<LPRow> ineqs;
        for (const auto& r : cell.poly.rows) {
            RatVec a(nz + ns);
            Rat rhs = r.b;
            for (int c = 0; c < dom.n; ++c) {
                if (r.a[c].is_zero()) continue;
                if (p.coords[c]) rhs -= r.a[c] * *p.coords[c];
            }
            for (int t = 0; t < nz; ++t) a[t] = r.a[zero_set[t]];
            for (int t = 0; t < ns; ++t) a[nz + t] = r.a[svars[t]];
            ineqs.push_back({std::move(a), std::move(rhs)});
        }
        for (int t = 0; t < ns; ++t) {
            RatVec a(nz + ns, Rat(0));
            a[nz + t] = Rat(-1);
            ineqs.push_back({std::move(a), Rat(0)});
        }
        if (lp_feasible(nz + ns, ineqs, {}).has_value()) return true;
    }
    return false;
}

LogConvexityResult is_log_convex(const ReinhardtDomain& dom, int samples, uint64_t seed) {
    LogConvexityResult res;
    if (dom.cells.size() == 1) {
        res.status = LogConvexity::True;
        return res;
    }

    if (dom.n <= 2) {
        // Exact path: subdivide hull ∖ union and probe every piece for
        // interior; a full-dimensional leftover falsifies convexity, and a
        // nonempty difference always has one (hull and cells are closed,
        // cells full-dimensional).
        std::vector<std::vector<LPRow>> pieces{detail::facet_rows(hull_of_union(dom.cells))};
        for (const auto& cell : dom.cells) {
            auto cell_rows = detail::facet_rows(cell_vdata(cell));
            std::vector<std::vector<LPRow>> next;
            for (const auto& piece : pieces) {
                std::vector<LPRow> prefix = piece;
                for (const auto& row : cell_rows) {
                    RatVec na(row.a.size());
                    for (size_t i = 0; i < row.a.size(); ++i) na[i] = -row.a[i];
                    std::vector<LPRow> child = prefix;
                    child.push_back({std::move(na), -row.b});
                    auto probe = detail::interior_probe(dom.n, child);
                    if (probe && probe->margin.sgn() > 0) next.push_back(std::move(child));
                    prefix.push_back(row);
                }
            }
            pieces = std::move(next);
        }
        if (pieces.empty()) {
            res.status = LogConvexity::True;
            return res;
        }
        auto probe = detail::interior_probe(dom.n, pieces.front());
        res.status = LogConvexity::False;
        res.witness = probe->point;
        return res;
    }

    // Randomized falsification in higher dimensions.
    SplitMix64 rng(seed);
    std::vector<VData> cell_gens;
    for (const auto& c : dom.cells) cell_gens.push_back(cell_vdata(c));
    auto in_union = [&](const RatVec& x) {
        for (const auto& c : dom.cells)
            if (contains(c, x)) return true;
        return false;
    };
    for (int i = 0; i < samples; ++i) {
        const auto& g1 = cell_gens[rng.below(cell_gens.size())];
        const auto& g2 = cell_gens[rng.below(cell_gens.size())];
        RatVec p = sample_interior_point(g1, rng);
        RatVec q = sample_interior_point(g2, rng);
        // occasionally slide down a ray to exercise the unbounded parts
        for (int j : g1.rays)
            if (rng.below(4) == 0) p[j] -= Rat(rng.range(1, 8));
        for (int j : g2.rays)
            if (rng.below(4) == 0) q[j] -= Rat(rng.range(1, 8));
        RatVec mid(dom.n);
        for (int c = 0; c < dom.n; ++c) mid[c] = (p[c] + q[c]) / Rat(2);
        ++res.samples_checked;
        if (!in_union(mid)) {
            res.status = LogConvexity::False;
            res.witness = std::move(mid);
            return res;
        }
    }
    res.status = LogConvexity::Unfalsified;
    return res;
}

DohResult is_doh(const ReinhardtDomain& dom, int samples, uint64_t seed) {
    DohResult out;
    for (int j = 0; j < dom.n; ++j) {
        bool receding = false;
        for (const auto& c : dom.cells) receding |= c.ext.count(j) > 0;
        if (receding != dom.axis_meets[j]) {
            out.is_doh = false;
            out.axis = j;
            out.reason = "axis condition fails at coordinate " + std::to_string(j + 1) +
                         (receding ? ": log-image recedes but the domain misses the axis"
                                   : ": axis flagged without a receding cell");
            return out;
        }
    }
    auto lc = is_log_convex(dom, samples, seed);
    switch (lc.status) {
        case LogConvexity::True:
            out.is_doh = true;
            return out;
        case LogConvexity::False:
            out.is_doh = false;
            out.witness = lc.witness;
            out.reason = "not log-convex: hull point " + vec_str(*lc.witness) + " outside the union";
            return out;
        case LogConvexity::Unfalsified:
            out.is_doh = false;
            out.inconclusive = true;
            out.reason = "log-convexity unfalsified after " + std::to_string(lc.samples_checked) +
                         " samples but not proven (dimension > 2 with several cells)";
            return out;
    }
    return out;
}

EnvelopeResult envelope(const ReinhardtDomain& dom) {
    EnvelopeResult res;
    res.hull = hull_of_union(dom.cells);
    res.axis_meets = dom.axis_meets;
    if (dom.n <= 3) {
        VData bounded{res.hull.dim, res.hull.vertices, {}};
        res.hrep = facets(bounded);
    }

    // The output must itself satisfy the domain-of-holomorphy conditions:
    // one convex set (log-convexity by construction) and, when the input's
    // flags were ray-consistent, the flag ⇔ ray equivalence.
    bool input_consistent = true;
    for (int j = 0; j < dom.n; ++j) {
        bool receding = res.hull.rays.count(j) > 0;
        if (dom.axis_meets[j] && !receding)
            throw invariant_error("envelope: flagged axis lost its recession ray");
        input_consistent &= receding == dom.axis_meets[j];
    }
    if (input_consistent && res.hrep) {
        auto rebuilt = ReinhardtDomain::make(
            dom.n, {Cell{*res.hrep, res.hull.rays}}, res.axis_meets);
        auto doh = is_doh(rebuilt);
        if (!doh.is_doh)
            throw invariant_error("envelope: reconstructed envelope fails is_doh: " + doh.reason);
    }
    return res;
}

ReinhardtDomain envelope_domain(const ReinhardtDomain& dom) {
    auto res = envelope(dom);
    if (!res.hrep)
        throw input_error("envelope_domain: H-representation only available in dimensions <= 3");
    return ReinhardtDomain::make(dom.n, {Cell{*res.hrep, res.hull.rays}}, res.axis_meets);
}

namespace {

void require_subset(const ReinhardtDomain& a, const ReinhardtDomain& d, const VData& d_hull,
                    const std::string& what) {
    if (a.n != d.n) throw input_error(what + ": dimension mismatch");
    std::set<int> d_rays = d_hull.rays;
    for (const auto& cell : a.cells) {
        for (int j : cell.ext)
            if (!d_rays.count(j))
                throw input_error(what + ": A recedes in -e_" + std::to_string(j + 1) +
                                  " where D does not");
        for (const auto& v : detail::enumerate_vertices(cell.poly.dim, cell.poly.rows))
            if (!hull_membership(d_hull, v))
                throw input_error(what + ": A vertex " + vec_str(v) + " outside conv(log D)");
    }
    for (int j = 0; j < a.n; ++j)
        if (a.axis_meets[j] && !d.axis_meets[j])
            throw input_error(what + ": A meets axis " + std::to_string(j + 1) + " where D does not");
}

void require_doh(const ReinhardtDomain& d, const std::string& what) {
    auto doh = is_doh(d);
    if (doh.is_doh) return;
    if (doh.inconclusive)
        throw input_error(what + ": D's log-convexity is inconclusive; " + doh.reason);
    throw input_error(what + ": D is not a domain of holomorphy (" + doh.reason + ")");
}

}  // namespace

Rat h_star(const ReinhardtDomain& a, const ReinhardtDomain& d, const LogPoint& p) {
    require_doh(d, "h_star");
    VData d_hull = hull_of_union(d.cells);
    require_subset(a, d, d_hull, "h_star");
    if (!p.finite())
        throw input_error("h_star: unsupported at axis points (-inf coordinate present)");
    RatVec x = p.finite_coords();
    if (static_cast<int>(x.size()) != d.n) throw input_error("h_star: point dimension mismatch");
    if (!hull_interior_contains(d_hull, x))
        throw domain_error("h_star: point " + vec_str(x) + " not interior to conv(log D)");
    VData a_hull = hull_of_union(a.cells);
    return detail::phi_core_checked(a_hull, d_hull, x);
}

bool cross_contains(const ReinhardtCross& cross, const std::vector<LogPoint>& blocks) {
    const int N = static_cast<int>(cross.blocks.size());
    if (static_cast<int>(blocks.size()) != N)
        throw input_error("cross_contains: block count mismatch");
    for (int j = 0; j < N; ++j) {
        if (!contains_point(cross.blocks[j].d, blocks[j])) continue;
        bool rest = true;
        for (int k = 0; k < N && rest; ++k) {
            if (k == j) continue;
            rest = contains_point(cross.blocks[k].a, blocks[k]);
        }
        if (rest) return true;
    }
    return false;
}

ReinhardtCross ReinhardtCross::make(std::vector<Block> blocks) {
    if (blocks.size() < 2) throw input_error("ReinhardtCross: need at least two blocks");
    for (size_t j = 0; j < blocks.size(); ++j) {
        const std::string what = "ReinhardtCross block " + std::to_string(j + 1);
        require_doh(blocks[j].d, what);
        require_subset(blocks[j].a, blocks[j].d, hull_of_union(blocks[j].d.cells), what);
    }
    ReinhardtCross cross;
    cross.blocks = std::move(blocks);
    return cross;
}

namespace detail {

CrossSpec induced_cross_spec(const ReinhardtCross& cross) {
    std::vector<CrossFactor> factors;
    for (const auto& block : cross.blocks) {
        const ReinhardtDomain& d = block.d;
        Cell u;
        if (d.cells.size() == 1) {
            u = d.cells[0];
        } else {
            VData hull = hull_of_union(d.cells);
            VData bounded{hull.dim, hull.vertices, {}};
            u = Cell{facets(bounded), hull.rays};
        }
        factors.push_back({ExtremalProblem::from_cells(block.a.cells, std::move(u))});
    }
    return CrossSpec::make(std::move(factors));
}

}  // namespace detail

ReinhardtCrossReport cross_envelope_verify(const ReinhardtCross& cross, int num_samples,
                                           uint64_t seed) {
    ReinhardtCrossReport rep;
    CrossSpec spec = detail::induced_cross_spec(cross);
    rep.hull_report = verify_cross_theorem(spec, num_samples, seed);

    // Consistency of the public h* path with the induced factors on a prefix
    // of the same sample stream.
    {
        SplitMix64 rng(seed);
        const int prefix = std::min(num_samples, 50);
        for (int i = 0; i < prefix; ++i) {
            RatVec x = detail::sample_cross_point(spec, rng, i % 4);
            Rat via_factors = w_value(spec, x);
            Rat via_hstar;
            for (int j = 0; j < spec.blocks(); ++j) {
                LogPoint p;
                for (const auto& c : spec.block_of(x, j)) p.coords.push_back(c);
                via_hstar += h_star(cross.blocks[j].a, cross.blocks[j].d, p);
            }
            ++rep.hstar_samples_checked;
            if (via_factors != via_hstar)
                rep.hstar_mismatches.push_back("sample " + std::to_string(i) + " at " + vec_str(x) +
                                               ": h* sum " + via_hstar.str() + " != phi sum " +
                                               via_factors.str());
        }
    }

    // Axis rule: every flagged coordinate of every D_j yields a point of the
    // cross on that axis (finite parts are cell barycenters of the A_k).
    const int N = static_cast<int>(cross.blocks.size());
    auto barycenter = [](const Cell& cell) {
        auto verts = detail::enumerate_vertices(cell.poly.dim, cell.poly.rows);
        RatVec z(cell.poly.dim, Rat(0));
        for (const auto& v : verts)
            for (size_t c = 0; c < z.size(); ++c) z[c] += v[c];
        Rat inv(1, static_cast<long>(verts.size()));
        for (auto& c : z) c *= inv;
        return z;
    };
    for (int j = 0; j < N; ++j) {
        const ReinhardtDomain& d = cross.blocks[j].d;
        for (int i = 0; i < d.n; ++i) {
            if (!d.axis_meets[i]) continue;
            std::vector<LogPoint> witness(N);
            for (int k = 0; k < N; ++k) {
                if (k == j) continue;
                LogPoint p;
                for (const auto& c : barycenter(cross.blocks[k].a.cells[0])) p.coords.push_back(c);
                witness[k] = std::move(p);
            }
            const Cell* receding = nullptr;
            for (const auto& cell : d.cells)
                if (cell.ext.count(i)) { receding = &cell; break; }
            LogPoint axis_point;
            RatVec z = barycenter(*receding);
            for (int c = 0; c < d.n; ++c) {
                if (c == i)
                    axis_point.coords.push_back(std::nullopt);
                else
                    axis_point.coords.push_back(z[c]);
            }
            witness[j] = std::move(axis_point);

            AxisCheck check;
            check.block = j;
            check.coord = i;
            for (const auto& p : witness)
                for (const auto& c : p.coords)
                    check.witness.push_back(c ? c->str() : "-inf");
            check.in_cross = cross_contains(cross, witness);
            rep.axis_checks.push_back(std::move(check));
        }
    }
    return rep;
}

}  // namespace logconv
