#include "logconv/lp.hpp"

#include <algorithm>
#include <string>

#include "logconv/errors.hpp"

namespace logconv {

const char* to_string(LPStatus s) {
    switch (s) {
        case LPStatus::Optimal: return "OPTIMAL";
        case LPStatus::Infeasible: return "INFEASIBLE";
        case LPStatus::Unbounded: return "UNBOUNDED";
    }
    return "?";
}

void LPProblem::validate() const {
    if (num_vars < 0) throw input_error("lp: negative variable count");
    if (static_cast<int>(objective.size()) != num_vars)
        throw input_error("lp: objective length != num_vars");
    for (const auto& r : ineqs)
        if (static_cast<int>(r.a.size()) != num_vars)
            throw input_error("lp: inequality row length != num_vars");
    for (const auto& r : eqs)
        if (static_cast<int>(r.a.size()) != num_vars)
            throw input_error("lp: equality row length != num_vars");
}

namespace {

// Index of the single nonzero coefficient if the row reads  α·x_j ≤ 0, α < 0
// (i.e. it is a sign bound x_j ≥ 0); -1 otherwise. Such rows are folded into
// the computational form as nonnegativity of x_j instead of tableau rows;
// their dual multipliers are reconstructed afterwards, so the public contract
// ("bounds are explicit rows") is unaffected.
int sign_row_var(const LPRow& r) {
    if (!r.b.is_zero()) return -1;
    int var = -1;
    for (size_t j = 0; j < r.a.size(); ++j) {
        if (r.a[j].is_zero()) continue;
        if (var >= 0) return -1;
        var = static_cast<int>(j);
    }
    if (var < 0) return -1;
    return r.a[var].sgn() < 0 ? var : -1;
}

// Dense tableau over the computational form
//   max c·w  s.t.  R w ⋚ rhs,  w ≥ 0,
// with slack columns on ≤ rows and artificial columns wherever the starting
// basis needs one. Rows are stored pre-scaled so every starting basic column
// is +e_i and every stored rhs is ≥ 0.
class Simplex {
  public:
    int m = 0;       // tableau rows
    int ncols = 0;   // columns excluding rhs
    std::vector<std::vector<Rat>> tab;  // m × (ncols+1), last entry = rhs
    std::vector<Rat> obj;               // reduced costs z_j - c_j; last = value
    std::vector<int> basis;             // basic column per row
    std::vector<char> artificial;       // per column
    std::vector<int> row_sigma;         // stored row = sigma · original row
    std::vector<int> tracker;           // per row: column that started as its +e_i

    int add_column(bool art) {
        artificial.push_back(art ? 1 : 0);
        return ncols++;
    }

    // Widens every stored row to the current column count, keeping the rhs
    // cell at the end. Call after the last add_column.
    void finalize() {
        for (auto& row : tab) {
            Rat rhs = row.back();
            row.pop_back();
            row.resize(ncols);
            row.push_back(std::move(rhs));
        }
    }

    Rat& at(int i, int j) { return tab[i][j]; }
    Rat& rhs(int i) { return tab[i][ncols]; }

    void compute_obj(const RatVec& cost) {
        obj.assign(ncols + 1, Rat());
        for (int j = 0; j <= ncols; ++j) {
            Rat z;
            for (int i = 0; i < m; ++i) {
                const Rat& cb = cost[basis[i]];
                if (cb.is_zero() || tab[i][j].is_zero()) continue;
                z += cb * tab[i][j];
            }
            obj[j] = z;
            if (j < ncols) obj[j] -= cost[j];
        }
    }

    void pivot(int r, int s) {
        Rat inv = Rat(1) / tab[r][s];
        if (inv != Rat(1))
            for (int j = 0; j <= ncols; ++j)
                if (!tab[r][j].is_zero()) tab[r][j] *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == r || tab[i][s].is_zero()) continue;
            Rat f = tab[i][s];
            for (int j = 0; j <= ncols; ++j) {
                if (tab[r][j].is_zero()) continue;
                tab[i][j] -= f * tab[r][j];
            }
        }
        if (!obj[s].is_zero()) {
            Rat f = obj[s];
            for (int j = 0; j <= ncols; ++j) {
                if (tab[r][j].is_zero()) continue;
                obj[j] -= f * tab[r][j];
            }
        }
        basis[r] = s;
    }

    // Bland's rule throughout: entering = lowest column index with negative
    // reduced cost, leaving = lowest basic index among minimal ratios.
    // Returns false when the entering column has no blocking row (unbounded).
    bool run(const std::vector<char>& barred) {
        for (;;) {
            int s = -1;
            for (int j = 0; j < ncols; ++j) {
                if (barred[j]) continue;
                if (obj[j].sgn() < 0) { s = j; break; }
            }
            if (s < 0) return true;

            int r = -1;
            Rat best;
            for (int i = 0; i < m; ++i) {
                if (tab[i][s].sgn() <= 0) continue;
                Rat ratio = rhs(i) / tab[i][s];
                if (r < 0 || ratio < best || (ratio == best && basis[i] < basis[r])) {
                    r = i;
                    best = ratio;
                }
            }
            if (r < 0) return false;
            pivot(r, s);
        }
    }
};

}  // namespace

LPOutcome lp_solve(const LPProblem& problem) {
    problem.validate();
    const int n = problem.num_vars;
    const int mi = static_cast<int>(problem.ineqs.size());
    const int me = static_cast<int>(problem.eqs.size());

    // Presolve: fold sign rows into variable nonnegativity.
    std::vector<char> nonneg(n, 0);
    std::vector<int> first_sign_row(n, -1);
    std::vector<char> is_sign_row(mi, 0);
    for (int r = 0; r < mi; ++r) {
        int v = sign_row_var(problem.ineqs[r]);
        if (v < 0) continue;
        is_sign_row[r] = 1;
        nonneg[v] = 1;
        if (first_sign_row[v] < 0) first_sign_row[v] = r;
    }

    // Structural columns: w = x for nonnegative vars, x = u - v otherwise.
    std::vector<int> plus_col(n, -1), minus_col(n, -1);
    Simplex sx;
    for (int j = 0; j < n; ++j) {
        plus_col[j] = sx.add_column(false);
        if (!nonneg[j]) minus_col[j] = sx.add_column(false);
    }

    struct RowRef {
        bool eq;
        int orig;  // index into ineqs/eqs
    };
    std::vector<RowRef> rows;
    for (int r = 0; r < mi; ++r)
        if (!is_sign_row[r]) rows.push_back({false, r});
    for (int r = 0; r < me; ++r) rows.push_back({true, r});
    sx.m = static_cast<int>(rows.size());
    sx.row_sigma.assign(sx.m, 1);
    sx.tracker.assign(sx.m, -1);
    sx.basis.assign(sx.m, -1);

    // Structural part of each row (unscaled), rhs at the end for now.
    for (const auto& ref : rows) {
        const LPRow& src = ref.eq ? problem.eqs[ref.orig] : problem.ineqs[ref.orig];
        std::vector<Rat> row(sx.ncols + 1);
        for (int j = 0; j < n; ++j) {
            if (src.a[j].is_zero()) continue;
            row[plus_col[j]] = src.a[j];
            if (minus_col[j] >= 0) row[minus_col[j]] = -src.a[j];
        }
        row.back() = src.b;
        sx.tab.push_back(std::move(row));
    }

    // Slack columns on inequality rows; row scaling so stored rhs ≥ 0.
    std::vector<int> slack_col(sx.m, -1);
    bool any_artificial = false;
    for (int i = 0; i < sx.m; ++i)
        if (!rows[i].eq) slack_col[i] = sx.add_column(false);
    for (int i = 0; i < sx.m; ++i) {
        Rat rhs = sx.tab[i].back();
        sx.tab[i].pop_back();
        sx.tab[i].resize(sx.ncols);
        if (slack_col[i] >= 0) sx.tab[i][slack_col[i]] = Rat(1);
        sx.tab[i].push_back(rhs);
    }

    for (int i = 0; i < sx.m; ++i) {
        Rat& rhs = sx.tab[i].back();
        int sigma = rhs.sgn() < 0 ? -1 : 1;
        if (sigma < 0) {
            for (auto& v : sx.tab[i]) v = -v;
            sx.row_sigma[i] = -1;
        }
        bool need_art = rows[i].eq || sigma < 0;
        if (!need_art) {
            sx.basis[i] = slack_col[i];
            sx.tracker[i] = slack_col[i];
        } else {
            any_artificial = true;
        }
    }
    for (int i = 0; i < sx.m; ++i) {
        if (sx.basis[i] >= 0) continue;
        int c = sx.add_column(true);
        sx.basis[i] = c;
        sx.tracker[i] = c;
    }
    sx.finalize();
    for (int i = 0; i < sx.m; ++i)
        if (sx.artificial[sx.basis[i]]) sx.at(i, sx.basis[i]) = Rat(1);

    std::vector<char> barred(sx.ncols, 0);

    // Phase 1: drive artificials to zero.
    if (any_artificial) {
        RatVec cost(sx.ncols, Rat());
        for (int j = 0; j < sx.ncols; ++j)
            if (sx.artificial[j]) cost[j] = Rat(-1);
        sx.compute_obj(cost);
        if (!sx.run(barred))
            throw invariant_error("lp: phase-1 objective unbounded");
        Rat infeas;
        for (int i = 0; i < sx.m; ++i)
            if (sx.artificial[sx.basis[i]]) infeas += sx.rhs(i);
        if (!infeas.is_zero()) return LPOutcome{LPStatus::Infeasible, Rat(), {}, {}};

        // Pivot basic artificials out where possible; rows that cannot be
        // cleared are redundant combinations and stay inert (all-zero across
        // non-artificial columns, rhs 0).
        for (int i = 0; i < sx.m; ++i) {
            if (!sx.artificial[sx.basis[i]]) continue;
            for (int j = 0; j < sx.ncols; ++j) {
                if (sx.artificial[j] || sx.at(i, j).is_zero()) continue;
                sx.pivot(i, j);
                break;
            }
        }
    }

    // Phase 2: original objective; artificial columns never re-enter.
    for (int j = 0; j < sx.ncols; ++j)
        if (sx.artificial[j]) barred[j] = 1;
    RatVec cost(sx.ncols, Rat());
    for (int j = 0; j < n; ++j) {
        if (problem.objective[j].is_zero()) continue;
        cost[plus_col[j]] = problem.objective[j];
        if (minus_col[j] >= 0) cost[minus_col[j]] = -problem.objective[j];
    }
    sx.compute_obj(cost);
    if (!sx.run(barred)) return LPOutcome{LPStatus::Unbounded, Rat(), {}, {}};

    // Primal point.
    RatVec w(sx.ncols, Rat());
    for (int i = 0; i < sx.m; ++i) w[sx.basis[i]] = sx.rhs(i);
    RatVec x(n);
    for (int j = 0; j < n; ++j) {
        x[j] = w[plus_col[j]];
        if (minus_col[j] >= 0) x[j] -= w[minus_col[j]];
    }

    // Duals of tableau rows from the tracker columns (each started as +e_i,
    // cost 0 in phase 2, so its reduced cost is the stored-row multiplier).
    RatVec dual(mi + me, Rat());
    for (int i = 0; i < sx.m; ++i) {
        Rat y = sx.obj[sx.tracker[i]];
        if (sx.row_sigma[i] < 0) y = -y;
        if (rows[i].eq)
            dual[mi + rows[i].orig] = y;
        else
            dual[rows[i].orig] = y;
    }
    // Sign rows absorbed into bounds: put the residual multiplier mass on the
    // first sign row of each variable.
    for (int j = 0; j < n; ++j) {
        if (first_sign_row[j] < 0) continue;
        Rat resid = -problem.objective[j];
        for (int r = 0; r < mi; ++r) {
            if (is_sign_row[r]) continue;
            if (!problem.ineqs[r].a[j].is_zero()) resid += problem.ineqs[r].a[j] * dual[r];
        }
        for (int r = 0; r < me; ++r)
            if (!problem.eqs[r].a[j].is_zero()) resid += problem.eqs[r].a[j] * dual[mi + r];
        int r0 = first_sign_row[j];
        dual[r0] = resid / (-problem.ineqs[r0].a[j]);
    }

    LPOutcome out;
    out.status = LPStatus::Optimal;
    out.point = std::move(x);
    out.value = dot(problem.objective, out.point);
    out.dual = std::move(dual);
    check_certificate(problem, out);
    return out;
}

void check_certificate(const LPProblem& problem, const LPOutcome& outcome) {
    if (outcome.status != LPStatus::Optimal) return;
    const int n = problem.num_vars;
    const int mi = static_cast<int>(problem.ineqs.size());
    const int me = static_cast<int>(problem.eqs.size());
    if (static_cast<int>(outcome.point.size()) != n)
        throw invariant_error("lp certificate: point dimension mismatch");
    if (static_cast<int>(outcome.dual.size()) != mi + me)
        throw invariant_error("lp certificate: dual dimension mismatch");

    for (int r = 0; r < mi; ++r) {
        if (dot(problem.ineqs[r].a, outcome.point) > problem.ineqs[r].b)
            throw invariant_error("lp certificate: primal violates inequality row " + std::to_string(r));
        if (outcome.dual[r].sgn() < 0)
            throw invariant_error("lp certificate: negative multiplier on inequality row " + std::to_string(r));
    }
    for (int r = 0; r < me; ++r)
        if (dot(problem.eqs[r].a, outcome.point) != problem.eqs[r].b)
            throw invariant_error("lp certificate: primal violates equality row " + std::to_string(r));

    for (int j = 0; j < n; ++j) {
        Rat lhs;
        for (int r = 0; r < mi; ++r)
            if (!problem.ineqs[r].a[j].is_zero()) lhs += problem.ineqs[r].a[j] * outcome.dual[r];
        for (int r = 0; r < me; ++r)
            if (!problem.eqs[r].a[j].is_zero()) lhs += problem.eqs[r].a[j] * outcome.dual[mi + r];
        if (lhs != problem.objective[j])
            throw invariant_error("lp certificate: dual feasibility fails at variable " + std::to_string(j));
    }

    Rat dual_value;
    for (int r = 0; r < mi; ++r)
        if (!outcome.dual[r].is_zero()) dual_value += outcome.dual[r] * problem.ineqs[r].b;
    for (int r = 0; r < me; ++r)
        if (!outcome.dual[mi + r].is_zero()) dual_value += outcome.dual[mi + r] * problem.eqs[r].b;
    if (dual_value != outcome.value)
        throw invariant_error("lp certificate: duality gap (primal " + outcome.value.str() +
                              ", dual " + dual_value.str() + ")");
    if (outcome.value != dot(problem.objective, outcome.point))
        throw invariant_error("lp certificate: stored value != objective at point");
}

std::optional<RatVec> lp_feasible(int num_vars, const std::vector<LPRow>& ineqs,
                                  const std::vector<LPRow>& eqs) {
    LPProblem p;
    p.num_vars = num_vars;
    p.objective.assign(num_vars, Rat());
    p.ineqs = ineqs;
    p.eqs = eqs;
    LPOutcome out = lp_solve(p);
    if (out.status == LPStatus::Optimal) return out.point;
    if (out.status == LPStatus::Infeasible) return std::nullopt;
    throw invariant_error("lp_feasible: zero objective reported unbounded");
}

}  // namespace logconv
