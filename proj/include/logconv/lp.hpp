#pragma once

#include <optional>
#include <vector>

#include "logconv/rational.hpp"

namespace logconv {

// One linear row a·x ≤ b (or a·x = b, depending on which list it sits in).
struct LPRow {
    RatVec a;
    Rat b;
};

// max objective·x  s.t.  ineqs: a·x ≤ b,  eqs: a·x = b.
// Variables are free; bounds must be explicit rows.
struct LPProblem {
    int num_vars = 0;
    RatVec objective;
    std::vector<LPRow> ineqs;
    std::vector<LPRow> eqs;

    void validate() const;  // throws input_error on dimension mismatch
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

// Optimal outcomes carry an exact primal/dual certificate pair:
//   point feasible, dual ≥ 0 on inequality rows, Aᵀy + Eᵀz = c,
//   and objective·point = b·y + e·z, all as exact rational identities.
// `dual` holds one multiplier per inequality row, then one per equality row.
struct LPOutcome {
    LPStatus status = LPStatus::Infeasible;
    Rat value;
    RatVec point;
    RatVec dual;
};

const char* to_string(LPStatus s);

// Exact rational simplex (Bland's anti-cycling rule, two phases).
// Deterministic for identical input. Verifies its own certificate before
// returning; a failed self-check throws invariant_error.
LPOutcome lp_solve(const LPProblem& problem);

// Feasibility of {ineqs, eqs}; on success returns an exactly-feasible witness.
std::optional<RatVec> lp_feasible(int num_vars, const std::vector<LPRow>& ineqs,
                                  const std::vector<LPRow>& eqs);

// Re-derives every certificate condition from scratch against the original
// problem data. Throws invariant_error with a description on any failure.
void check_certificate(const LPProblem& problem, const LPOutcome& outcome);

}  // namespace logconv
