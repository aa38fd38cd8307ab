#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logconv/cross.hpp"

namespace logconv {

// Log-coordinate point. A missing coordinate stands for log 0 = -inf, i.e.
// z_j = 0 (contact with the axis V_j); finite coordinates are exact.
struct LogPoint {
    std::vector<std::optional<Rat>> coords;

    int dim() const { return static_cast<int>(coords.size()); }
    bool finite() const {
        for (const auto& c : coords)
            if (!c) return false;
        return true;
    }
    RatVec finite_coords() const;  // throws input_error if any -inf present
};

// Rotation-invariant domain, described by the log-image of its off-axis part
// (a union of cells) plus one flag per coordinate saying whether the domain
// contains points with z_j = 0. A flagged coordinate must appear in some
// cell's ray mask (an open set meeting the axis recedes in -e_j); a ray
// without the flag encodes a punctured domain.
struct ReinhardtDomain {
    int n = 0;
    std::vector<Cell> cells;
    std::vector<bool> axis_meets;

    static ReinhardtDomain make(int n, std::vector<Cell> cells, std::vector<bool> axis_meets);
};

struct ReinhardtCross {
    struct Block {
        ReinhardtDomain a;
        ReinhardtDomain d;
    };
    std::vector<Block> blocks;

    static ReinhardtCross make(std::vector<Block> blocks);
};

struct EnvelopeResult {
    VData hull;                    // generators of conv(log Ω)
    std::vector<bool> axis_meets;  // identical to the input's flags
    std::optional<HPolytope> hrep; // bounded part, dimensions ≤ 3 only
};

// Inexact I/O layer (documented decimal precision); the core never consumes
// these values unless the caller explicitly opts in.
LogPoint log_point(const std::vector<Rat>& moduli, int precision = 12);
std::vector<Rat> modulus_point(const LogPoint& p, int precision = 12);

// Exact membership; -inf coordinates require a matching axis flag, a cell
// whose ray mask covers them, and an LP-feasible assignment of the finite
// coordinates with the -inf coordinates free along the rays.
bool contains_point(const ReinhardtDomain& dom, const LogPoint& p);

enum class LogConvexity { True, False, Unfalsified };

struct LogConvexityResult {
    LogConvexity status = LogConvexity::True;
    std::optional<RatVec> witness;  // point of conv(union) outside the union
    int samples_checked = 0;
};

// Single cell: convex, TRUE. n ≤ 2: exact decision by subdividing
// hull ∖ union into pieces and probing each for interior. n ≥ 3 with several
// cells: seeded midpoint falsification only.
LogConvexityResult is_log_convex(const ReinhardtDomain& dom, int samples = 256,
                                 uint64_t seed = 1);

struct DohResult {
    bool is_doh = false;
    bool inconclusive = false;  // log-convexity unfalsified but not proven
    std::string reason;         // which condition failed / why inconclusive
    std::optional<RatVec> witness;
    std::optional<int> axis;    // 0-based coordinate of a flag/ray mismatch
};

// Domain-of-holomorphy check at the representation level: log-convexity
// plus, per coordinate, axis flag ⇔ ray presence.
DohResult is_doh(const ReinhardtDomain& dom, int samples = 256, uint64_t seed = 1);

// Envelope of holomorphy: hull of the log-image, axis flags preserved.
EnvelopeResult envelope(const ReinhardtDomain& dom);

// Rebuild the envelope as a one-cell domain (dimensions ≤ 3).
ReinhardtDomain envelope_domain(const ReinhardtDomain& dom);

// Relative extremal function via log coordinates. Requires D to pass is_doh,
// A ⊆ D, and p finite (off the axes) and interior to conv(log D).
Rat h_star(const ReinhardtDomain& a, const ReinhardtDomain& d, const LogPoint& p);

// Membership of a (possibly axis-touching) point in the cross
// X = ∪_j A_1×…×D_j×…×A_N.
bool cross_contains(const ReinhardtCross& cross, const std::vector<LogPoint>& blocks);

struct AxisCheck {
    int block = 0;      // 0-based
    int coord = 0;      // 0-based within the block
    std::vector<std::string> witness;  // per-coordinate, "-inf" for axis contact
    bool in_cross = false;
};

struct ReinhardtCrossReport {
    CrossReport hull_report;       // trichotomy campaign on the induced log-space spec
    std::vector<AxisCheck> axis_checks;
    int hstar_samples_checked = 0;
    std::vector<std::string> hstar_mismatches;

    bool ok() const {
        if (!hull_report.ok() || !hstar_mismatches.empty()) return false;
        for (const auto& c : axis_checks)
            if (!c.in_cross) return false;
        return true;
    }
};

// §-4-style verification: builds the induced log-space cross spec
// (S_j = conv(log A_j), U_j = conv(log D_j)), runs the trichotomy campaign,
// cross-checks h* sums through the public h_star path on a sample prefix,
// and validates one axis witness per flagged coordinate of every D_j.
ReinhardtCrossReport cross_envelope_verify(const ReinhardtCross& cross, int num_samples,
                                           uint64_t seed);

namespace detail {
// Induced log-space spec; exposed for tests and the CLI.
CrossSpec induced_cross_spec(const ReinhardtCross& cross);
}

}  // namespace logconv
