#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mexp/errors.hpp"

namespace mexp {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Breakpoint identification tolerance for endpoint arithmetic.
inline constexpr double kEndpointSnap = 1e-12;

/// Closed interval [a, b] with a < b.
struct Interval {
    double a = 0.0;
    double b = 0.0;

    double length() const { return b - a; }
    bool contains(double x, double tol = kEndpointSnap) const {
        return x >= a - tol && x <= b + tol;
    }
};

/// Finite union of disjoint closed intervals, sorted by left endpoint.
/// Abutting input intervals are merged on construction (null sets are
/// irrelevant for the L^2 theory this models).
class IntervalUnion {
public:
    /// Builds a sorted, validated union. Throws EmptyError on empty input,
    /// DomainError on a degenerate pair, OverlapError on interior overlap.
    static IntervalUnion from_pairs(const std::vector<std::pair<double, double>>& raw);

    /// Single interval.
    static IntervalUnion single(double a, double b);

    const std::vector<Interval>& parts() const { return parts_; }
    std::size_t size() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }
    double lo() const { return parts_.front().a; }
    double hi() const { return parts_.back().b; }

    double measure() const;

    /// The n-1 complementing gap intervals [b_j, a_{j+1}]. Throws NoGapError
    /// for a single interval.
    std::vector<Interval> gaps() const;

    /// Shifts the part starting at 0 up by `period` and merges it with the
    /// last part when they abut. No-op when no part starts at 0 or the union
    /// is a single interval. Throws DomainError if the union exceeds
    /// [0, period].
    IntervalUnion glue(double period) const;

    /// Exact containment of another union (up to tol), part by part.
    bool contains_union(const IntervalUnion& other, double tol = 1e-9) const;

    /// Membership of a point.
    bool contains_point(double x, double tol = kEndpointSnap) const;

    /// Number of parts when the union is read cyclically on [cell_lo, cell_hi]:
    /// a part starting at cell_lo and a part ending at cell_hi wrap into one.
    std::size_t cyclic_part_count(double cell_lo, double cell_hi, double tol = 1e-9) const;

    /// Translate all parts by dx.
    IntervalUnion translated(double dx) const;

    /// Scale all endpoints by factor s > 0.
    IntervalUnion scaled(double s) const;

    bool approx_equal(const IntervalUnion& other, double tol = 1e-9) const;

    /// Empty union; used only as the result of a null level set.
    static IntervalUnion none() { return IntervalUnion({}); }

private:
    explicit IntervalUnion(std::vector<Interval> parts) : parts_(std::move(parts)) {}
    std::vector<Interval> parts_;
};

/// The cyclic level sets A_1 .. A_N of S in [0, 2pi]: A_n is the set of
/// x in [0, 2pi/N] for which at least n of the translates x + 2pi*j/N lie
/// in S. Null level sets come back empty. Throws DomainError when S is not
/// contained in [0, 2pi].
std::vector<IntervalUnion> cyclic_level_sets(const IntervalUnion& S, int N);

/// Smallest N <= N_max for which every cyclic level set of S, read cyclically
/// on [0, 2pi/N], has at most max(L-1, 1) parts, where L is the cyclic part
/// count of S on [0, 2pi]. Throws NotFoundError when no N qualifies.
int min_reducing_N(const IntervalUnion& S, int N_max = 64);

/// Same search with an explicit per-level-set part budget.
int min_reducing_N_with_target(const IntervalUnion& S, std::size_t target, int N_max);

} // namespace mexp
