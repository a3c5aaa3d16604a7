#include "mexp/intervals.hpp"

#include <algorithm>
#include <cmath>

namespace mexp {

IntervalUnion IntervalUnion::from_pairs(const std::vector<std::pair<double, double>>& raw) {
    if (raw.empty()) throw EmptyError("interval union must be nonempty");
    std::vector<Interval> parts;
    parts.reserve(raw.size());
    for (const auto& [a, b] : raw) {
        if (!(a < b)) throw DomainError("degenerate interval: need a < b");
        parts.push_back({a, b});
    }
    std::sort(parts.begin(), parts.end(),
              [](const Interval& x, const Interval& y) { return x.a < y.a; });
    std::vector<Interval> merged;
    merged.push_back(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i) {
        Interval& prev = merged.back();
        const Interval& cur = parts[i];
        if (cur.a < prev.b - kEndpointSnap)
            throw OverlapError("intervals overlap");
        if (cur.a <= prev.b + kEndpointSnap)
            prev.b = std::max(prev.b, cur.b);  // abutting: merge silently
        else
            merged.push_back(cur);
    }
    return IntervalUnion(std::move(merged));
}

IntervalUnion IntervalUnion::single(double a, double b) {
    return from_pairs({{a, b}});
}

double IntervalUnion::measure() const {
    double m = 0.0;
    for (const auto& p : parts_) m += p.length();
    return m;
}

std::vector<Interval> IntervalUnion::gaps() const {
    if (parts_.size() < 2) throw NoGapError("single interval has no gaps");
    std::vector<Interval> out;
    out.reserve(parts_.size() - 1);
    for (std::size_t j = 0; j + 1 < parts_.size(); ++j)
        out.push_back({parts_[j].b, parts_[j + 1].a});
    return out;
}

IntervalUnion IntervalUnion::glue(double period) const {
    if (lo() < -kEndpointSnap || hi() > period + kEndpointSnap)
        throw DomainError("glue: union exceeds [0, period]");
    if (parts_.size() < 2 || std::abs(parts_.front().a) > kEndpointSnap)
        return *this;  // nothing to glue
    std::vector<Interval> out(parts_.begin() + 1, parts_.end());
    const Interval shifted{parts_.front().a + period, parts_.front().b + period};
    if (std::abs(out.back().b - shifted.a) <= 1e-9)
        out.back().b = shifted.b;
    else
        out.push_back(shifted);
    return IntervalUnion(std::move(out));
}

bool IntervalUnion::contains_union(const IntervalUnion& other, double tol) const {
    for (const auto& p : other.parts_) {
        bool covered = false;
        for (const auto& q : parts_) {
            if (p.a >= q.a - tol && p.b <= q.b + tol) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

bool IntervalUnion::contains_point(double x, double tol) const {
    for (const auto& p : parts_)
        if (p.contains(x, tol)) return true;
    return false;
}

std::size_t IntervalUnion::cyclic_part_count(double cell_lo, double cell_hi, double tol) const {
    if (parts_.empty()) return 0;
    std::size_t n = parts_.size();
    const bool wraps = n >= 2 && std::abs(parts_.front().a - cell_lo) <= tol &&
                       std::abs(parts_.back().b - cell_hi) <= tol;
    if (wraps) --n;
    // Full cell is one interval.
    if (n == 0) n = 1;
    return n;
}

IntervalUnion IntervalUnion::translated(double dx) const {
    std::vector<Interval> out = parts_;
    for (auto& p : out) {
        p.a += dx;
        p.b += dx;
    }
    return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::scaled(double s) const {
    if (!(s > 0)) throw RangeError("scale factor must be positive");
    std::vector<Interval> out = parts_;
    for (auto& p : out) {
        p.a *= s;
        p.b *= s;
    }
    return IntervalUnion(std::move(out));
}

bool IntervalUnion::approx_equal(const IntervalUnion& other, double tol) const {
    if (parts_.size() != other.parts_.size()) return false;
    for (std::size_t i = 0; i < parts_.size(); ++i)
        if (std::abs(parts_[i].a - other.parts_[i].a) > tol ||
            std::abs(parts_[i].b - other.parts_[i].b) > tol)
            return false;
    return true;
}

namespace {

// Snap-cluster sorted breakpoints in place.
void cluster(std::vector<double>& xs, double tol) {
    std::sort(xs.begin(), xs.end());
    std::size_t w = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (w == 0 || xs[i] - xs[w - 1] > tol)
            xs[w++] = xs[i];
    }
    xs.resize(w);
}

} // namespace

std::vector<IntervalUnion> cyclic_level_sets(const IntervalUnion& S, int N) {
    if (N < 1) throw RangeError("N must be positive");
    if (S.lo() < -kEndpointSnap || S.hi() > kTwoPi + kEndpointSnap)
        throw DomainError("cyclic_level_sets: S must lie in [0, 2pi]");

    const double P = kTwoPi / N;
    // Reduce every covered piece of S into the cell [0, P].
    std::vector<std::pair<double, double>> covers;
    for (const auto& part : S.parts()) {
        for (int j = 0; j < N; ++j) {
            const double clo = j * P, chi = (j + 1) * P;
            const double lo = std::max(part.a, clo), hi = std::min(part.b, chi);
            if (hi - lo > kEndpointSnap)
                covers.emplace_back(lo - clo, hi - clo);
        }
    }

    std::vector<double> xs = {0.0, P};
    for (const auto& [lo, hi] : covers) {
        xs.push_back(lo);
        xs.push_back(hi);
    }
    cluster(xs, 1e-11);

    // Multiplicity on each elementary segment, then threshold at n = 1..N.
    std::vector<IntervalUnion> out;
    out.reserve(static_cast<std::size_t>(N));
    std::vector<int> mult(xs.size() > 0 ? xs.size() - 1 : 0, 0);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double mid = 0.5 * (xs[i] + xs[i + 1]);
        for (const auto& [lo, hi] : covers)
            if (mid > lo && mid < hi) ++mult[i];
    }
    for (int n = 1; n <= N; ++n) {
        std::vector<std::pair<double, double>> segs;
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            if (mult[i] >= n) {
                if (!segs.empty() && std::abs(segs.back().second - xs[i]) <= 1e-11)
                    segs.back().second = xs[i + 1];
                else
                    segs.emplace_back(xs[i], xs[i + 1]);
            }
        }
        // Drop null components.
        std::erase_if(segs, [](const auto& s) { return s.second - s.first <= 1e-10; });
        out.push_back(segs.empty() ? IntervalUnion::none() : IntervalUnion::from_pairs(segs));
    }
    return out;
}

int min_reducing_N_with_target(const IntervalUnion& S, std::size_t target, int N_max) {
    for (int N = 1; N <= N_max; ++N) {
        const double P = kTwoPi / N;
        bool ok = true;
        for (const auto& A : cyclic_level_sets(S, N)) {
            if (A.empty()) continue;
            if (A.cyclic_part_count(0.0, P) > target) {
                ok = false;
                break;
            }
        }
        if (ok) return N;
    }
    throw NotFoundError("no reducing N within bound");
}

int min_reducing_N(const IntervalUnion& S, int N_max) {
    const std::size_t L = S.cyclic_part_count(0.0, kTwoPi);
    const std::size_t target = L >= 2 ? L - 1 : 1;
    return min_reducing_N_with_target(S, target, N_max);
}

} // namespace mexp
