#include "mexp/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace mexp {

namespace {

// floor with a snap so exact slot boundaries are classified stably
long snapped_floor(double x) { return long(std::floor(x + 1e-9)); }

} // namespace

double PerturbedLattice::gamma(long k) const {
    if (k < k_min || k > k_max) throw RangeError("lattice index out of stored range");
    return gammas[std::size_t(k - k_min)];
}

bool avdonin_feasible(double alpha, int M) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw RangeError("alpha must lie in (0, 1)");
    return M > 4 && (1.0 - alpha) * double(M) * double(M) > 2.0 * M + 2.0;
}

int minimal_feasible_M(double alpha) {
    for (int M = 5; M <= 1 << 20; ++M)
        if (avdonin_feasible(alpha, M)) return M;
    throw InfeasibleError("no feasible block length");
}

std::pair<long, long> block_slots(double alpha, int M, long l) {
    const long m_lo = snapped_floor(double(l) * M / alpha) + 1;
    const long m_hi = snapped_floor(double(l + 1) * M / alpha);
    return {m_lo, m_hi};
}

PerturbedLattice block_balanced_perturbation(double alpha, int M, long l_min, long l_max) {
    if (!avdonin_feasible(alpha, M))
        throw InfeasibleError("parameters fail the basis feasibility condition");
    if (l_min > l_max) throw RangeError("empty block range");

    PerturbedLattice lat;
    lat.alpha = alpha;
    lat.M = M;
    lat.k_min = l_min * M + 1;
    lat.k_max = (l_max + 1) * M;
    lat.gammas.assign(std::size_t(lat.k_max - lat.k_min + 1), 0.0);

    double prefix = 0.0;  // running sum of the Delta_l, kept in [-alpha/2, alpha/2)
    for (long l = l_min; l <= l_max; ++l) {
        const auto [m_lo, m_hi] = block_slots(alpha, M, l);
        // k = 0 is pinned at slot 0 (gamma_0 = 0); it is the top point of its
        // block, so only the other points are movable there.
        const bool pinned = (l == -1);
        const int movable = pinned ? M - 1 : M;
        const long top_slot = pinned ? -1 : m_hi;
        if (top_slot - m_lo + 1 < movable)
            throw InfeasibleError("block has fewer slots than points");

        // all-left packing, then the number of unit right-moves needed
        std::vector<long> slots(static_cast<std::size_t>(movable));
        double base = 0.0;
        for (int j = 0; j < movable; ++j) {
            slots[std::size_t(j)] = m_lo + j;
            const long k = l * M + 1 + j;
            base += alpha * double(m_lo + j) - double(k);
        }
        const double wanted_lo = -alpha / 2.0 - prefix - base;
        const long moves = std::max<long>(0, long(std::ceil(wanted_lo / alpha - 1e-12)));
        const long cap = top_slot - (m_lo + movable - 1);  // identical for every point
        if (moves > cap * long(movable))
            throw InfeasibleError("block cannot absorb the required adjustment");
        // distribute the moves starting from the largest point, keeping the
        // slot assignment strictly increasing
        long left = moves;
        long allowance = cap;
        for (int j = movable - 1; j >= 0 && left > 0; --j) {
            const long e = std::min(left, allowance);
            slots[std::size_t(j)] += e;
            left -= e;
            allowance = e;  // the point below may move at most this far
        }
        if (left > 0) throw InfeasibleError("move distribution failed");

        double delta_l = 0.0;
        for (int j = 0; j < movable; ++j) {
            const long k = l * M + 1 + j;
            const double g = alpha * double(slots[std::size_t(j)]);
            lat.gammas[std::size_t(k - lat.k_min)] = g;
            delta_l += g - double(k);
        }
        if (pinned) lat.gammas[std::size_t(0 - lat.k_min)] = 0.0;
        lat.block_sums.emplace_back(l, delta_l);
        prefix += delta_l;
        if (delta_l <= -alpha || delta_l >= alpha || prefix < -alpha / 2.0 - 1e-12 ||
            prefix >= alpha / 2.0 + 1e-12)
            throw InfeasibleError("balanced state not reached");
    }
    return lat;
}

namespace {

// Integer frequencies forming a Riesz basis of L^2(U) for U inside [0, 2pi]
// that is a single interval or a wrap pair [0,a] u [b, 2pi]; indexed
// k = -trunc..trunc.
std::vector<double> integer_basis_on(const IntervalUnion& U, int trunc) {
    const double len = U.measure();
    std::vector<double> zeros(std::size_t(2 * trunc + 1));
    if (len >= kTwoPi - 1e-9) {
        for (long k = -trunc; k <= trunc; ++k)
            zeros[std::size_t(k + trunc)] = double(k);
        return zeros;
    }
    if (U.size() > 2) throw DomainError("expected at most two parts after reduction");
    if (U.size() == 2 &&
        !(std::abs(U.lo()) <= 1e-9 && std::abs(U.hi() - kTwoPi) <= 1e-9))
        throw DomainError("two-part set must wrap around the cell");

    const double alpha = len / kTwoPi;
    const int M = minimal_feasible_M(alpha);
    const long l_hi = trunc / M + 1;
    const auto lat = block_balanced_perturbation(alpha, M, -l_hi - 1, l_hi);
    for (long k = -trunc; k <= trunc; ++k)
        zeros[std::size_t(k + trunc)] = std::round(lat.gamma(k) / alpha);
    return zeros;
}

} // namespace

BasisResult multiband_basis(const IntervalUnion& E, int trunc) {
    if (trunc < 1)
        throw RangeError("truncation must be positive");
    if (E.lo() < -1e-9 || E.hi() > kTwoPi + 1e-9)
        throw DomainError("spectrum must lie inside [0, 2pi]");
    if (E.size() > 3) throw UnsupportedError("more than three parts");

    const int g_trunc = std::max(trunc, 1000);
    BasisResult out;
    out.genfun.trunc = g_trunc;

    const bool one_piece =
        E.size() == 1 ||
        (E.size() == 2 && std::abs(E.lo()) <= 1e-9 && std::abs(E.hi() - kTwoPi) <= 1e-9);

    if (one_piece) {
        GenComponent c;
        c.zeros = integer_basis_on(E, g_trunc);
        c.shift = E.measure() / 2.0;
        c.translate = 0.0;
        out.genfun.components.push_back(std::move(c));
        out.freqs.label = E.size() == 1 ? "single interval" : "two intervals, glued";
        out.N = 1;
    } else {
        const int N = min_reducing_N_with_target(E, 1, 64);
        const auto levels = cyclic_level_sets(E, N);
        for (int n = 1; n <= N; ++n) {
            const auto& A = levels[std::size_t(n - 1)];
            if (A.empty() || A.measure() <= 1e-10) continue;
            GenComponent c;
            c.zeros = integer_basis_on(A.scaled(double(N)), g_trunc);
            for (double& z : c.zeros) z *= double(N);
            c.shift = A.measure() / 2.0;
            c.translate = double(n);
            out.genfun.components.push_back(std::move(c));
        }
        out.freqs.label = "cyclic reduction, N=" + std::to_string(N);
        out.N = N;
    }

    for (const auto& c : out.genfun.components)
        for (long k = -trunc; k <= trunc; ++k)
            out.freqs.points.push_back(c.zeros[std::size_t(k + g_trunc)] + c.translate);
    std::sort(out.freqs.points.begin(), out.freqs.points.end(),
              [](cplx a, cplx b) { return a.real() < b.real(); });
    return out;
}

double density_estimate(const FrequencySet& freqs, double R, DensityMode mode) {
    if (R <= 0.0) throw RangeError("radius must be positive");
    if (mode == DensityMode::Disk) {
        std::size_t count = 0;
        for (cplx p : freqs.points)
            if (std::abs(p) <= R) ++count;
        return double(count) / (2.0 * R);
    }
    // sliding window over the real parts
    std::vector<double> xs;
    xs.reserve(freqs.points.size());
    for (cplx p : freqs.points) xs.push_back(p.real());
    std::sort(xs.begin(), xs.end());
    if (xs.empty()) return 0.0;
    double best = 0.0;
    const double step = R / 64.0;
    for (double x = xs.front() - R; x <= xs.back(); x += step) {
        const auto lo = std::upper_bound(xs.begin(), xs.end(), x);
        const auto hi = std::upper_bound(xs.begin(), xs.end(), x + R);
        best = std::max(best, double(hi - lo) / R);
    }
    return best;
}

} // namespace mexp
