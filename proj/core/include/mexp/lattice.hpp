#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "mexp/genfun.hpp"
#include "mexp/intervals.hpp"

namespace mexp {

/// A perturbation Gamma = {gamma_k} of the integers inside alpha*Z, built
/// block by block: the M points with indices k in (l M, (l+1) M] stay inside
/// (l M, (l+1) M]. gamma_0 = 0.
struct PerturbedLattice {
    double alpha = 0.0;
    int M = 0;
    long k_min = 0;
    long k_max = 0;
    std::vector<double> gammas;                    ///< gamma_k, k = k_min..k_max
    std::vector<std::pair<long, double>> block_sums;  ///< (l, Delta_l)

    double gamma(long k) const;
    double delta(long k) const { return gamma(k) - double(k); }
};

/// (1 - alpha) M^2 > 2M + 2 and M > 4. Throws RangeError for alpha
/// outside (0, 1).
bool avdonin_feasible(double alpha, int M);

/// Smallest M passing avdonin_feasible for this alpha.
int minimal_feasible_M(double alpha);

/// Slot index range [m_lo, m_hi] with alpha*m in (l M, (l+1) M].
std::pair<long, long> block_slots(double alpha, int M, long l);

/// Builds the lattice over blocks l_min..l_max. Within each block, points
/// start packed at the leftmost slots and are moved right (largest point
/// first) until the running sum of the Delta_l lands in [-alpha/2, alpha/2),
/// which keeps every block sum and every range of block sums inside
/// (-alpha, alpha). Throws InfeasibleError when this cannot be reached.
PerturbedLattice block_balanced_perturbation(double alpha, int M, long l_min, long l_max);

/// A finite frequency set.
struct FrequencySet {
    std::vector<cplx> points;
    std::string label;
};

struct BasisResult {
    FrequencySet freqs;
    GenFunctionSpec genfun;
    int N = 1;  ///< cyclic reduction order used (1 when no reduction is needed)
};

/// Constructs an integer Riesz-basis frequency set for L^2(E), E inside
/// [0, 2pi] with at most 3 parts, together with its generating function.
/// Frequencies honor |index| <= trunc; the generating function uses
/// max(trunc, 1000). Throws DomainError when E is not inside [0, 2pi],
/// UnsupportedError for more than 3 parts.
BasisResult multiband_basis(const IntervalUnion& E, int trunc);

enum class DensityMode { Disk, Uniform };

/// Disk: #(points in B(0,R)) / (2R). Uniform: max over window starts x on a
/// grid of #(points in (x, x+R)) / R. Throws RangeError when R <= 0.
double density_estimate(const FrequencySet& freqs, double R, DensityMode mode);

} // namespace mexp
