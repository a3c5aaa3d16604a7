#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mexp/expsum.hpp"
#include "mexp/lattice.hpp"

namespace mexp {

/// Gram matrix of the exponential system {e_lambda} in L^2(E):
/// entries(i, j) = <e_{lambda_j}, e_{lambda_i}>.
struct GramMatrix {
    IntervalUnion domain;
    FrequencySet freqs;
    Eigen::MatrixXcd entries;
};

/// Closed-form <e_mu, e_nu>_{L^2(E)} = int_E e^{i (mu - conj nu) t} dt.
cplx exp_pair(const IntervalUnion& E, cplx mu, cplx nu);

/// Assembles the Gram matrix. Throws SizeError above 5000 frequencies.
GramMatrix gram_matrix(const IntervalUnion& E, const FrequencySet& freqs);

/// Indices of freqs ordered by distance from the origin (ties by real part).
std::vector<std::size_t> nearest_origin_order(const FrequencySet& freqs);

struct RieszBounds {
    int window = 0;
    double A = 0.0;  ///< smallest eigenvalue of the Gram section
    double B = 0.0;  ///< largest eigenvalue
};

/// Eigenvalue bounds of centered Gram sections (the `window` frequencies
/// nearest the origin). With normalized = true the exponentials are scaled to
/// unit L^2(E) norm first. Throws SizeError when a window exceeds |freqs|.
std::vector<RieszBounds> riesz_bounds(const IntervalUnion& E, const FrequencySet& freqs,
                                      const std::vector<int>& windows,
                                      bool normalized = false);

/// Dual (biorthogonal) system by Gram inversion: column n of coeff gives
/// g_n = sum_m coeff(m, n) e_{lambda_m} with <e_m, g_n> = delta_{mn}.
struct DualSystem {
    IntervalUnion domain;
    FrequencySet freqs;
    Eigen::MatrixXcd coeff;

    /// g_n as an ExpSum (density sum_m coeff(m, n) e^{i lambda_m t}).
    ExpSum element(std::size_t n) const;

    /// The point-evaluation dual f_n (combination of reproducing-kernel
    /// densities) with f_n(lambda_m) = delta_{mn} inside the section.
    ExpSum point_dual(std::size_t n) const;
};

/// Inverts the Gram matrix through a Hermitian eigendecomposition. Throws
/// IllConditionedError when the smallest eigenvalue is <= 1e-10 times the
/// largest.
DualSystem dual_system(const IntervalUnion& E, const FrequencySet& freqs);

struct ResidualPair {
    int truncation = 0;
    double residual_exponentials = 0.0;
    double residual_duals = 0.0;
};

/// Relative L^2(E) distance from f to the span of the T frequencies nearest
/// the origin, for each requested truncation T; computed once through the
/// normal equations and once through the dual coefficients.
std::vector<ResidualPair> completeness_residual(const IntervalUnion& E,
                                                const FrequencySet& freqs,
                                                const ExpSum& f,
                                                const std::vector<int>& truncations);

} // namespace mexp
