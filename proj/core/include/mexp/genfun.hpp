#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "mexp/intervals.hpp"

namespace mexp {

using cplx = std::complex<double>;

/// One factor of a generating function: w * e^{i shift w} times the
/// symmetric principal-value product over its zeros, evaluated at
/// w = z - translate. zeros holds gamma_k for k = -trunc..trunc (ascending,
/// zeros[trunc] = 0).
struct GenComponent {
    std::vector<double> zeros;
    double shift = 0.0;
    double translate = 0.0;
};

/// A generating function as a product of components. trunc pins the symmetric
/// index truncation: every component stores exactly 2*trunc + 1 zeros.
struct GenFunctionSpec {
    std::vector<GenComponent> components;
    int trunc = 0;

    /// Sorted union of translate + zeros over all components.
    std::vector<double> all_zeros() const;

    /// Throws RangeError / SizeError / DomainError when the stored data does
    /// not satisfy the structural invariants (trunc >= 1000, sizes, ordering,
    /// zeros[trunc] == 0).
    void validate() const;
};

/// Principal-value product evaluation; exactly 0 at stored zeros. A slowly
/// varying tail estimate (pairwise, from the mean zero spacing) compensates
/// the index truncation so values track the infinite product closely.
cplx vp_eval(const GenFunctionSpec& g, cplx z);

/// log |G(z)|, accumulated without overflow. Throws DomainError at a stored
/// zero (the log is -infinity there).
double vp_log_abs(const GenFunctionSpec& g, cplx z);

/// G'(gamma) at a stored real zero, computed by removing the vanishing factor
/// from the product. Zeros shared by two components yield 0 (double zero).
/// Throws NotAZeroError when gamma is not stored.
cplx derivative_at_zeros(const GenFunctionSpec& g, double gamma);

/// Distance from z to the stored zero set.
double dist_to_zeros(const GenFunctionSpec& g, cplx z);

struct StripSample {
    cplx z;
    cplx value;
    double dist = 0.0;
    double ratio = 0.0;
};

struct StripReport {
    double c1 = 0.0;  ///< min |G(z)| / dist(z, Gamma) over the samples
    double c2 = 0.0;  ///< max of the same ratio
    std::vector<StripSample> samples;
};

/// Samples |G(z)|/dist(z, Gamma) on the strip |Im z| <= 1, |Re z| <= R_win
/// with R_win = 0.8 * trunc * (mean zero spacing); points with
/// dist < 1e-6 are re-drawn. Deterministic for a fixed seed.
/// Throws RangeError when samples < 1000.
StripReport strip_comparability(const GenFunctionSpec& g, int samples,
                                std::uint32_t seed = 12345u);

/// (log|G(+i y)|/y, log|G(-i y)|/y) at y = y_max; the pair witnesses the
/// vertical extent of the conjugate indicator diagram. Throws RangeError when
/// y_max < 20.
std::pair<double, double> exp_type_profile(const GenFunctionSpec& g, double y_max);

} // namespace mexp
