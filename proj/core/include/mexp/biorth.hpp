#pragma once

#include <vector>

#include "mexp/expsum.hpp"
#include "mexp/gram.hpp"

namespace mexp {

/// F_k = (z - lambda_k) f_{lambda_k} for a tuple of anchor frequencies,
/// together with the per-part projections F_k^j.
struct FTuple {
    IntervalUnion domain;
    std::vector<cplx> anchors;
    std::vector<ExpSum> F;
    std::vector<std::vector<ExpSum>> proj;  ///< proj[k][j] = F_k^j

    /// F_i^j evaluated at z.
    cplx proj_eval(std::size_t k, std::size_t j, cplx z) const {
        return proj[k][j].eval(z);
    }
};

/// Assembles the tuple from the dual system's point-evaluation duals.
/// Throws AnchorError when an anchor is not one of the frequencies.
FTuple build_F(const IntervalUnion& E, const FrequencySet& freqs,
               const std::vector<cplx>& anchors, const DualSystem& dual);

/// Picks N anchors from the 20 frequencies nearest the origin, maximizing the
/// smallest singular value of the row-normalized sample matrix of the F_k on
/// a probe grid. Throws DegenerateError when every tuple scores below 1e-10.
std::vector<cplx> select_independent(const IntervalUnion& E, const FrequencySet& freqs,
                                     int N, const DualSystem& dual);

/// A biorthogonal element c * numerator(z) / (z - pole), normalized to
/// value 1 at the pole.
struct BiorthElement {
    cplx pole;
    ExpSum numerator;
    cplx normalization;

    cplx eval(cplx z) const;
};

/// Two-part formula element at lambda. form selects which part index carries
/// the coefficients (1 or 2); both describe the same function.
/// Throws NullElementError when the numerator collapses.
BiorthElement biorth_two(const FTuple& tuple, cplx lambda, int form = 1);

/// Three-part cofactor formula element; l in {1, 2, 3} selects the deleted
/// column. Cofactor a_k^l = (-1)^{k+l} det(F_i^j(lambda))_{i != k, j != l}.
BiorthElement biorth_three(const FTuple& tuple, cplx lambda, int l);

/// The determinant det(F_k^j(z)) whose zero set is the frequency sequence.
struct SDet {
    FTuple tuple;
    cplx eval(cplx z) const;
};

SDet s_det(FTuple tuple);

/// Relative L^2(E) distance (phase-invariant, both sides unit-normalized)
/// between the formula element's density and the Gram-dual density at the
/// same frequency. Throws NotFoundError when lambda is not a frequency.
double cross_validate(const IntervalUnion& E, const FrequencySet& freqs, cplx lambda,
                      const BiorthElement& elt, const DualSystem& dual);

} // namespace mexp
