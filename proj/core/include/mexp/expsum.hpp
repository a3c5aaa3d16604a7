#pragma once

#include <complex>
#include <vector>

#include "mexp/intervals.hpp"

namespace mexp {

using cplx = std::complex<double>;

/// Maximum polynomial degree carried by a density term.
inline constexpr int kMaxPolyDegree = 4;

/// One density term p(t) e^{i omega t} supported on a single part of the
/// spectrum. Coefficients are ascending in t.
struct ExpTerm {
    int interval_index = 0;
    std::vector<cplx> poly;
    cplx freq{};
};

/// A point mass w * delta(t - location): contributes w e^{i location z} to
/// the transform. These arise when a transform is multiplied by (z - lambda)
/// and keep the class closed under that operation; they always sit at a part
/// endpoint.
struct ExpAtom {
    int interval_index = 0;
    double location = 0.0;
    cplx weight{};
};

/// Band-limited function represented through its density on a finite union
/// of intervals: f(z) = sum over terms of int_{I_j} p(t) e^{i omega t} e^{itz} dt
/// plus atom contributions. All calculus is closed form.
class ExpSum {
public:
    explicit ExpSum(IntervalUnion spectrum);

    /// Density amp * e^{i omega t} on every part.
    static ExpSum exponential(const IntervalUnion& E, cplx omega, cplx amp = 1.0);

    const IntervalUnion& spectrum() const { return spectrum_; }
    const std::vector<ExpTerm>& terms() const { return terms_; }
    const std::vector<ExpAtom>& atoms() const { return atoms_; }
    bool has_atoms() const { return !atoms_.empty(); }

    void add_term(ExpTerm term);
    void add_atom(ExpAtom atom);

    cplx eval(cplx z) const;

    /// d/dz of the transform: density gains a factor (i t).
    ExpSum derivative() const;

    /// Restriction of the density to a sub-union of whole parts. The result
    /// keeps the full spectrum. Throws NotSubUnionError.
    ExpSum project(const IntervalUnion& onto) const;

    /// (z - lambda) * f as an ExpSum; the boundary terms become atoms.
    ExpSum times_linear(cplx lambda) const;

    /// Crude magnitude of the density, used to make tolerances relative.
    double coeff_scale() const;

    ExpSum& operator+=(const ExpSum& other);
    ExpSum& operator*=(cplx c);
    friend ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }
    friend ExpSum operator*(ExpSum a, cplx c) { return a *= c; }
    friend ExpSum operator*(cplx c, ExpSum a) { return a *= c; }

private:
    IntervalUnion spectrum_;
    std::vector<ExpTerm> terms_;
    std::vector<ExpAtom> atoms_;
};

/// L^2(E) pairing of the densities: int_E f_density conj(g_density) dt.
/// Throws SpectrumMismatchError when the spectra differ and DomainError when
/// either side carries atoms.
cplx inner_product(const ExpSum& f, const ExpSum& g);

double norm(const ExpSum& f);

/// The reproducing kernel of PW_E at lambda, as an ExpSum with density
/// e^{-i t conj(lambda)} / 2pi. The reproducing identity reads
/// 2pi * inner_product(f, kernel(E, lambda)) = f(lambda).
ExpSum kernel(const IntervalUnion& E, cplx lambda);

struct Kernel {
    cplx center{};
    IntervalUnion spectrum;
    ExpSum to_expsum() const { return kernel(spectrum, center); }
    cplx eval(cplx z) const { return to_expsum().eval(z); }
};

struct DivisionResult {
    ExpSum quotient;             ///< the PW_E part of f(z)/(z - lambda)
    std::vector<cplx> gap_coeffs;///< c_j on the complementing intervals
};

/// Splits f(z)/(z - lambda) into a PW_E function plus gap-kernel corrections:
/// f(z)/(z-lambda) = quotient(z) + sum_j c_j k^{L_j}_{conj(lambda)}(z),
/// where c_j = -2pi i F^j(lambda) and F^j is the projection of f onto the
/// first j parts. Requires a planted zero: |f(lambda)| <= tol * scale.
DivisionResult divide_out_zero(const ExpSum& f, cplx lambda, double tol = 1e-9);

/// True iff every per-interval projection of f vanishes at lambda, i.e.
/// f(z)/(z - lambda) stays in PW_E. Requires f(lambda) ~ 0.
bool divisibility_check(const ExpSum& f, cplx lambda, double tol = 1e-8);

/// numer(z)/(z - pole) with a Taylor fallback for |z - pole| < 1e-3
/// (numer must vanish at the pole).
cplx eval_quotient(const ExpSum& numer, cplx pole, cplx z);

/// Closed-form int_a^b p(t) e^{i theta t} dt; removable small-theta regime is
/// handled by a series. Exposed for oracles and the Gram assembly.
cplx integrate_poly_exp(const std::vector<cplx>& poly, cplx theta, double a, double b);

} // namespace mexp
