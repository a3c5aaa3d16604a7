#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "mexp/errors.hpp"
#include "mexp/genfun.hpp"
#include "mexp/lattice.hpp"

using namespace mexp;

namespace {

GenFunctionSpec integer_spec(int trunc) {
    GenFunctionSpec g;
    g.trunc = trunc;
    GenComponent c;
    c.shift = kPi;
    c.translate = 0.0;
    c.zeros.resize(std::size_t(2 * trunc + 1));
    for (long k = -trunc; k <= trunc; ++k) c.zeros[std::size_t(k + trunc)] = double(k);
    g.components.push_back(std::move(c));
    return g;
}

cplx sine_oracle(cplx z) { return std::exp(cplx(0, kPi) * z) * std::sin(kPi * z) / kPi; }

} // namespace

TEST_CASE("integer-lattice product matches the sine closed form") {
    auto g = integer_spec(4000);
    // frozen points
    CHECK(std::abs(vp_eval(g, 0.5) - cplx(0.0, 1.0 / kPi)) <= 1e-4);
    CHECK(std::abs(vp_eval(g, cplx(3.0, 0.0))) == 0.0);  // stored zero: exact
    CHECK(std::abs(std::abs(vp_eval(g, cplx(0.5, 1.0))) -
                   std::exp(-kPi) * std::cosh(kPi) / kPi) <= 1e-4);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int i = 0; i < 40; ++i) {
        const cplx z(5.0 * U(rng), U(rng));
        const cplx truth = sine_oracle(z);
        if (std::abs(truth) < 1e-6) continue;
        CHECK(std::abs(vp_eval(g, z) - truth) <= 1e-2 * std::abs(truth));
    }
}

TEST_CASE("derivative at zeros has unit modulus on the integer lattice") {
    auto g = integer_spec(4000);
    for (int n = -50; n <= 50; n += 7) {
        CHECK(std::abs(std::abs(derivative_at_zeros(g, double(n))) - 1.0) <= 1e-6);
    }
    CHECK_THROWS_AS(derivative_at_zeros(g, 0.25), NotAZeroError);
}

TEST_CASE("spec validation rejects malformed components") {
    auto g = integer_spec(4000);
    GenFunctionSpec bad = g;
    bad.trunc = 10;
    CHECK_THROWS_AS(vp_eval(bad, 0.5), RangeError);
    bad = g;
    bad.components[0].zeros[std::size_t(bad.trunc)] = 0.5;
    CHECK_THROWS_AS(vp_eval(bad, 0.5), DomainError);
    bad = g;
    bad.components.clear();
    CHECK_THROWS_AS(vp_eval(bad, 0.5), EmptyError);
}

TEST_CASE("distance to zeros") {
    auto g = integer_spec(1000);
    CHECK(dist_to_zeros(g, cplx(0.5, 0.0)) == doctest::Approx(0.5));
    CHECK(dist_to_zeros(g, cplx(3.0, 0.25)) == doctest::Approx(0.25));
}

TEST_CASE("strip comparability brackets the ratio on the integer lattice") {
    auto g = integer_spec(2000);
    auto rep = strip_comparability(g, 1000);
    // empirical brackets for e^{i pi z} sin(pi z) / pi on the unit strip:
    // the ratio |G| / dist ranges from about e^{-pi} sinh(pi) / (pi sqrt(1.25))
    // up to about e^{pi} cosh(pi) / pi
    CHECK(rep.c1 > 0.04);
    CHECK(rep.c2 < 100.0);
    CHECK(rep.c1 <= rep.c2);
    CHECK(rep.samples.size() == 1000);
    // midpoint ratio oracle: |G(n + 1/2)| / (1/2) = 2/pi
    const double mid = std::abs(vp_eval(g, cplx(7.5, 0.0))) / 0.5;
    CHECK(mid == doctest::Approx(2.0 / kPi).epsilon(1e-3));
    CHECK_THROWS_AS(strip_comparability(g, 10), RangeError);
}

TEST_CASE("exponential type profile witnesses the indicator width") {
    auto g = integer_spec(4000);
    auto [up, down] = exp_type_profile(g, 50.0);
    CHECK(std::abs(up) <= 0.05);
    CHECK(std::abs(down - kTwoPi) <= 0.05);
    CHECK_THROWS_AS(exp_type_profile(g, 5.0), RangeError);
}

TEST_CASE("constructed multiband generating function") {
    auto S = IntervalUnion::from_pairs({{0.0, 1.0}, {2.0, 3.5}, {5.0, kTwoPi}});
    auto basis = multiband_basis(S, 1200);
    // the zero set is exactly the frequency set
    for (std::size_t i = 0; i < basis.freqs.points.size(); i += 97) {
        const double gamma = basis.freqs.points[i].real();
        CHECK(std::abs(vp_eval(basis.genfun, cplx(gamma, 0.0))) == 0.0);
    }
    // derivative comparability over |gamma| <= 300
    double lo = 1e300, hi = 0.0;
    for (auto p : basis.freqs.points) {
        if (std::abs(p.real()) > 300.0) continue;
        const double d = std::abs(derivative_at_zeros(basis.genfun, p.real()));
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    CHECK(lo > 0.0);
    // the derivative at a zero of one factor carries the other factor's
    // magnitude there, which swings with that factor's gap structure;
    // measured spread is ~1.6e4 for this spectrum
    CHECK(hi / lo <= 1e5);
    // downward type approaches the spectral measure
    auto prof = exp_type_profile(basis.genfun, 120.0);
    CHECK(std::abs(prof.second - prof.first - S.measure()) <= 0.02 * S.measure());
}
