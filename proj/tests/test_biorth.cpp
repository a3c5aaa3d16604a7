#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "mexp/biorth.hpp"
#include "mexp/errors.hpp"
#include "mexp/lattice.hpp"

using namespace mexp;

namespace {

struct Setup {
    IntervalUnion E;
    FrequencySet sec;
    DualSystem dual;
    std::vector<cplx> anchors;
    FTuple tuple;
};

Setup make_setup(const IntervalUnion& E, int T, int trunc, int N) {
    auto basis = multiband_basis(E, trunc);
    auto order = nearest_origin_order(basis.freqs);
    FrequencySet sec;
    for (int i = 0; i < T; ++i) sec.points.push_back(basis.freqs.points[order[std::size_t(i)]]);
    std::sort(sec.points.begin(), sec.points.end(),
              [](cplx a, cplx b) { return a.real() < b.real(); });
    auto dual = dual_system(E, sec);
    auto anchors = select_independent(E, sec, N, dual);
    auto tuple = build_F(E, sec, anchors, dual);
    return {E, sec, dual, anchors, tuple};
}

cplx non_anchor_freq(const Setup& s, std::size_t skip = 0) {
    std::size_t found = 0;
    for (auto mu : s.sec.points) {
        bool is_anchor = false;
        for (auto a : s.anchors) is_anchor = is_anchor || std::abs(a - mu) < 1e-9;
        if (!is_anchor && std::abs(mu) < 6.0) {
            if (found++ == skip) return mu;
        }
    }
    return s.sec.points[s.sec.points.size() / 2];
}

} // namespace

TEST_CASE("F functions vanish on the section and split into projections") {
    auto s = make_setup(IntervalUnion::from_pairs({{0.0, 2.0}, {4.0, kTwoPi}}), 60, 300, 2);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (std::size_t k = 0; k < s.tuple.F.size(); ++k) {
        double scale = 0.0;
        for (int i = 0; i < 20; ++i)
            scale = std::max(scale, std::abs(s.tuple.F[k].eval(cplx(10.0 * U(rng), U(rng)))));
        // vanishing on every section frequency, including its own anchor
        for (auto mu : s.sec.points)
            CHECK(std::abs(s.tuple.F[k].eval(mu)) <= 1e-6 * scale);
        // projection completeness: sum_j F_k^j = F_k
        for (int i = 0; i < 50; ++i) {
            const cplx z(10.0 * U(rng), U(rng));
            cplx sum = 0.0;
            for (std::size_t j = 0; j < s.E.size(); ++j) sum += s.tuple.proj_eval(k, j, z);
            CHECK(std::abs(sum - s.tuple.F[k].eval(z)) <= 1e-10 * std::max(1.0, scale));
        }
    }
    CHECK_THROWS_AS(build_F(s.E, s.sec, {cplx(0.123, 0.0)}, s.dual), AnchorError);
}

TEST_CASE("anchor selection produces a well-separated pair") {
    auto s = make_setup(IntervalUnion::from_pairs({{0.0, 2.0}, {4.0, kTwoPi}}), 60, 300, 2);
    CHECK(s.anchors.size() == 2);
    CHECK(std::abs(s.anchors[0] - s.anchors[1]) > 1e-9);
    CHECK_THROWS_AS(select_independent(s.E, s.sec, 4, s.dual), UnsupportedError);
}

TEST_CASE("two-part element: delta values, both forms agree") {
    auto s = make_setup(IntervalUnion::from_pairs({{0.0, 2.0}, {4.0, kTwoPi}}), 80, 300, 2);
    const cplx lam = non_anchor_freq(s);
    auto e1 = biorth_two(s.tuple, lam, 1);
    auto e2 = biorth_two(s.tuple, lam, 2);
    CHECK(std::abs(e1.eval(lam) - 1.0) <= 1e-10);

    double scale = 0.0;
    for (auto mu : s.sec.points) scale = std::max(scale, std::abs(e1.eval(mu)));
    for (auto mu : s.sec.points) {
        if (std::abs(mu - lam) < 1e-9) continue;
        CHECK(std::abs(e1.eval(mu)) <= 1e-6 * scale);
    }

    std::mt19937 rng(13);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const cplx z(10.0 * U(rng), U(rng));
        const cplx a = e1.eval(z), b = e2.eval(z);
        CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(a)));
    }

    // the numerator passes the divisibility test at its pole
    CHECK(divisibility_check(e1.numerator, lam, 1e-6));
}

TEST_CASE("three-part element: cofactor identity and l-independence") {
    auto s = make_setup(IntervalUnion::from_pairs({{0.0, 1.0}, {2.0, 3.5}, {5.0, 6.0}}), 60, 400, 3);
    const cplx lam = non_anchor_freq(s);

    // cofactor identity: sum_k a_k^l F_k^j(lam) = 0 for all j, l
    double scale = 0.0;
    Eigen::Matrix3cd P;
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) {
            P(k, j) = s.tuple.proj_eval(std::size_t(k), std::size_t(j), lam);
            scale = std::max(scale, std::abs(P(k, j)));
        }
    for (int l = 0; l < 3; ++l) {
        cplx a[3];
        for (int k = 0; k < 3; ++k) {
            int rows[2], cols[2], ri = 0, ci = 0;
            for (int r = 0; r < 3; ++r) if (r != k) rows[ri++] = r;
            for (int c = 0; c < 3; ++c) if (c != l) cols[ci++] = c;
            const cplx minor = P(rows[0], cols[0]) * P(rows[1], cols[1]) -
                               P(rows[0], cols[1]) * P(rows[1], cols[0]);
            a[k] = (((k + l) % 2 == 0) ? 1.0 : -1.0) * minor;
        }
        for (int j = 0; j < 3; ++j) {
            cplx resid = 0.0;
            for (int k = 0; k < 3; ++k) resid += a[k] * P(k, j);
            CHECK(std::abs(resid) <= 1e-8 * std::max(1.0, scale * scale));
        }
    }

    // normalized elements for different deleted columns agree
    auto e1 = biorth_three(s.tuple, lam, 1);
    auto e2 = biorth_three(s.tuple, lam, 2);
    CHECK(std::abs(e1.eval(lam) - 1.0) <= 1e-9);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int i = 0; i < 30; ++i) {
        const cplx z(8.0 * U(rng), U(rng));
        CHECK(std::abs(e1.eval(z) - e2.eval(z)) <= 1e-6 * std::max(1.0, std::abs(e1.eval(z))));
    }
    // vanishing on the rest of the section
    double escale = 0.0;
    for (auto mu : s.sec.points) escale = std::max(escale, std::abs(e1.eval(mu)));
    for (auto mu : s.sec.points) {
        if (std::abs(mu - lam) < 1e-9) continue;
        CHECK(std::abs(e1.eval(mu)) <= 1e-6 * escale);
    }
}

TEST_CASE("determinant trace vanishes exactly on the section, not between") {
    auto s = make_setup(IntervalUnion::from_pairs({{0.0, 2.0}, {4.0, kTwoPi}}), 60, 300, 2);
    auto sd = s_det(s.tuple);

    // N=2: S = F_1^1 F_2^2 - F_1^2 F_2^1 at random z
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const cplx z(10.0 * U(rng), U(rng));
        const cplx direct = s.tuple.proj_eval(0, 0, z) * s.tuple.proj_eval(1, 1, z) -
                            s.tuple.proj_eval(0, 1, z) * s.tuple.proj_eval(1, 0, z);
        CHECK(std::abs(sd.eval(z) - direct) <= 1e-10 * std::max(1.0, std::abs(direct)));
    }

    double scale = 0.0;
    std::vector<double> reals;
    for (auto mu : s.sec.points) reals.push_back(mu.real());
    std::sort(reals.begin(), reals.end());
    for (std::size_t i = 0; i + 1 < reals.size(); ++i)
        scale = std::max(scale, std::abs(sd.eval(cplx((reals[i] + reals[i + 1]) / 2.0, 0.0))));
    for (auto mu : s.sec.points) CHECK(std::abs(sd.eval(mu)) <= 1e-6 * scale);
    for (std::size_t i = 0; i + 1 < reals.size(); ++i) {
        const cplx mid((reals[i] + reals[i + 1]) / 2.0, 0.0);
        CHECK(std::abs(sd.eval(mid)) >= 1e-3 * scale);
    }
}

TEST_CASE("three-part determinant: column-sum expansion identity") {
    auto s = make_setup(IntervalUnion::from_pairs({{0.0, 1.0}, {2.0, 3.5}, {5.0, 6.0}}), 45, 400, 3);
    auto sd = s_det(s.tuple);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    // replacing the first column by the row sums F_k leaves the determinant
    // unchanged: S(z) = sum_k (-1)^{k+1} F_k(z) * minor_{k,1}(z)
    for (int i = 0; i < 50; ++i) {
        const cplx z(8.0 * U(rng), U(rng));
        cplx expanded = 0.0;
        for (int k = 0; k < 3; ++k) {
            int rows[2], ri = 0;
            for (int r = 0; r < 3; ++r) if (r != k) rows[ri++] = r;
            const cplx minor =
                s.tuple.proj_eval(std::size_t(rows[0]), 1, z) * s.tuple.proj_eval(std::size_t(rows[1]), 2, z) -
                s.tuple.proj_eval(std::size_t(rows[0]), 2, z) * s.tuple.proj_eval(std::size_t(rows[1]), 1, z);
            expanded += ((k % 2 == 0) ? 1.0 : -1.0) * s.tuple.F[std::size_t(k)].eval(z) * minor;
        }
        const cplx direct = sd.eval(z);
        CHECK(std::abs(expanded - direct) <= 1e-8 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("cross-validation: orthogonal case collapses to zero distance") {
    auto E = IntervalUnion::single(0.0, kTwoPi);
    // treat the single interval as the trivial one-part tuple via the dual
    FrequencySet freqs;
    for (int k = -15; k <= 15; ++k) freqs.points.push_back(double(k));
    auto dual = dual_system(E, freqs);
    // formula element in the orthogonal case: kernel-based dual itself
    auto f0 = dual.point_dual(15);  // frequency 0
    CHECK(std::abs(f0.eval(0.0) - 1.0) <= 1e-12);

    // two-interval case: formula vs dual distance is small and finite
    auto s = make_setup(IntervalUnion::from_pairs({{0.0, 2.0}, {4.0, kTwoPi}}), 100, 300, 2);
    const cplx lam = non_anchor_freq(s);
    auto elt = biorth_two(s.tuple, lam, 1);
    const double d = cross_validate(s.E, s.sec, lam, elt, s.dual);
    CHECK(d >= 0.0);
    CHECK(d <= 0.2);  // both routes converge as the section grows; 0.099 at this size
    CHECK_THROWS_AS(cross_validate(s.E, s.sec, cplx(0.1234, 0.0), elt, s.dual), NotFoundError);
}

TEST_CASE("degenerate anchor data is rejected") {
    auto E = IntervalUnion::from_pairs({{0.0, 2.0}, {4.0, kTwoPi}});
    FrequencySet tiny;
    tiny.points = {cplx(0.0), cplx(1.0), cplx(1.0 + 1e-13)};
    CHECK_THROWS_AS(dual_system(E, tiny), IllConditionedError);
}
