#include "mexp/biorth.hpp"

#include <algorithm>
#include <cmath>

namespace mexp {

namespace {

std::size_t index_of(const FrequencySet& freqs, cplx lambda) {
    for (std::size_t i = 0; i < freqs.points.size(); ++i)
        if (std::abs(freqs.points[i] - lambda) <= 1e-9) return i;
    throw NotFoundError("frequency not present in the set");
}

std::vector<cplx> probe_grid() {
    std::vector<cplx> zs;
    for (int i = 0; i < 40; ++i)
        zs.push_back(cplx{-5.0 + 10.0 * i / 39.0, (i % 2) ? 0.37 : -0.21});
    return zs;
}

} // namespace

FTuple build_F(const IntervalUnion& E, const FrequencySet& freqs,
               const std::vector<cplx>& anchors, const DualSystem& dual) {
    FTuple t{E, anchors, {}, {}};
    for (cplx a : anchors) {
        std::size_t idx;
        try {
            idx = index_of(freqs, a);
        } catch (const NotFoundError&) {
            throw AnchorError("anchor is not one of the frequencies");
        }
        ExpSum f = dual.point_dual(idx);
        ExpSum F = f.times_linear(a);
        std::vector<ExpSum> per_part;
        for (const auto& p : E.parts())
            per_part.push_back(F.project(IntervalUnion::single(p.a, p.b)));
        t.F.push_back(std::move(F));
        t.proj.push_back(std::move(per_part));
    }
    return t;
}

std::vector<cplx> select_independent(const IntervalUnion& E, const FrequencySet& freqs,
                                     int N, const DualSystem& dual) {
    if (N < 1 || N > 3) throw UnsupportedError("tuple size must be 1, 2 or 3");
    const auto order = nearest_origin_order(freqs);
    const std::size_t pool = std::min<std::size_t>(20, order.size());
    if (pool < std::size_t(N)) throw SizeError("not enough frequencies for a tuple");

    const auto zs = probe_grid();
    // sample each candidate F on the probe grid once
    Eigen::MatrixXcd rows(long(pool), long(zs.size()));
    std::vector<cplx> candidates(pool);
    for (std::size_t i = 0; i < pool; ++i) {
        candidates[i] = freqs.points[order[i]];
        const FTuple one = build_F(E, freqs, {candidates[i]}, dual);
        for (std::size_t j = 0; j < zs.size(); ++j)
            rows(long(i), long(j)) = one.F[0].eval(zs[j]);
        const double n = rows.row(long(i)).norm();
        if (n > 0.0) rows.row(long(i)) /= n;
    }

    double best = -1.0;
    std::vector<std::size_t> best_idx;
    // enumerate tuples of distinct pool indices
    const auto score = [&](const std::vector<std::size_t>& idx) {
        Eigen::MatrixXcd m(long(idx.size()), rows.cols());
        for (std::size_t r = 0; r < idx.size(); ++r) m.row(long(r)) = rows.row(long(idx[r]));
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        return svd.singularValues().minCoeff();
    };
    std::vector<std::size_t> idx(static_cast<std::size_t>(N));
    const std::size_t count = pool;
    if (N == 1) {
        for (std::size_t a = 0; a < count; ++a) {
            idx = {a};
            const double s = score(idx);
            if (s > best) { best = s; best_idx = idx; }
        }
    } else if (N == 2) {
        for (std::size_t a = 0; a < count; ++a)
            for (std::size_t b = a + 1; b < count; ++b) {
                idx = {a, b};
                const double s = score(idx);
                if (s > best) { best = s; best_idx = idx; }
            }
    } else {
        for (std::size_t a = 0; a < count; ++a)
            for (std::size_t b = a + 1; b < count; ++b)
                for (std::size_t c = b + 1; c < count; ++c) {
                    idx = {a, b, c};
                    const double s = score(idx);
                    if (s > best) { best = s; best_idx = idx; }
                }
    }
    if (best < 1e-10)
        throw DegenerateError("no independent tuple found; truncation too small");
    std::vector<cplx> anchors;
    for (std::size_t i : best_idx) anchors.push_back(candidates[i]);
    return anchors;
}

cplx BiorthElement::eval(cplx z) const {
    if (std::abs(z - pole) >= 1e-3)
        return normalization * numerator.eval(z) / (z - pole);
    const ExpSum d1 = numerator.derivative();
    const ExpSum d2 = d1.derivative();
    return normalization * (d1.eval(pole) + 0.5 * (z - pole) * d2.eval(pole));
}

namespace {

BiorthElement finish_element(cplx lambda, ExpSum numerator, double reference_scale) {
    if (numerator.coeff_scale() <= 1e-12 * std::max(1.0, reference_scale))
        throw NullElementError("formula numerator collapsed");
    const cplx slope = numerator.derivative().eval(lambda);
    if (std::abs(slope) <= 1e-14 * std::max(1.0, reference_scale))
        throw NullElementError("formula numerator has no simple zero at the pole");
    return {lambda, std::move(numerator), 1.0 / slope};
}

} // namespace

BiorthElement biorth_two(const FTuple& tuple, cplx lambda, int form) {
    if (tuple.F.size() != 2 || tuple.domain.size() != 2)
        throw SizeError("two-part formula needs a two-anchor tuple on two parts");
    if (form != 1 && form != 2) throw RangeError("form must be 1 or 2");
    const std::size_t j = std::size_t(form - 1);
    const cplx c1 = tuple.proj_eval(0, j, lambda);
    const cplx c2 = tuple.proj_eval(1, j, lambda);
    // part 1: F_1^1(l) F_2 - F_2^1(l) F_1 ; part 2 swaps the roles
    ExpSum numer = (form == 1) ? (c1 * tuple.F[1] + (-c2) * tuple.F[0])
                               : (c2 * tuple.F[0] + (-c1) * tuple.F[1]);
    const double ref = std::max(tuple.F[0].coeff_scale(), tuple.F[1].coeff_scale());
    return finish_element(lambda, std::move(numer), ref);
}

BiorthElement biorth_three(const FTuple& tuple, cplx lambda, int l) {
    if (tuple.F.size() != 3 || tuple.domain.size() != 3)
        throw SizeError("three-part formula needs a three-anchor tuple on three parts");
    if (l < 1 || l > 3) throw RangeError("column index must be 1, 2 or 3");
    Eigen::Matrix3cd P;
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
            P(k, j) = tuple.proj_eval(std::size_t(k), std::size_t(j), lambda);

    ExpSum numer(tuple.domain);
    double ref = 0.0;
    for (int k = 0; k < 3; ++k) {
        // 2x2 minor of P with row k and column l-1 removed
        int r[2], c[2], ri = 0, ci = 0;
        for (int i = 0; i < 3; ++i) {
            if (i != k) r[ri++] = i;
            if (i != l - 1) c[ci++] = i;
        }
        const cplx minor = P(r[0], c[0]) * P(r[1], c[1]) - P(r[0], c[1]) * P(r[1], c[0]);
        const cplx a = (((k + 1) + l) % 2 == 0 ? 1.0 : -1.0) * minor;
        numer += a * tuple.F[std::size_t(k)];
        ref = std::max(ref, tuple.F[std::size_t(k)].coeff_scale());
    }
    return finish_element(lambda, std::move(numer), ref);
}

cplx SDet::eval(cplx z) const {
    const std::size_t n = tuple.F.size();
    if (n == 2)
        return tuple.proj_eval(0, 0, z) * tuple.proj_eval(1, 1, z) -
               tuple.proj_eval(0, 1, z) * tuple.proj_eval(1, 0, z);
    Eigen::Matrix3cd P;
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
            P(k, j) = tuple.proj_eval(std::size_t(k), std::size_t(j), z);
    return P.determinant();
}

SDet s_det(FTuple tuple) {
    if (tuple.F.size() != tuple.domain.size() ||
        (tuple.F.size() != 2 && tuple.F.size() != 3))
        throw SizeError("determinant needs a full 2- or 3-anchor tuple");
    return {std::move(tuple)};
}

double cross_validate(const IntervalUnion& E, const FrequencySet& freqs, cplx lambda,
                      const BiorthElement& elt, const DualSystem& dual) {
    const std::size_t idx = index_of(freqs, lambda);
    const DivisionResult div =
        divide_out_zero(elt.numerator, lambda, /*tol=*/1e-6);
    const ExpSum& u = div.quotient;
    const ExpSum v = dual.point_dual(idx);
    const double nu = norm(u), nv = norm(v);
    if (nu <= 0.0 || nv <= 0.0) throw NullElementError("degenerate element in comparison");
    const double cosine = std::min(1.0, std::abs(inner_product(u, v)) / (nu * nv));
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * cosine));
}

} // namespace mexp
