#include "mexp/gram.hpp"

#include <algorithm>
#include <cmath>

namespace mexp {

cplx exp_pair(const IntervalUnion& E, cplx mu, cplx nu) {
    static const std::vector<cplx> one{cplx{1.0}};
    cplx acc = 0.0;
    for (const auto& p : E.parts())
        acc += integrate_poly_exp(one, mu - std::conj(nu), p.a, p.b);
    return acc;
}

GramMatrix gram_matrix(const IntervalUnion& E, const FrequencySet& freqs) {
    const std::size_t n = freqs.points.size();
    if (n > 5000) throw SizeError("frequency set too large for a dense Gram matrix");
    GramMatrix g{E, freqs, Eigen::MatrixXcd(long(n), long(n))};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const cplx v = exp_pair(E, freqs.points[j], freqs.points[i]);
            g.entries(long(i), long(j)) = v;
            g.entries(long(j), long(i)) = std::conj(v);
        }
    }
    return g;
}

std::vector<std::size_t> nearest_origin_order(const FrequencySet& freqs) {
    std::vector<std::size_t> order(freqs.points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double da = std::abs(freqs.points[a]), db = std::abs(freqs.points[b]);
        if (da != db) return da < db;
        return freqs.points[a].real() < freqs.points[b].real();
    });
    return order;
}

namespace {

FrequencySet centered_window(const FrequencySet& freqs, std::size_t count) {
    const auto order = nearest_origin_order(freqs);
    FrequencySet out;
    out.label = freqs.label;
    for (std::size_t i = 0; i < count; ++i) out.points.push_back(freqs.points[order[i]]);
    return out;
}

} // namespace

std::vector<RieszBounds> riesz_bounds(const IntervalUnion& E, const FrequencySet& freqs,
                                      const std::vector<int>& windows, bool normalized) {
    std::vector<RieszBounds> out;
    for (int w : windows) {
        if (w <= 0 || std::size_t(w) > freqs.points.size())
            throw SizeError("window exceeds the frequency set");
        const FrequencySet sub = centered_window(freqs, std::size_t(w));
        GramMatrix g = gram_matrix(E, sub);
        if (normalized) {
            Eigen::VectorXd d = g.entries.diagonal().real().cwiseSqrt();
            for (long i = 0; i < g.entries.rows(); ++i)
                for (long j = 0; j < g.entries.cols(); ++j)
                    g.entries(i, j) /= d(i) * d(j);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g.entries,
                                                           Eigen::EigenvaluesOnly);
        out.push_back({w, es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()});
    }
    return out;
}

ExpSum DualSystem::element(std::size_t n) const {
    ExpSum g(domain);
    for (std::size_t m = 0; m < freqs.points.size(); ++m)
        g += ExpSum::exponential(domain, freqs.points[m], coeff(long(m), long(n)));
    return g;
}

ExpSum DualSystem::point_dual(std::size_t n) const {
    ExpSum f(domain);
    for (std::size_t m = 0; m < freqs.points.size(); ++m)
        f += ExpSum::exponential(domain, -std::conj(freqs.points[m]),
                                 std::conj(coeff(long(m), long(n))));
    return f;
}

namespace {

Eigen::MatrixXcd inverted(const Eigen::MatrixXcd& gram) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (!(lo > 1e-10 * hi)) {
        throw IllConditionedError("Gram matrix too ill-conditioned to invert",
                                  hi > 0.0 ? lo / hi : 0.0);
    }
    return es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() *
           es.eigenvectors().adjoint();
}

} // namespace

DualSystem dual_system(const IntervalUnion& E, const FrequencySet& freqs) {
    const GramMatrix g = gram_matrix(E, freqs);
    return {E, freqs, inverted(g.entries)};
}

std::vector<ResidualPair> completeness_residual(const IntervalUnion& E,
                                                const FrequencySet& freqs,
                                                const ExpSum& f,
                                                const std::vector<int>& truncations) {
    const double fnorm = norm(f);
    if (fnorm <= 0.0) throw DomainError("cannot measure residuals of the zero function");
    const auto order = nearest_origin_order(freqs);

    std::vector<ResidualPair> out;
    for (int T : truncations) {
        if (T <= 0 || std::size_t(T) > freqs.points.size())
            throw SizeError("truncation exceeds the frequency set");
        FrequencySet sub;
        for (int i = 0; i < T; ++i) sub.points.push_back(freqs.points[order[std::size_t(i)]]);

        const GramMatrix g = gram_matrix(E, sub);
        Eigen::VectorXcd b = Eigen::VectorXcd::Zero(T);
        for (int k = 0; k < T; ++k)
            b(k) = inner_product(f, ExpSum::exponential(E, sub.points[std::size_t(k)]));

        // route 1: normal equations on the Gram section
        const Eigen::MatrixXcd inv = inverted(g.entries);
        const Eigen::VectorXcd c = inv * b;
        const double proj_sq = (b.adjoint() * c).real()(0);
        const double res_exp =
            std::sqrt(std::max(0.0, fnorm * fnorm - proj_sq)) / fnorm;

        // route 2: through the dual coefficients; d_n = <f, g_n>, then the
        // projection sum_n d_n e_n is measured against f directly
        const Eigen::VectorXcd d = inv.adjoint() * b;
        const double cross = (b.adjoint() * d).real()(0);
        const double proj_norm_sq = (d.adjoint() * g.entries * d).real()(0);
        const double res_dual =
            std::sqrt(std::max(0.0, fnorm * fnorm - 2.0 * cross + proj_norm_sq)) / fnorm;

        out.push_back({T, res_exp, res_dual});
    }
    return out;
}

} // namespace mexp
