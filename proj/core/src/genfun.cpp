#include "mexp/genfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace mexp {

namespace {

constexpr cplx kI{0.0, 1.0};

// Sum_{k > T} k^{-s} for s = 2, 4, 6 (Euler-Maclaurin, accurate to well below
// 1e-15 for T >= 1000).
double zeta_tail(int s, double T) {
    const double t1 = 1.0 / T;
    switch (s) {
        case 2: return t1 - t1 * t1 / 2.0 + std::pow(t1, 3) / 6.0 - std::pow(t1, 5) / 30.0;
        case 4: return std::pow(t1, 3) / 3.0 - std::pow(t1, 4) / 2.0 + std::pow(t1, 5) / 3.0;
        case 6: return std::pow(t1, 5) / 5.0 - std::pow(t1, 6) / 2.0 + std::pow(t1, 7) / 2.0;
        default: return std::pow(t1, 7) / 7.0 - std::pow(t1, 8) / 2.0 + 2.0 * std::pow(t1, 9) / 3.0;
    }
}

// log of the product over the untruncated indices |k| > trunc, modeled as the
// spacing-d integer extension: sum_{k>T} log(1 - w^2/(d k)^2).
cplx tail_log(const GenComponent& c, int trunc, cplx w) {
    const double d = (c.zeros.back() - c.zeros.front()) / (2.0 * trunc);
    const cplx u = (w / d) * (w / d);
    const double T = double(trunc);
    return -u * zeta_tail(2, T) - u * u * (zeta_tail(4, T) / 2.0) -
           u * u * u * (zeta_tail(6, T) / 3.0) - u * u * u * u * (zeta_tail(8, T) / 4.0);
}

// Product of the component's factors at w = z - translate, skipping the
// single index `skip` (or none when skip < -trunc). Returns mantissa * e^off;
// a zero factor is reported via the `vanished` flag.
struct LogProduct {
    cplx mantissa{1.0, 0.0};
    cplx log_offset{0.0, 0.0};
    bool vanished = false;

    void mul(cplx f) {
        if (f == cplx{0.0}) {
            vanished = true;
            return;
        }
        mantissa *= f;
        const double m = std::abs(mantissa);
        if (m > 1e150 || m < 1e-150) {
            const double l = std::log(m);
            log_offset += l;
            mantissa /= std::exp(l);
        }
    }
};

void accumulate_component(LogProduct& prod, const GenComponent& c, int trunc,
                          cplx z, long skip) {
    const cplx w = z - c.translate;
    prod.log_offset += kI * c.shift * w + tail_log(c, trunc, w);
    if (skip != 0) prod.mul(w);
    for (long k = -trunc; k <= trunc; ++k) {
        if (k == 0 || k == skip) continue;
        const double gamma = c.zeros[std::size_t(k + trunc)];
        prod.mul(1.0 - w / gamma);
    }
}

} // namespace

std::vector<double> GenFunctionSpec::all_zeros() const {
    std::vector<double> out;
    for (const auto& c : components)
        for (double g : c.zeros) out.push_back(g + c.translate);
    std::sort(out.begin(), out.end());
    return out;
}

void GenFunctionSpec::validate() const {
    if (trunc < 1000) throw RangeError("generating function truncation below 1000");
    if (components.empty()) throw EmptyError("generating function has no components");
    for (const auto& c : components) {
        if (c.zeros.size() != std::size_t(2 * trunc + 1))
            throw SizeError("component zero count does not match truncation");
        if (c.zeros[std::size_t(trunc)] != 0.0)
            throw DomainError("component center zero must be 0");
        for (std::size_t i = 1; i < c.zeros.size(); ++i)
            if (c.zeros[i - 1] >= c.zeros[i])
                throw DomainError("component zeros must be strictly increasing");
    }
}

cplx vp_eval(const GenFunctionSpec& g, cplx z) {
    g.validate();
    LogProduct prod;
    for (const auto& c : g.components)
        accumulate_component(prod, c, g.trunc, z, std::numeric_limits<long>::min());
    if (prod.vanished) return 0.0;
    return prod.mantissa * std::exp(prod.log_offset);
}

double vp_log_abs(const GenFunctionSpec& g, cplx z) {
    g.validate();
    LogProduct prod;
    for (const auto& c : g.components)
        accumulate_component(prod, c, g.trunc, z, std::numeric_limits<long>::min());
    if (prod.vanished) throw DomainError("log |G| undefined at a zero");
    return prod.log_offset.real() + std::log(std::abs(prod.mantissa));
}

cplx derivative_at_zeros(const GenFunctionSpec& g, double gamma) {
    g.validate();
    // locate the vanishing factor(s)
    int owner = -1;
    long owner_index = 0;
    int hits = 0;
    for (std::size_t ci = 0; ci < g.components.size(); ++ci) {
        const auto& c = g.components[ci];
        const double w = gamma - c.translate;
        auto it = std::lower_bound(c.zeros.begin(), c.zeros.end(), w - 1e-9);
        if (it != c.zeros.end() && std::abs(*it - w) <= 1e-9) {
            ++hits;
            owner = int(ci);
            owner_index = long(it - c.zeros.begin()) - g.trunc;
        }
    }
    if (hits == 0) throw NotAZeroError("derivative requested away from the zero set");
    if (hits > 1) return 0.0;  // multiple zero: derivative vanishes

    LogProduct prod;
    for (std::size_t ci = 0; ci < g.components.size(); ++ci)
        accumulate_component(prod, g.components[ci], g.trunc, gamma,
                             int(ci) == owner ? owner_index : std::numeric_limits<long>::min());
    if (prod.vanished) return 0.0;
    // chain rule: d/dz of the removed factor
    const cplx factor_slope = owner_index == 0
        ? cplx{1.0}
        : cplx{-1.0 / g.components[std::size_t(owner)].zeros[std::size_t(owner_index + g.trunc)]};
    return factor_slope * prod.mantissa * std::exp(prod.log_offset);
}

double dist_to_zeros(const GenFunctionSpec& g, cplx z) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : g.components) {
        const double x = z.real() - c.translate;
        auto it = std::lower_bound(c.zeros.begin(), c.zeros.end(), x);
        if (it != c.zeros.end()) best = std::min(best, std::abs(cplx{x - *it, z.imag()}));
        if (it != c.zeros.begin()) best = std::min(best, std::abs(cplx{x - *(it - 1), z.imag()}));
    }
    return best;
}

StripReport strip_comparability(const GenFunctionSpec& g, int samples, std::uint32_t seed) {
    g.validate();
    if (samples < 1000) throw RangeError("strip check needs at least 1000 samples");
    double spacing = 0.0;
    for (const auto& c : g.components)
        spacing = std::max(spacing, (c.zeros.back() - c.zeros.front()) / (2.0 * g.trunc));
    // Stay well inside the truncation radius: the tail model loses accuracy
    // once |w| is a sizeable fraction of trunc * spacing.
    const double r_win = 0.2 * g.trunc * spacing;

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> re(-r_win, r_win);
    std::uniform_real_distribution<double> im(-1.0, 1.0);

    StripReport rep;
    rep.c1 = std::numeric_limits<double>::infinity();
    rep.samples.reserve(std::size_t(samples));
    int produced = 0;
    while (produced < samples) {
        const cplx z{re(rng), im(rng)};
        const double d = dist_to_zeros(g, z);
        if (d < 1e-6) continue;
        const cplx v = vp_eval(g, z);
        const double ratio = std::abs(v) / d;
        rep.c1 = std::min(rep.c1, ratio);
        rep.c2 = std::max(rep.c2, ratio);
        rep.samples.push_back({z, v, d, ratio});
        ++produced;
    }
    return rep;
}

std::pair<double, double> exp_type_profile(const GenFunctionSpec& g, double y_max) {
    if (y_max < 20.0) throw RangeError("type profile needs y_max >= 20");
    return {vp_log_abs(g, cplx{0.0, y_max}) / y_max,
            vp_log_abs(g, cplx{0.0, -y_max}) / y_max};
}

} // namespace mexp
