#include "mexp/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mexp {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx poly_eval(const std::vector<cplx>& p, double t) {
    cplx acc = 0.0;
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * t + p[k];
    return acc;
}

std::vector<cplx> poly_derivative(const std::vector<cplx>& p) {
    if (p.size() <= 1) return {cplx{0.0}};
    std::vector<cplx> d(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = double(k) * p[k];
    return d;
}

std::vector<cplx> poly_antiderivative(const std::vector<cplx>& p) {
    std::vector<cplx> q(p.size() + 1, cplx{0.0});
    for (std::size_t k = 0; k < p.size(); ++k) q[k + 1] = p[k] / double(k + 1);
    return q;
}

void poly_trim(std::vector<cplx>& p) {
    while (p.size() > 1 && std::abs(p.back()) == 0.0) p.pop_back();
}

// Antiderivative of p(t) e^{i theta t} for theta away from 0:
// Q(t) e^{i theta t} with Q = sum_k (-1)^k p^{(k)} / (i theta)^{k+1}.
std::vector<cplx> exp_antiderivative(const std::vector<cplx>& p, cplx theta) {
    std::vector<cplx> q(p.size(), cplx{0.0});
    std::vector<cplx> deriv = p;
    const cplx it = kI * theta;
    cplx denom = it;
    double sign = 1.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        for (std::size_t m = 0; m < deriv.size(); ++m)
            q[m] += sign * deriv[m] / denom;
        deriv = poly_derivative(deriv);
        denom *= it;
        sign = -sign;
        if (deriv.size() == 1 && deriv[0] == cplx{0.0}) break;
    }
    return q;
}

} // namespace

cplx integrate_poly_exp(const std::vector<cplx>& poly, cplx theta, double a, double b) {
    const double span = std::max({1.0, std::abs(a), std::abs(b)});
    if (std::abs(theta) * span < 0.5) {
        // Series in theta: sum_m (i theta)^m / m! * int t^m p(t) dt.
        cplx acc = 0.0;
        cplx factor = 1.0;  // (i theta)^m / m!
        // Running powers of a, b starting at exponent 1.
        double pa = a, pb = b;
        std::vector<double> powa, powb;
        for (int m = 0; m < 64; ++m) {
            powa.push_back(pa);
            powb.push_back(pb);
            pa *= a;
            pb *= b;
        }
        double ref = 0.0;
        for (int m = 0; m < 60; ++m) {
            cplx moment = 0.0;
            for (std::size_t k = 0; k < poly.size(); ++k) {
                const int e = m + int(k);
                moment += poly[k] * (powb[e] - powa[e]) / double(e + 1);
            }
            const cplx term = factor * moment;
            acc += term;
            ref = std::max(ref, std::abs(acc));
            if (std::abs(term) < 1e-18 * (ref + 1e-300) && m > 2) break;
            factor *= kI * theta / double(m + 1);
        }
        return acc;
    }
    const std::vector<cplx> q = exp_antiderivative(poly, theta);
    return poly_eval(q, b) * std::exp(kI * theta * b) -
           poly_eval(q, a) * std::exp(kI * theta * a);
}

ExpSum::ExpSum(IntervalUnion spectrum) : spectrum_(std::move(spectrum)) {
    if (spectrum_.empty()) throw EmptyError("ExpSum needs a nonempty spectrum");
}

ExpSum ExpSum::exponential(const IntervalUnion& E, cplx omega, cplx amp) {
    ExpSum f(E);
    for (std::size_t j = 0; j < E.size(); ++j)
        f.add_term({int(j), {amp}, omega});
    return f;
}

void ExpSum::add_term(ExpTerm term) {
    if (term.interval_index < 0 || std::size_t(term.interval_index) >= spectrum_.size())
        throw RangeError("term interval index out of range");
    poly_trim(term.poly);
    if (term.poly.empty() || (term.poly.size() == 1 && term.poly[0] == cplx{0.0}))
        return;  // identically zero density
    if (int(term.poly.size()) - 1 > kMaxPolyDegree)
        throw DegreeCapError("polynomial degree cap exceeded");
    terms_.push_back(std::move(term));
}

void ExpSum::add_atom(ExpAtom atom) {
    if (atom.interval_index < 0 || std::size_t(atom.interval_index) >= spectrum_.size())
        throw RangeError("atom interval index out of range");
    if (atom.weight == cplx{0.0}) return;
    atoms_.push_back(atom);
}

cplx ExpSum::eval(cplx z) const {
    cplx acc = 0.0;
    const auto& parts = spectrum_.parts();
    for (const auto& t : terms_) {
        const Interval& p = parts[std::size_t(t.interval_index)];
        acc += integrate_poly_exp(t.poly, t.freq + z, p.a, p.b);
    }
    for (const auto& a : atoms_)
        acc += a.weight * std::exp(kI * a.location * z);
    return acc;
}

ExpSum ExpSum::derivative() const {
    ExpSum d(spectrum_);
    for (const auto& t : terms_) {
        std::vector<cplx> p(t.poly.size() + 1, cplx{0.0});
        for (std::size_t k = 0; k < t.poly.size(); ++k) p[k + 1] = kI * t.poly[k];
        d.add_term({t.interval_index, std::move(p), t.freq});
    }
    for (const auto& a : atoms_)
        d.add_atom({a.interval_index, a.location, kI * a.location * a.weight});
    return d;
}

ExpSum ExpSum::project(const IntervalUnion& onto) const {
    const auto& mine = spectrum_.parts();
    std::vector<bool> keep(mine.size(), false);
    for (const auto& q : onto.parts()) {
        bool matched = false;
        for (std::size_t j = 0; j < mine.size(); ++j) {
            if (std::abs(mine[j].a - q.a) <= 1e-9 && std::abs(mine[j].b - q.b) <= 1e-9) {
                keep[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched)
            throw NotSubUnionError("projection target is not a union of whole parts");
    }
    ExpSum out(spectrum_);
    for (const auto& t : terms_)
        if (keep[std::size_t(t.interval_index)]) out.terms_.push_back(t);
    for (const auto& a : atoms_)
        if (keep[std::size_t(a.interval_index)]) out.atoms_.push_back(a);
    return out;
}

ExpSum ExpSum::times_linear(cplx lambda) const {
    if (has_atoms())
        throw DomainError("times_linear: input already carries atoms");
    ExpSum out(spectrum_);
    const auto& parts = spectrum_.parts();
    // endpoint atoms accumulated per (part, endpoint) so they stay merged
    std::map<std::pair<int, int>, cplx> boundary;
    for (const auto& t : terms_) {
        const Interval& p = parts[std::size_t(t.interval_index)];
        // z * transform integrates by parts: i (p' + i omega p) inside,
        // -i p e^{i omega t} at the boundary.
        std::vector<cplx> inner = poly_derivative(t.poly);
        for (auto& c : inner) c *= kI;
        inner.resize(std::max(inner.size(), t.poly.size()), cplx{0.0});
        for (std::size_t k = 0; k < t.poly.size(); ++k)
            inner[k] -= (t.freq + lambda) * t.poly[k];
        out.add_term({t.interval_index, std::move(inner), t.freq});
        boundary[{t.interval_index, 1}] += -kI * poly_eval(t.poly, p.b) * std::exp(kI * t.freq * p.b);
        boundary[{t.interval_index, 0}] += kI * poly_eval(t.poly, p.a) * std::exp(kI * t.freq * p.a);
    }
    for (const auto& [key, w] : boundary) {
        const Interval& p = parts[std::size_t(key.first)];
        out.add_atom({key.first, key.second ? p.b : p.a, w});
    }
    return out;
}

double ExpSum::coeff_scale() const {
    const double B = std::max(1.0, std::max(std::abs(spectrum_.lo()), std::abs(spectrum_.hi())));
    double s = 0.0;
    for (const auto& t : terms_) {
        double acc = 0.0, pw = 1.0;
        for (const auto& c : t.poly) {
            acc += std::abs(c) * pw;
            pw *= B;
        }
        s = std::max(s, acc);
    }
    for (const auto& a : atoms_) s = std::max(s, std::abs(a.weight));
    return s;
}

ExpSum& ExpSum::operator+=(const ExpSum& other) {
    if (!spectrum_.approx_equal(other.spectrum_))
        throw SpectrumMismatchError("ExpSum addition needs matching spectra");
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    atoms_.insert(atoms_.end(), other.atoms_.begin(), other.atoms_.end());
    return *this;
}

ExpSum& ExpSum::operator*=(cplx c) {
    for (auto& t : terms_)
        for (auto& a : t.poly) a *= c;
    for (auto& a : atoms_) a.weight *= c;
    return *this;
}

cplx inner_product(const ExpSum& f, const ExpSum& g) {
    if (!f.spectrum().approx_equal(g.spectrum()))
        throw SpectrumMismatchError("inner_product needs matching spectra");
    if (f.has_atoms() || g.has_atoms())
        throw DomainError("inner_product: point masses are not square-integrable");
    const auto& parts = f.spectrum().parts();
    cplx acc = 0.0;
    for (const auto& tf : f.terms()) {
        for (const auto& tg : g.terms()) {
            if (tf.interval_index != tg.interval_index) continue;
            // p_f(t) conj(p_g(t)) e^{i (w_f - conj(w_g)) t} on the shared part
            std::vector<cplx> prod(tf.poly.size() + tg.poly.size() - 1, cplx{0.0});
            for (std::size_t i = 0; i < tf.poly.size(); ++i)
                for (std::size_t k = 0; k < tg.poly.size(); ++k)
                    prod[i + k] += tf.poly[i] * std::conj(tg.poly[k]);
            const Interval& p = parts[std::size_t(tf.interval_index)];
            acc += integrate_poly_exp(prod, tf.freq - std::conj(tg.freq), p.a, p.b);
        }
    }
    return acc;
}

double norm(const ExpSum& f) {
    return std::sqrt(std::max(0.0, inner_product(f, f).real()));
}

ExpSum kernel(const IntervalUnion& E, cplx lambda) {
    return ExpSum::exponential(E, -std::conj(lambda), 1.0 / kTwoPi);
}

DivisionResult divide_out_zero(const ExpSum& f, cplx lambda, double tol) {
    const double scale = std::max(1.0, f.coeff_scale());
    if (std::abs(f.eval(lambda)) > tol * scale)
        throw NotAZeroError("divide_out_zero: lambda is not a zero of f");

    const auto& parts = f.spectrum().parts();
    ExpSum quotient(f.spectrum());
    std::vector<cplx> cs;
    cplx carried = 0.0;  // value of the primitive on the gap before part j

    for (std::size_t j = 0; j < parts.size(); ++j) {
        const Interval& p = parts[j];
        cplx base = carried;
        cplx at_right = 0.0;
        for (const auto& a : f.atoms()) {
            if (std::size_t(a.interval_index) != j) continue;
            if (std::abs(a.location - p.a) <= 1e-9)
                base += a.weight * std::exp(kI * lambda * a.location);
            else if (std::abs(a.location - p.b) <= 1e-9)
                at_right += a.weight * std::exp(kI * lambda * a.location);
            else
                throw DomainError("divide_out_zero: atom away from part endpoints");
        }

        cplx const_j = base;  // constant part of the primitive on this interval
        cplx end = base;      // primitive value at the right endpoint
        for (const auto& t : f.terms()) {
            if (std::size_t(t.interval_index) != j) continue;
            const cplx theta = t.freq + lambda;
            if (std::abs(theta) <= 1e-12) {
                // frequency-zero primitive: a pure polynomial
                std::vector<cplx> q = poly_antiderivative(t.poly);
                const_j -= poly_eval(q, p.a);
                end += poly_eval(q, p.b) - poly_eval(q, p.a);
                for (auto& c : q) c *= -kI;
                quotient.add_term({int(j), std::move(q), -lambda});
            } else {
                std::vector<cplx> q = exp_antiderivative(t.poly, theta);
                const cplx va = poly_eval(q, p.a) * std::exp(kI * theta * p.a);
                const cplx vb = poly_eval(q, p.b) * std::exp(kI * theta * p.b);
                const_j -= va;
                end += vb - va;
                for (auto& c : q) c *= -kI;
                quotient.add_term({int(j), std::move(q), t.freq});
            }
        }
        if (const_j != cplx{0.0})
            quotient.add_term({int(j), {-kI * const_j}, -lambda});

        carried = end + at_right;
        if (j + 1 < parts.size())
            cs.push_back(-kTwoPi * kI * carried);
    }
    return {std::move(quotient), std::move(cs)};
}

bool divisibility_check(const ExpSum& f, cplx lambda, double tol) {
    const double scale = std::max(1.0, f.coeff_scale());
    if (std::abs(f.eval(lambda)) > std::max(tol, 1e-9) * scale)
        throw NotAZeroError("divisibility_check: lambda is not a zero of f");
    const auto& parts = f.spectrum().parts();
    for (const auto& p : parts) {
        const ExpSum fj = f.project(IntervalUnion::single(p.a, p.b));
        if (std::abs(fj.eval(lambda)) > tol * scale) return false;
    }
    return true;
}

cplx eval_quotient(const ExpSum& numer, cplx pole, cplx z) {
    if (std::abs(z - pole) >= 1e-3)
        return numer.eval(z) / (z - pole);
    const ExpSum d1 = numer.derivative();
    const ExpSum d2 = d1.derivative();
    return d1.eval(pole) + 0.5 * (z - pole) * d2.eval(pole);
}

} // namespace mexp
