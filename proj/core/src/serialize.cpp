#include "mexp/serialize.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string_view>

#include "json.hpp"

namespace mexp {

namespace {

using nlohmann::json;

double parse_number(std::string_view s) {
    double value = 0.0;
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end)
        throw ParseError("bad numeric literal: " + std::string(s));
    return value;
}

std::string_view trimmed(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// coefficient ["*"] "pi" ["/" denominator] in any of the obvious spellings
double parse_pi_expr(std::string_view s) {
    s = trimmed(s);
    double sign = 1.0;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        if (s.front() == '-') sign = -1.0;
        s.remove_prefix(1);
        s = trimmed(s);
    }
    double num = 1.0;
    const auto pi_pos = s.find("pi");
    if (pi_pos == std::string_view::npos) return sign * parse_number(s);
    std::string_view head = trimmed(s.substr(0, pi_pos));
    std::string_view tail = trimmed(s.substr(pi_pos + 2));
    if (!head.empty()) {
        if (head.back() == '*') head = trimmed(head.substr(0, head.size() - 1));
        if (!head.empty()) num = parse_number(head);
    }
    double den = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '/') throw ParseError("bad pi expression");
        den = parse_number(trimmed(tail.substr(1)));
        if (den == 0.0) throw ParseError("division by zero in pi expression");
    }
    return sign * num * kPi / den;
}

double scalar_from(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_pi_expr(j.get<std::string>());
    throw ParseError("scalar must be a number or a pi expression string");
}

cplx cplx_from(const json& j) {
    if (j.is_number()) return cplx{j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return cplx{scalar_from(j[0]), scalar_from(j[1])};
    throw ParseError("complex value must be a number or [re, im]");
}

json cplx_to(cplx z) { return json::array({z.real(), z.imag()}); }

json parse_document(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw ParseError("invalid JSON");
    return j;
}

IntervalUnion spectrum_from(const json& j) {
    if (!j.is_object() || !j.contains("intervals") || !j["intervals"].is_array())
        throw ParseError("spectrum needs an \"intervals\" array");
    std::vector<std::pair<double, double>> raw;
    for (const auto& item : j["intervals"]) {
        if (!item.is_array() || item.size() != 2)
            throw ParseError("each interval must be a pair");
        raw.emplace_back(scalar_from(item[0]), scalar_from(item[1]));
    }
    return IntervalUnion::from_pairs(raw);
}

json spectrum_to(const IntervalUnion& E) {
    json arr = json::array();
    for (const auto& p : E.parts()) arr.push_back(json::array({p.a, p.b}));
    return json{{"intervals", arr}};
}

} // namespace

double parse_scalar_text(const std::string& text) { return parse_pi_expr(text); }

IntervalUnion spectrum_from_json(const std::string& text) {
    return spectrum_from(parse_document(text));
}

std::string spectrum_to_json(const IntervalUnion& E) { return spectrum_to(E).dump(2); }

FrequencySet freqs_from_json(const std::string& text) {
    const json j = parse_document(text);
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
        throw ParseError("frequency set needs a \"points\" array");
    FrequencySet out;
    for (const auto& p : j["points"]) out.points.push_back(cplx_from(p));
    if (j.contains("label")) out.label = j["label"].get<std::string>();
    return out;
}

std::string freqs_to_json(const FrequencySet& freqs) {
    json pts = json::array();
    for (cplx p : freqs.points) pts.push_back(cplx_to(p));
    return json{{"points", pts}, {"label", freqs.label}}.dump(2);
}

GenFunctionSpec genfun_from_json(const std::string& text) {
    const json j = parse_document(text);
    if (!j.is_object() || !j.contains("trunc") || !j.contains("components"))
        throw ParseError("generating function needs \"trunc\" and \"components\"");
    GenFunctionSpec g;
    g.trunc = j["trunc"].get<int>();
    for (const auto& c : j["components"]) {
        GenComponent comp;
        comp.shift = scalar_from(c.at("shift"));
        comp.translate = scalar_from(c.at("translate"));
        for (const auto& z : c.at("zeros")) comp.zeros.push_back(scalar_from(z));
        g.components.push_back(std::move(comp));
    }
    g.validate();
    return g;
}

std::string genfun_to_json(const GenFunctionSpec& g) {
    json comps = json::array();
    for (const auto& c : g.components)
        comps.push_back(json{{"zeros", c.zeros}, {"shift", c.shift}, {"translate", c.translate}});
    return json{{"trunc", g.trunc}, {"components", comps}}.dump();
}

ExpSum expsum_from_json(const std::string& text) {
    const json j = parse_document(text);
    if (!j.is_object() || !j.contains("spectrum"))
        throw ParseError("function needs a \"spectrum\"");
    ExpSum f(spectrum_from(j["spectrum"]));
    if (j.contains("terms"))
        for (const auto& t : j["terms"]) {
            ExpTerm term;
            term.interval_index = t.at("interval").get<int>();
            term.freq = cplx_from(t.at("freq"));
            for (const auto& c : t.at("poly")) term.poly.push_back(cplx_from(c));
            f.add_term(std::move(term));
        }
    if (j.contains("atoms"))
        for (const auto& a : j["atoms"])
            f.add_atom({a.at("interval").get<int>(), scalar_from(a.at("location")),
                        cplx_from(a.at("weight"))});
    return f;
}

std::string expsum_to_json(const ExpSum& f) {
    json terms = json::array();
    for (const auto& t : f.terms()) {
        json poly = json::array();
        for (cplx c : t.poly) poly.push_back(cplx_to(c));
        terms.push_back(json{{"interval", t.interval_index}, {"poly", poly},
                             {"freq", cplx_to(t.freq)}});
    }
    json atoms = json::array();
    for (const auto& a : f.atoms())
        atoms.push_back(json{{"interval", a.interval_index}, {"location", a.location},
                             {"weight", cplx_to(a.weight)}});
    return json{{"spectrum", spectrum_to(f.spectrum())}, {"terms", terms},
                {"atoms", atoms}}.dump();
}

std::string lattice_to_json(const PerturbedLattice& lat) {
    json deltas = json::object();
    json gammas = json::array();
    for (long k = lat.k_min; k <= lat.k_max; ++k) {
        gammas.push_back(lat.gamma(k));
        deltas[std::to_string(k)] = lat.delta(k);
    }
    return json{{"alpha", lat.alpha}, {"M", lat.M}, {"k_min", lat.k_min},
                {"gammas", gammas}, {"deltas", deltas}}.dump();
}

} // namespace mexp
