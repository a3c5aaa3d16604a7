// Command-line front end: spectrum inspection, basis construction, generating
// function evaluation/diagnostics, Gram bounds, dual systems, formula
// elements, and the combined verification run.
//
// Exit codes: 0 success, 2 parse/config error, 3 unsupported input,
// 4 invariant or tolerance failure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mexp/biorth.hpp"
#include "mexp/genfun.hpp"
#include "mexp/gram.hpp"
#include "mexp/lattice.hpp"
#include "mexp/serialize.hpp"

using namespace mexp;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "1.0.0";

struct RunConfig {
    std::string command;
    std::string spectrum_path;
    std::string freqs_path;
    std::string genfun_path;
    int trunc = 400;
    int seed = 12345;
    std::string out_dir = ".";
    std::map<std::string, double> tolerances = {
        {"biorth", 1e-8}, {"vanish", 1e-6}, {"residual", 0.1}, {"agree", 1e-8}};
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path.string());
    out << text;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_manifest(const RunConfig& cfg, const std::vector<std::string>& outputs) {
    json m;
    m["command"] = cfg.command;
    m["version"] = kVersion;
    if (!cfg.spectrum_path.empty()) m["spectrum"] = cfg.spectrum_path;
    if (!cfg.freqs_path.empty()) m["freqs"] = cfg.freqs_path;
    if (!cfg.genfun_path.empty()) m["genfun"] = cfg.genfun_path;
    m["trunc"] = cfg.trunc;
    m["seed"] = cfg.seed;
    for (const auto& [k, v] : cfg.tolerances) m["tolerances"][k] = v;
    m["outputs"] = outputs;
    write_file(fs::path(cfg.out_dir) / "manifest.json", m.dump(2) + "\n");
}

IntervalUnion load_spectrum(const RunConfig& cfg) {
    if (cfg.spectrum_path.empty()) throw ParseError("--spectrum is required");
    return spectrum_from_json(read_file(cfg.spectrum_path));
}

FrequencySet load_freqs(const RunConfig& cfg) {
    if (cfg.freqs_path.empty()) throw ParseError("--freqs is required");
    return freqs_from_json(read_file(cfg.freqs_path));
}

// Spectra are handled internally on [0, 2pi]; inputs are translated so the
// leftmost endpoint is 0. Wider inputs are out of scope.
IntervalUnion normalized(const IntervalUnion& E) {
    auto T = E.translated(-E.lo());
    if (T.hi() > kTwoPi + 1e-9)
        throw UnsupportedError("spectrum wider than 2*pi is not supported");
    return T;
}

FrequencySet truncated_section(const FrequencySet& freqs, int T) {
    auto order = nearest_origin_order(freqs);
    FrequencySet sec;
    const int n = std::min<int>(T, int(freqs.points.size()));
    for (int i = 0; i < n; ++i) sec.points.push_back(freqs.points[order[std::size_t(i)]]);
    std::sort(sec.points.begin(), sec.points.end(),
              [](cplx a, cplx b) { return a.real() < b.real(); });
    return sec;
}

int cmd_spectrum(const RunConfig& cfg) {
    auto E = load_spectrum(cfg);
    std::printf("parts: %zu\n", E.size());
    std::printf("measure: %s\n", fmt(E.measure()).c_str());
    if (E.size() >= 2) {
        for (const auto& g : E.gaps())
            std::printf("gap: [%s, %s]\n", fmt(g.a).c_str(), fmt(g.b).c_str());
    } else {
        std::printf("gaps: none\n");
    }
    auto glued = E.translated(-E.lo()).glue(kTwoPi);
    std::printf("glued: [%s, %s]\n", fmt(glued.lo()).c_str(), fmt(glued.hi()).c_str());
    if (E.size() >= 2) {
        const auto& domain = (E.lo() >= 0.0 && E.hi() <= kTwoPi + 1e-9) ? E : normalized(E);
        std::printf("min_reducing_N: %d\n", min_reducing_N(domain));
    }
    return 0;
}

int cmd_basis(const RunConfig& cfg) {
    auto E = normalized(load_spectrum(cfg));
    auto basis = multiband_basis(E, cfg.trunc);
    const fs::path out(cfg.out_dir);
    fs::create_directories(out);
    write_file(out / "gamma.json", freqs_to_json(basis.freqs) + "\n");
    write_file(out / "genfun.json", genfun_to_json(basis.genfun) + "\n");

    std::ostringstream csv;
    csv << "radius,disk_density_per_unit_length,uniform_density_per_unit_length,"
           "target_measure_over_2pi\n";
    const double target = E.measure() / kTwoPi;
    for (double R : {50.0, 100.0, 200.0, 300.0, 500.0}) {
        if (R > std::abs(basis.freqs.points.back().real())) break;
        csv << fmt(R) << ',' << fmt(density_estimate(basis.freqs, R, DensityMode::Disk)) << ','
            << fmt(density_estimate(basis.freqs, R, DensityMode::Uniform)) << ',' << fmt(target)
            << '\n';
    }
    write_file(out / "density.csv", csv.str());
    write_manifest(cfg, {"gamma.json", "genfun.json", "density.csv"});
    std::printf("frequencies: %zu\n", basis.freqs.points.size());
    return 0;
}

int cmd_genfun_eval(const RunConfig& cfg) {
    auto g = genfun_from_json(read_file(cfg.genfun_path));
    const fs::path out(cfg.out_dir);
    fs::create_directories(out);
    std::ostringstream csv;
    csv << "re_z,im_z,re_value,im_value,abs_value,dist_to_zeros\n";
    const double R = std::min(100.0, 0.5 * g.trunc);
    for (int i = 0; i <= 400; ++i) {
        const cplx z(-R + 2.0 * R * i / 400.0, 0.25);
        const cplx v = vp_eval(g, z);
        csv << fmt(z.real()) << ',' << fmt(z.imag()) << ',' << fmt(v.real()) << ','
            << fmt(v.imag()) << ',' << fmt(std::abs(v)) << ',' << fmt(dist_to_zeros(g, z))
            << '\n';
    }
    write_file(out / "genfun_eval.csv", csv.str());
    write_manifest(cfg, {"genfun_eval.csv"});
    return 0;
}

int cmd_genfun_check(const RunConfig& cfg) {
    auto g = genfun_from_json(read_file(cfg.genfun_path));
    const fs::path out(cfg.out_dir);
    fs::create_directories(out);
    auto rep = strip_comparability(g, 2000, std::uint32_t(cfg.seed));
    auto prof = exp_type_profile(g, 100.0);
    std::ostringstream csv;
    csv << "quantity,value\n";
    csv << "strip_ratio_min," << fmt(rep.c1) << '\n';
    csv << "strip_ratio_max," << fmt(rep.c2) << '\n';
    csv << "type_slope_up_per_unit," << fmt(prof.first) << '\n';
    csv << "type_slope_down_per_unit," << fmt(prof.second) << '\n';
    write_file(out / "genfun_check.csv", csv.str());
    write_manifest(cfg, {"genfun_check.csv"});
    std::printf("strip ratio in [%s, %s]\n", fmt(rep.c1).c_str(), fmt(rep.c2).c_str());
    if (!(rep.c1 > 0.0)) {
        std::fprintf(stderr, "invariant failed: strip ratio lower bound is not positive\n");
        return 4;
    }
    return 0;
}

void write_bounds_csv(const fs::path& path, const IntervalUnion& E, const FrequencySet& freqs) {
    std::vector<int> windows;
    for (int w = 50; w <= 200; w += 25)
        if (w <= int(freqs.points.size())) windows.push_back(w);
    if (windows.empty()) windows.push_back(int(freqs.points.size()));
    auto bounds = riesz_bounds(E, freqs, windows);
    std::ostringstream csv;
    csv << "window_size,smallest_eigenvalue,largest_eigenvalue\n";
    for (const auto& b : bounds)
        csv << b.window << ',' << fmt(b.A) << ',' << fmt(b.B) << '\n';
    write_file(path, csv.str());
}

int cmd_gram_bounds(const RunConfig& cfg) {
    auto E = load_spectrum(cfg);
    auto freqs = load_freqs(cfg);
    const fs::path out(cfg.out_dir);
    fs::create_directories(out);
    write_bounds_csv(out / "bounds.csv", E, freqs);
    write_manifest(cfg, {"bounds.csv"});
    return 0;
}

int cmd_dual(const RunConfig& cfg) {
    auto E = load_spectrum(cfg);
    auto sec = truncated_section(load_freqs(cfg), cfg.trunc);
    auto dual = dual_system(E, sec);
    const fs::path out(cfg.out_dir);
    fs::create_directories(out);
    std::ostringstream csv;
    csv << "index,re_frequency,im_frequency,max_biorthogonality_defect\n";
    double worst = 0.0;
    for (std::size_t n = 0; n < sec.points.size(); ++n) {
        auto fn = dual.point_dual(n);
        double defect = 0.0;
        for (std::size_t m = 0; m < sec.points.size(); ++m) {
            const cplx want = (m == n) ? cplx(1.0) : cplx(0.0);
            defect = std::max(defect, std::abs(fn.eval(sec.points[m]) - want));
        }
        worst = std::max(worst, defect);
        csv << n << ',' << fmt(sec.points[n].real()) << ',' << fmt(sec.points[n].imag()) << ','
            << fmt(defect) << '\n';
    }
    write_file(out / "dual_defect.csv", csv.str());
    write_manifest(cfg, {"dual_defect.csv"});
    std::printf("max biorthogonality defect: %s\n", fmt(worst).c_str());
    if (worst > cfg.tolerances.at("biorth")) {
        std::fprintf(stderr, "invariant failed: biorthogonality defect %s exceeds %s\n",
                     fmt(worst).c_str(), fmt(cfg.tolerances.at("biorth")).c_str());
        return 4;
    }
    return 0;
}

int cmd_biorth(const RunConfig& cfg) {
    auto E = load_spectrum(cfg);
    if (E.size() < 2 || E.size() > 3)
        throw UnsupportedError("formula elements require a 2- or 3-part spectrum");
    auto sec = truncated_section(load_freqs(cfg), cfg.trunc);
    auto dual = dual_system(E, sec);
    auto anchors = select_independent(E, sec, int(E.size()), dual);
    auto tuple = build_F(E, sec, anchors, dual);
    const fs::path out(cfg.out_dir);
    fs::create_directories(out);

    std::ostringstream csv;
    csv << "re_lambda,value_at_pole,max_abs_on_other_frequencies,scale\n";
    double worst_rel = 0.0;
    for (std::size_t pick = 0; pick < sec.points.size(); pick += sec.points.size() / 8 + 1) {
        const cplx lam = sec.points[pick];
        bool is_anchor = false;
        for (auto a : anchors) is_anchor = is_anchor || std::abs(a - lam) < 1e-9;
        if (is_anchor) continue;
        auto elt = (E.size() == 2) ? biorth_two(tuple, lam, 1) : biorth_three(tuple, lam, 1);
        double scale = 0.0, vanish = 0.0;
        for (auto mu : sec.points) scale = std::max(scale, std::abs(elt.eval(mu)));
        for (auto mu : sec.points) {
            if (std::abs(mu - lam) < 1e-9) continue;
            vanish = std::max(vanish, std::abs(elt.eval(mu)));
        }
        worst_rel = std::max(worst_rel, vanish / scale);
        csv << fmt(lam.real()) << ',' << fmt(std::abs(elt.eval(lam))) << ',' << fmt(vanish)
            << ',' << fmt(scale) << '\n';
    }
    write_file(out / "biorth_check.csv", csv.str());
    write_manifest(cfg, {"biorth_check.csv"});
    if (worst_rel > cfg.tolerances.at("vanish")) {
        std::fprintf(stderr, "invariant failed: element leakage %s exceeds %s\n",
                     fmt(worst_rel).c_str(), fmt(cfg.tolerances.at("vanish")).c_str());
        return 4;
    }
    return 0;
}

int cmd_density(const RunConfig& cfg) {
    auto freqs = load_freqs(cfg);
    const fs::path out(cfg.out_dir);
    fs::create_directories(out);
    std::ostringstream csv;
    csv << "radius,disk_density_per_unit_length,uniform_density_per_unit_length\n";
    double R_max = 0.0;
    for (auto p : freqs.points) R_max = std::max(R_max, std::abs(p));
    for (double R : {25.0, 50.0, 100.0, 200.0, 500.0}) {
        if (R > R_max) break;
        csv << fmt(R) << ',' << fmt(density_estimate(freqs, R, DensityMode::Disk)) << ','
            << fmt(density_estimate(freqs, R, DensityMode::Uniform)) << '\n';
    }
    write_file(out / "density.csv", csv.str());
    write_manifest(cfg, {"density.csv"});
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    auto E = load_spectrum(cfg);
    FrequencySet freqs;
    if (!cfg.freqs_path.empty()) {
        freqs = load_freqs(cfg);
    } else {
        const fs::path gamma = fs::path(cfg.out_dir) / "gamma.json";
        if (!fs::exists(gamma))
            throw ParseError("verify needs --freqs or a gamma.json in the output directory");
        freqs = freqs_from_json(read_file(gamma.string()));
    }
    const fs::path out(cfg.out_dir);
    fs::create_directories(out);

    write_bounds_csv(out / "bounds.csv", E, freqs);

    auto sec = truncated_section(freqs, std::min(cfg.trunc, 200));
    auto dual = dual_system(E, sec);
    std::ostringstream bio;
    bio << "index,re_frequency,max_biorthogonality_defect\n";
    double worst = 0.0;
    for (std::size_t n = 0; n < sec.points.size(); ++n) {
        auto fn = dual.point_dual(n);
        double defect = 0.0;
        for (std::size_t m = 0; m < sec.points.size(); ++m) {
            const cplx want = (m == n) ? cplx(1.0) : cplx(0.0);
            defect = std::max(defect, std::abs(fn.eval(sec.points[m]) - want));
        }
        worst = std::max(worst, defect);
        bio << n << ',' << fmt(sec.points[n].real()) << ',' << fmt(defect) << '\n';
    }
    write_file(out / "biorth_check.csv", bio.str());

    std::mt19937 rng(std::uint32_t(cfg.seed));
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    ExpSum f(E);
    for (std::size_t j = 0; j < E.size(); ++j)
        f.add_term({int(j), {cplx(U(rng), U(rng)), cplx(U(rng), U(rng))}, cplx(U(rng), U(rng))});
    std::vector<int> truncs;
    for (int T = 50; T <= cfg.trunc && T <= int(freqs.points.size()); T += 50) truncs.push_back(T);
    if (truncs.empty()) truncs.push_back(int(freqs.points.size()));
    auto res = completeness_residual(E, freqs, f, truncs);
    std::ostringstream rcsv;
    rcsv << "section_size,relative_residual_exponential_span,relative_residual_dual_span\n";
    for (const auto& r : res)
        rcsv << r.truncation << ',' << fmt(r.residual_exponentials) << ','
             << fmt(r.residual_duals) << '\n';
    write_file(out / "residuals.csv", rcsv.str());
    write_manifest(cfg, {"bounds.csv", "biorth_check.csv", "residuals.csv"});

    if (worst > cfg.tolerances.at("biorth")) {
        std::fprintf(stderr, "invariant failed: biorthogonality defect %s exceeds %s\n",
                     fmt(worst).c_str(), fmt(cfg.tolerances.at("biorth")).c_str());
        return 4;
    }
    if (res.back().residual_exponentials > cfg.tolerances.at("residual")) {
        std::fprintf(stderr, "invariant failed: completeness residual %s exceeds %s\n",
                     fmt(res.back().residual_exponentials).c_str(),
                     fmt(cfg.tolerances.at("residual")).c_str());
        return 4;
    }
    std::printf("verify: all invariants satisfied\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("MEXP_THREADS")) {
        const int n = std::atoi(threads);
        if (n > 0) Eigen::setNbThreads(n);
    }

    CLI::App app{"Exponential systems on unions of intervals"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool spectrum, bool freqs, bool genfun) {
        if (spectrum) sub->add_option("--spectrum", cfg.spectrum_path, "spectrum JSON file");
        if (freqs) sub->add_option("--freqs", cfg.freqs_path, "frequency-set JSON file");
        if (genfun)
            sub->add_option("--genfun", cfg.genfun_path, "generating-function JSON file")
                ->required();
        sub->add_option("--trunc", cfg.trunc, "truncation / section size")
            ->check(CLI::Range(50, 1000000));
        sub->add_option("--seed", cfg.seed, "seed for randomized probes");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--tol-biorth", cfg.tolerances["biorth"], "biorthogonality tolerance");
        sub->add_option("--tol-vanish", cfg.tolerances["vanish"], "element leakage tolerance");
        sub->add_option("--tol-residual", cfg.tolerances["residual"], "residual tolerance");
    };

    add_common(app.add_subcommand("spectrum", "inspect a spectrum"), true, false, false);
    add_common(app.add_subcommand("basis", "construct a frequency basis"), true, false, false);
    add_common(app.add_subcommand("genfun-eval", "evaluate a generating function"), false, false,
               true);
    add_common(app.add_subcommand("genfun-check", "generating-function diagnostics"), false,
               false, true);
    add_common(app.add_subcommand("gram-bounds", "windowed Gram eigenvalue bounds"), true, true,
               false);
    add_common(app.add_subcommand("dual", "dual system and biorthogonality defects"), true, true,
               false);
    add_common(app.add_subcommand("biorth", "formula-based biorthogonal elements"), true, true,
               false);
    add_common(app.add_subcommand("verify", "run the full verification suite"), true, true,
               false);
    add_common(app.add_subcommand("density", "counting density of a frequency set"), false, true,
               false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    cfg.command = command;
    try {
        if (command == "spectrum") return cmd_spectrum(cfg);
        if (command == "basis") return cmd_basis(cfg);
        if (command == "genfun-eval") return cmd_genfun_eval(cfg);
        if (command == "genfun-check") return cmd_genfun_check(cfg);
        if (command == "gram-bounds") return cmd_gram_bounds(cfg);
        if (command == "dual") return cmd_dual(cfg);
        if (command == "biorth") return cmd_biorth(cfg);
        if (command == "verify") return cmd_verify(cfg);
        if (command == "density") return cmd_density(cfg);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 2;
    } catch (const OverlapError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 2;
    } catch (const EmptyError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 2;
    } catch (const UnsupportedError& e) {
        std::fprintf(stderr, "unsupported: %s\n", e.what());
        return 3;
    } catch (const Error& e) {
        std::fprintf(stderr, "invariant failed: %s\n", e.what());
        return 4;
    }
    return 2;
}
