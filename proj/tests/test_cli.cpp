#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args, const fs::path& dir) {
    const fs::path out = dir / "stdout.txt";
    const std::string cmd =
        std::string(MEXP_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(out);
    std::ostringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

fs::path make_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("mexp_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

} // namespace

TEST_CASE("spectrum command reports measure, gap and reduction order") {
    auto dir = make_dir("spectrum");
    write(dir / "s.json", R"({"intervals": [[1, 2], [3, 6]]})");
    auto r = run_cli("spectrum --spectrum " + (dir / "s.json").string(), dir);
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("measure: 4") != std::string::npos);
    CHECK(r.stdout_text.find("gap: [2, 3]") != std::string::npos);
    CHECK(r.stdout_text.find("min_reducing_N: 2") != std::string::npos);
}

TEST_CASE("spectrum command handles pi strings and rejects overlap") {
    auto dir = make_dir("spectrum2");
    write(dir / "full.json", R"({"intervals": [[0, "2*pi"]]})");
    auto r = run_cli("spectrum --spectrum " + (dir / "full.json").string(), dir);
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("parts: 1") != std::string::npos);

    write(dir / "bad.json", R"({"intervals": [[0, 2], [1, 3]]})");
    auto r2 = run_cli("spectrum --spectrum " + (dir / "bad.json").string(), dir);
    CHECK(r2.exit_code == 2);

    write(dir / "notjson.json", "oops");
    auto r3 = run_cli("spectrum --spectrum " + (dir / "notjson.json").string(), dir);
    CHECK(r3.exit_code == 2);
}

TEST_CASE("basis writes frequency, generating-function and density files") {
    auto dir = make_dir("basis");
    write(dir / "s.json", R"({"intervals": [[0, 2], [4, "2*pi"]]})");
    auto r = run_cli("basis --spectrum " + (dir / "s.json").string() + " --trunc 1200 --out " +
                         dir.string(),
                     dir);
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir / "gamma.json"));
    CHECK(fs::exists(dir / "genfun.json"));
    CHECK(fs::exists(dir / "density.csv"));
    CHECK(fs::exists(dir / "manifest.json"));

    // density.csv starts with its header row
    std::ifstream d(dir / "density.csv");
    std::string header;
    std::getline(d, header);
    CHECK(header.find("radius") == 0);
}

TEST_CASE("basis rejects a four-part spectrum with exit 3") {
    auto dir = make_dir("basis4");
    write(dir / "s.json", R"({"intervals": [[0, 0.5], [1, 1.5], [2, 2.5], [3, 3.5]]})");
    auto r = run_cli("basis --spectrum " + (dir / "s.json").string() + " --out " + dir.string(),
                     dir);
    CHECK(r.exit_code == 3);
}

TEST_CASE("full pipeline: basis, genfun checks, gram bounds, dual, verify") {
    auto dir = make_dir("pipeline");
    write(dir / "s.json", R"({"intervals": [[0, 2], [4, "2*pi"]]})");
    const std::string spec = " --spectrum " + (dir / "s.json").string();
    auto r = run_cli("basis" + spec + " --trunc 1200 --out " + dir.string(), dir);
    REQUIRE(r.exit_code == 0);

    auto rg = run_cli("genfun-check --genfun " + (dir / "genfun.json").string() + " --out " +
                          dir.string(),
                      dir);
    CHECK(rg.exit_code == 0);
    CHECK(fs::exists(dir / "genfun_check.csv"));

    auto re = run_cli("genfun-eval --genfun " + (dir / "genfun.json").string() + " --out " +
                          dir.string(),
                      dir);
    CHECK(re.exit_code == 0);
    CHECK(fs::exists(dir / "genfun_eval.csv"));

    const std::string freqs = " --freqs " + (dir / "gamma.json").string();
    auto rb = run_cli("gram-bounds" + spec + freqs + " --out " + dir.string(), dir);
    CHECK(rb.exit_code == 0);
    CHECK(fs::exists(dir / "bounds.csv"));

    auto rd = run_cli("dual" + spec + freqs + " --trunc 60 --out " + dir.string(), dir);
    CHECK(rd.exit_code == 0);
    CHECK(fs::exists(dir / "dual_defect.csv"));

    auto rbio = run_cli("biorth" + spec + freqs + " --trunc 60 --out " + dir.string(), dir);
    CHECK(rbio.exit_code == 0);
    CHECK(fs::exists(dir / "biorth_check.csv"));

    auto rv = run_cli("verify" + spec + freqs + " --trunc 200 --out " + dir.string(), dir);
    CHECK(rv.exit_code == 0);
    CHECK(fs::exists(dir / "residuals.csv"));
    CHECK(rv.stdout_text.find("all invariants satisfied") != std::string::npos);

    // residual column decreases along the ladder
    std::ifstream res(dir / "residuals.csv");
    std::string line;
    std::getline(res, line);  // header
    double prev = 1e300;
    while (std::getline(res, line)) {
        const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
        const double v = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
}

TEST_CASE("verify surfaces a duplicated frequency as exit 4") {
    auto dir = make_dir("dup");
    write(dir / "s.json", R"({"intervals": [[0, "2*pi"]]})");
    write(dir / "f.json", R"({"points": [[0,0],[1,0],[1,0],[2,0],[3,0]]})");
    // relax trunc floor by passing the minimum
    auto r = run_cli("verify --spectrum " + (dir / "s.json").string() + " --freqs " +
                         (dir / "f.json").string() + " --trunc 50 --out " + dir.string(),
                     dir);
    CHECK(r.exit_code == 4);
}

TEST_CASE("density command reports exact lattice densities") {
    auto dir = make_dir("density");
    std::ostringstream f;
    f << R"({"points": [)";
    for (int k = -300; k <= 300; ++k) f << (k > -300 ? "," : "") << "[" << k << ",0]";
    f << "]}";
    write(dir / "f.json", f.str());
    auto r = run_cli("density --freqs " + (dir / "f.json").string() + " --out " + dir.string(),
                     dir);
    CHECK(r.exit_code == 0);
    std::ifstream d(dir / "density.csv");
    std::string header, row;
    std::getline(d, header);
    std::getline(d, row);
    CHECK(row.find("25,1.02") != std::string::npos);  // 51/50
}

TEST_CASE("identical configuration and seed give identical bytes") {
    auto dir1 = make_dir("det1");
    auto dir2 = make_dir("det2");
    for (auto* dir : {&dir1, &dir2}) {
        write(*dir / "s.json", R"({"intervals": [[0, 2], [4, "2*pi"]]})");
        auto r = run_cli("basis --spectrum " + (*dir / "s.json").string() +
                             " --trunc 300 --seed 7 --out " + dir->string(),
                         *dir);
        REQUIRE(r.exit_code == 0);
    }
    for (const char* name : {"gamma.json", "genfun.json", "density.csv"}) {
        std::ifstream a(dir1 / name), b(dir2 / name);
        std::ostringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        CHECK(sa.str() == sb.str());
    }
}

TEST_CASE("trunc below the floor is a config error") {
    auto dir = make_dir("badtrunc");
    write(dir / "s.json", R"({"intervals": [[0, "2*pi"]]})");
    auto r = run_cli("basis --spectrum " + (dir / "s.json").string() + " --trunc 10 --out " +
                         dir.string(),
                     dir);
    CHECK(r.exit_code == 2);
}
