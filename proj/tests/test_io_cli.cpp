#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "entpdf/commands.hpp"
#include "entpdf/io.hpp"
#include "entpdf/pps.hpp"
#include "entpdf/reconstruct.hpp"
#include "helpers.hpp"

using namespace entpdf;
using namespace entpdf::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("entpdf_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("state files round trip byte-identically") {
    TempDir dir;
    DensityMatrix rho = random_density_matrix(4, 2024);
    fs::path p = dir.path / "state.json";
    write_state_file(p, rho);
    DensityMatrix back = read_state_file(p);
    CHECK((back.mat() - rho.mat()).cwiseAbs().maxCoeff() < 1e-14);

    fs::path q = dir.path / "state2.json";
    write_state_file(q, back);
    CHECK(slurp(p) == slurp(q));
}

TEST_CASE("state file parsing reports broken input") {
    TempDir dir;
    fs::path p = dir.path / "bad.json";
    std::ofstream(p) << "{\"rho\": [[1,2],[3,4]]}";
    CHECK_THROWS_AS(read_state_file(p), ParseError);
    std::ofstream(dir.path / "none.json") << "{}";
    CHECK_THROWS_AS(read_state_file(dir.path / "none.json"), ParseError);
    // valid JSON, invalid state
    std::ostringstream os;
    os << "{\"rho\": [";
    for (int r = 0; r < 4; ++r) {
        os << "[";
        for (int c = 0; c < 4; ++c)
            os << "[" << (r == c ? (r == 0 ? "0.7" : "0.3") : "0") << ", 0]"
               << (c < 3 ? "," : "");
        os << "]" << (r < 3 ? "," : "");
    }
    os << "]}";
    std::ofstream(dir.path / "trace.json") << os.str();
    CHECK_THROWS_AS(read_state_file(dir.path / "trace.json"), TraceNotOne);
}

TEST_CASE("marker files round trip byte-identically") {
    TempDir dir;
    Rng rng(512);
    for (int t = 0; t < 20; ++t) {
        MarkerSet m = extract_markers(random_density_matrix(1 + t % 4, rng));
        fs::path p = dir.path / "m.json";
        write_marker_file(p, m);
        MarkerSet back = read_marker_file(p);
        CHECK(marker_distance(m, back) < 1e-14);
        fs::path q = dir.path / "m2.json";
        write_marker_file(q, back);
        CHECK(slurp(p) == slurp(q));
    }
}

TEST_CASE("cmd_analyze on a Bell projector: single atom, empty pdf body") {
    TempDir dir;
    Vector4 bell = Vector4(1, 0, 0, 1) / std::sqrt(2.0);
    fs::path state = dir.path / "bell.json";
    write_state_file(state, DensityMatrix((bell * bell.adjoint()).eval()));

    std::ostringstream out, err;
    CommonOptions opts;
    opts.samples = 100000;
    int rc = cmd_analyze(state, dir.path / "out", opts, out, err);
    CHECK(rc == 0);

    std::string atoms = slurp(dir.path / "out" / "atoms.csv");
    CHECK(count_lines(atoms) == 2);  // header + one atom
    CHECK(atoms.substr(0, 15) == "location,weight");
    CHECK(atoms.find("\n1,1\n") != std::string::npos);

    std::string pdf = slurp(dir.path / "out" / "pdf.csv");
    CHECK(count_lines(pdf) == 1);  // header only
    CHECK(pdf == "bin_center,density\n");

    MarkerSet m = read_marker_file(dir.path / "out" / "markers.json");
    CHECK(m.mu.mu(0) == doctest::Approx(1.0));
    CHECK(*m.e1 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cmd_analyze on the maximally mixed state matches the sampler") {
    TempDir dir;
    fs::path state = dir.path / "mm.json";
    write_state_file(state, DensityMatrix((Matrix4::Identity() / 4.0).eval()));
    std::ostringstream out, err;
    CommonOptions opts;
    int rc = cmd_analyze(state, dir.path / "out", opts, out, err);
    CHECK(rc == 0);
    Histogram mc = sample_pi4(1000000, 9);
    std::ifstream pdf(dir.path / "out" / "pdf.csv");
    std::string header;
    std::getline(pdf, header);
    double l1 = 0;
    for (int i = 0; i < 100; ++i) {
        double c, d;
        char comma;
        pdf >> c >> comma >> d;
        l1 += std::abs(d / 100.0 - mc.mass(i));
    }
    CHECK(l1 < 0.02);
}

TEST_CASE("cmd_analyze emits the caption-spectrum weights") {
    TempDir dir;
    Eigen::Vector4d lam(0.385, 0.288, 0.231, 0.096);
    write_state_file(dir.path / "fig.json", density_from_spectrum(lam, 1));
    std::ostringstream out, err;
    CommonOptions opts;
    opts.samples = 400000;
    REQUIRE(cmd_analyze(dir.path / "fig.json", dir.path / "out", opts, out, err) == 0);
    MarkerSet m = read_marker_file(dir.path / "out" / "markers.json");
    CHECK(m.mu.mu(0) == doctest::Approx(0.25195).epsilon(1e-4));
    CHECK(m.mu.mu(1) == doctest::Approx(0.14805).epsilon(1e-4));
    CHECK(m.mu.mu(2) == doctest::Approx(0.35065).epsilon(1e-4));
    CHECK(m.mu.mu(3) == doctest::Approx(0.24935).epsilon(1e-4));
    REQUIRE(m.pi2.has_value());
    REQUIRE(m.e_perp.has_value());
    REQUIRE(m.angles.has_value());
    REQUIRE(m.angles_perp.has_value());
    // all four components present in the rendered output
    std::string atoms = slurp(dir.path / "out" / "atoms.csv");
    CHECK(count_lines(atoms) == 2);
    std::string pdf = slurp(dir.path / "out" / "pdf.csv");
    CHECK(count_lines(pdf) == 101);
}

TEST_CASE("cmd_analyze exit code 2 on invalid state") {
    TempDir dir;
    std::ofstream(dir.path / "bad.json") << "{\"rho\": 3}";
    std::ostringstream out, err;
    CHECK(cmd_analyze(dir.path / "bad.json", dir.path / "o", {}, out, err) == 2);
    CHECK(!err.str().empty());
}

TEST_CASE("cmd_subspace: marker inputs echo and the two forms agree") {
    TempDir dir;
    std::ostringstream out, err;
    CommonOptions opts;
    opts.samples = 200000;
    SubspaceArgs by_markers;
    by_markers.e_max = 0.89;
    by_markers.e_cusp = 0.80;
    CHECK(cmd_subspace(by_markers, dir.path / "a", opts, out, err) == 0);
    MarkerSet m = read_marker_file(dir.path / "a" / "markers.json");
    CHECK(m.pi2->e_max == doctest::Approx(0.89).epsilon(1e-9));
    CHECK(m.pi2->e_cusp == doctest::Approx(0.80).epsilon(1e-9));

    SubspaceArgs by_xy;
    auto t = invert_pi2(0.89, 0.80);
    by_xy.x = t.x;
    by_xy.y = t.y;
    CHECK(cmd_subspace(by_xy, dir.path / "b", opts, out, err) == 0);
    CHECK(slurp(dir.path / "a" / "pdf.csv") == slurp(dir.path / "b" / "pdf.csv"));

    SubspaceArgs both = by_xy;
    both.e_max = 0.89;
    both.e_cusp = 0.80;
    CHECK(cmd_subspace(both, dir.path / "c", opts, out, err) == 2);
    SubspaceArgs neither;
    CHECK(cmd_subspace(neither, dir.path / "d", opts, out, err) == 2);
}

TEST_CASE("cmd_subspace extreme cases") {
    TempDir dir;
    std::ostringstream out, err;
    CommonOptions opts;
    opts.samples = 400000;
    SubspaceArgs flat;
    flat.x = 1 / std::sqrt(2.0);
    flat.y = 1 / std::sqrt(2.0);
    CHECK(cmd_subspace(flat, dir.path / "flat", opts, out, err) == 0);
    std::ifstream pdf(dir.path / "flat" / "pdf.csv");
    std::string header;
    std::getline(pdf, header);
    double c, d;
    char comma;
    for (int i = 0; i < 50; ++i) pdf >> c >> comma >> d;
    CHECK(std::abs(d - 1.0) < 0.05);  // flat density mid-range

    SubspaceArgs mono;
    mono.x = 0.0;
    mono.y = 0.0;
    CHECK(cmd_subspace(mono, dir.path / "mono", opts, out, err) == 0);
    MarkerSet m = read_marker_file(dir.path / "mono" / "markers.json");
    CHECK(m.pi2->e_cusp == doctest::Approx(1.0));
    CHECK(m.pi2->e_max == doctest::Approx(1.0));
}

TEST_CASE("cmd_pi3 outputs and integral check") {
    TempDir dir;
    std::ostringstream out, err;
    CommonOptions opts;
    CHECK(cmd_pi3(0.4, dir.path / "p", opts, out, err) == 0);
    CHECK(out.str().find("L1") != std::string::npos);
    // reported L1 below the acceptance threshold at 1e6 samples
    double l1 = std::stod(out.str().substr(out.str().find("= ") + 2));
    CHECK(l1 < 0.02);

    CHECK(cmd_pi3(1.0, dir.path / "q", opts, out, err) == 2);
    CHECK(cmd_pi3(-0.1, dir.path / "r", opts, out, err) == 2);

    // closed_form.csv on a 1e4 grid integrates to 1 by trapezoid rule
    CommonOptions fine;
    fine.bins = 10000;
    fine.samples = 1000;  // sampling not under test here
    std::ostringstream out2;
    CHECK(cmd_pi3(0.4, dir.path / "fine", fine, out2, err) == 0);
    std::ifstream cf(dir.path / "fine" / "closed_form.csv");
    std::string header;
    std::getline(cf, header);
    std::vector<double> centers, vals;
    double c, d;
    char comma;
    while (cf >> c >> comma >> d) {
        centers.push_back(c);
        vals.push_back(d);
    }
    REQUIRE(centers.size() == 10000);
    double acc = 0;
    // extend with the vanishing endpoint values at 0 and 1
    acc += 0.5 * (0.0 + vals.front()) * centers.front();
    for (std::size_t i = 0; i + 1 < vals.size(); ++i)
        acc += 0.5 * (vals[i] + vals[i + 1]) * (centers[i + 1] - centers[i]);
    acc += 0.5 * (vals.back() + 0.0) * (1.0 - centers.back());
    CHECK(std::abs(acc - 1.0) < 1e-6);
}

TEST_CASE("cmd_pps reports") {
    TempDir dir;
    std::ostringstream out, err;
    CHECK(cmd_pps(1e-6, "bell", dir.path / "a", out, err) == 0);
    std::string rep = slurp(dir.path / "a" / "report.json");
    CHECK(rep.find("\"mu1\": 3.99998") != std::string::npos);
    bool conc_zero = rep.find("\"concurrence\": 0,") != std::string::npos;
    CHECK(conc_zero);
    CHECK(rep.find("\"negativity\": 0") != std::string::npos);

    CHECK(cmd_pps(1.0, "bell", dir.path / "b", out, err) == 0);
    {
        std::ifstream f(dir.path / "b" / "report.json");
        nlohmann::json j;
        f >> j;
        CHECK(j["mu1"].get<double>() == doctest::Approx(1.0));
        CHECK(j["concurrence"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    }

    CHECK(cmd_pps(0.5, "bell", dir.path / "c", out, err) == 0);
    {
        std::ifstream f(dir.path / "c" / "report.json");
        nlohmann::json j;
        f >> j;
        CHECK(j["concurrence"].get<double>() == doctest::Approx(0.25).epsilon(1e-9));
        CHECK(j["negativity"].get<double>() == doctest::Approx(0.25).epsilon(1e-9));
    }

    CHECK(cmd_pps(1.5, "bell", dir.path / "d", out, err) == 2);

    // --psi as a state file: must be pure
    write_state_file(dir.path / "pure.json", random_density_matrix(1, 88));
    CHECK(cmd_pps(0.5, (dir.path / "pure.json").string(), dir.path / "e", out, err) == 0);
    write_state_file(dir.path / "mixed.json", random_density_matrix(4, 88));
    CHECK(cmd_pps(0.5, (dir.path / "mixed.json").string(), dir.path / "f", out, err) == 2);
}

TEST_CASE("cmd_reconstruct round trips through files") {
    TempDir dir;
    std::ostringstream out, err;
    DensityMatrix rho = random_density_matrix(4, 31337);
    MarkerSet m = extract_markers(rho);
    write_marker_file(dir.path / "m.json", m);
    CHECK(cmd_reconstruct(dir.path / "m.json", dir.path / "state.json", out, err) == 0);
    DensityMatrix rebuilt = read_state_file(dir.path / "state.json");
    CHECK(marker_distance(m, extract_markers(rebuilt)) < 1e-6);
    CHECK(lo_equivalent(rho, rebuilt));

    // infeasible markers: cusp above the support edge
    MarkerSet bad = m;
    bad.pi2->e_cusp = bad.pi2->e_max + 0.1;
    write_marker_file(dir.path / "bad.json", bad);
    CHECK(cmd_reconstruct(dir.path / "bad.json", dir.path / "s2.json", out, err) == 2);

    MarkerSet missing = m;
    missing.angles.reset();
    write_marker_file(dir.path / "missing.json", missing);
    CHECK(cmd_reconstruct(dir.path / "missing.json", dir.path / "s3.json", out, err) == 2);
}

TEST_CASE("cmd_compare finds the non-monotonicity witness") {
    TempDir dir;
    std::ostringstream out, err;
    CHECK(cmd_compare(20000, 42, dir.path / "cmp.csv", out, err) == 0);
    CHECK(out.str().find("pair found") != std::string::npos);

    std::ifstream csv(dir.path / "cmp.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "concurrence,negativity");
    double c, n;
    char comma;
    int rows = 0;
    while (csv >> c >> comma >> n) {
        CHECK(c >= n - 1e-9);
        ++rows;
    }
    CHECK(rows == 20000);

    CHECK(cmd_compare(10, 42, dir.path / "few.csv", out, err) == 2);
}

TEST_CASE("pure states have equal concurrence and negativity") {
    Rng rng(606);
    for (int t = 0; t < 200; ++t) {
        DensityMatrix rho = random_density_matrix(1, rng);
        CHECK(std::abs(wootters_concurrence(rho) - negativity(rho)) < 1e-9);
    }
}

TEST_CASE("commands are deterministic across reruns") {
    TempDir dir;
    std::ostringstream out, err;
    CommonOptions opts;
    opts.samples = 100000;
    SubspaceArgs args;
    args.e_max = 0.89;
    args.e_cusp = 0.80;
    CHECK(cmd_subspace(args, dir.path / "one", opts, out, err) == 0);
    CHECK(cmd_subspace(args, dir.path / "two", opts, out, err) == 0);
    CHECK(slurp(dir.path / "one" / "pdf.csv") == slurp(dir.path / "two" / "pdf.csv"));
    CHECK(slurp(dir.path / "one" / "markers.json") ==
          slurp(dir.path / "two" / "markers.json"));

    DensityMatrix rho = random_density_matrix(4, 5150);
    write_state_file(dir.path / "s.json", rho);
    CHECK(cmd_analyze(dir.path / "s.json", dir.path / "a1", opts, out, err) == 0);
    CHECK(cmd_analyze(dir.path / "s.json", dir.path / "a2", opts, out, err) == 0);
    CHECK(slurp(dir.path / "a1" / "pdf.csv") == slurp(dir.path / "a2" / "pdf.csv"));
    CHECK(slurp(dir.path / "a1" / "markers.json") ==
          slurp(dir.path / "a2" / "markers.json"));
    CHECK(slurp(dir.path / "a1" / "atoms.csv") == slurp(dir.path / "a2" / "atoms.csv"));
}
