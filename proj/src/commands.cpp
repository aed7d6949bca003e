#include "entpdf/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "entpdf/io.hpp"
#include "entpdf/pps.hpp"
#include "entpdf/reconstruct.hpp"

namespace entpdf {

namespace fs = std::filesystem;

namespace {

int report_error(std::ostream& err, const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
}

void write_grid_csv(const fs::path& path, const DensityGrid& grid, bool body) {
    std::vector<std::vector<double>> rows;
    if (body)
        for (int i = 0; i < grid.bins; ++i)
            rows.push_back({grid.center(i), grid.density(i)});
    write_csv(path, "bin_center,density", rows);
}

void write_atoms_csv(const fs::path& path, const std::vector<Atom>& atoms) {
    std::vector<std::vector<double>> rows;
    for (const Atom& a : atoms) rows.push_back({a.location, a.weight});
    write_csv(path, "location,weight", rows);
}

}  // namespace

int cmd_analyze(const fs::path& state_file, const fs::path& out_dir,
                const CommonOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        DensityMatrix rho = read_state_file(state_file);
        MarkerSet markers = extract_markers(rho);
        EntanglementPDF pdf = compose_pdf(markers);
        RenderOptions ro{opts.bins, opts.samples, opts.seed};
        DensityGrid grid = evaluate_pdf(pdf, ro);

        fs::create_directories(out_dir);
        write_marker_file(out_dir / "markers.json", markers);
        bool has_continuous = pdf.pi2 || pdf.pi3 || pdf.pi4_weight > 0;
        write_grid_csv(out_dir / "pdf.csv", grid, has_continuous);
        write_atoms_csv(out_dir / "atoms.csv", grid.atoms);
        out << "markers, pdf and atoms written to " << out_dir.string() << "\n";
        return kExitOk;
    } catch (const Error& e) {
        return report_error(err, e);
    }
}

int cmd_subspace(const SubspaceArgs& args, const fs::path& out_dir,
                 const CommonOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        bool by_xy = args.x.has_value() || args.y.has_value();
        bool by_markers = args.e_max.has_value() || args.e_cusp.has_value();
        if (by_xy == by_markers)
            throw ParseError("give either --x/--y or --emax/--ecusp");
        double x, y;
        if (by_xy) {
            if (!args.x || !args.y) throw ParseError("--x and --y go together");
            x = *args.x;
            y = *args.y;
            if (x < 0 || y < 0 || x * x + y * y > 1.0 + 1e-12)
                throw InfeasibleMarkers("(x, y) outside the canonical quarter disc");
        } else {
            if (!args.e_max || !args.e_cusp)
                throw ParseError("--emax and --ecusp go together");
            CanonicalTriple t = invert_pi2(*args.e_max, *args.e_cusp);
            x = t.x;
            y = t.y;
        }
        Pi2Markers markers = pi2_markers(x, y);

        SampleOptions so;
        so.bins = opts.bins;
        Histogram h = sample_pi2(x, y, opts.samples, opts.seed, so);

        fs::create_directories(out_dir);
        MarkerSet ms;
        ms.mu.mu << 0, 1, 0, 0;
        ms.mu.lambda_diffs << 0, 0.5, 0, 0;
        ms.pi2 = markers;
        write_marker_file(out_dir / "markers.json", ms);
        write_grid_csv(out_dir / "pdf.csv", grid_from_histogram(h), true);
        out << "e_max " << format_double(markers.e_max) << ", e_cusp "
            << format_double(markers.e_cusp) << "\n";
        return kExitOk;
    } catch (const Error& e) {
        return report_error(err, e);
    }
}

int cmd_pi3(double e_perp, const fs::path& out_dir, const CommonOptions& opts,
            std::ostream& out, std::ostream& err) {
    try {
        if (e_perp < 0.0 || e_perp >= 1.0)
            throw DivergentDual("--eperp must lie in [0, 1)");
        SampleOptions so;
        so.bins = opts.bins;
        Histogram h = sample_pi3_value(e_perp, opts.samples, opts.seed, so);

        std::vector<std::vector<double>> closed;
        double l1 = 0.0;
        for (int i = 0; i < opts.bins; ++i) {
            double c = h.center(i);
            closed.push_back({c, pi3_density(c, e_perp)});
            double exact_mass = pi3_cdf(h.edge(i + 1), e_perp) - pi3_cdf(h.edge(i), e_perp);
            l1 += std::abs(h.mass(i) - exact_mass);
        }
        fs::create_directories(out_dir);
        write_csv(out_dir / "closed_form.csv", "bin_center,density", closed);
        write_grid_csv(out_dir / "sampled.csv", grid_from_histogram(h), true);
        out << "L1(sampled, closed form) = " << format_double(l1) << "\n";
        return kExitOk;
    } catch (const Error& e) {
        return report_error(err, e);
    }
}

int cmd_pps(double epsilon, const std::string& psi_spec, const fs::path& out_dir,
            std::ostream& out, std::ostream& err) {
    try {
        if (epsilon < 0.0 || epsilon > 1.0)
            throw InfeasibleMarkers("--epsilon must lie in [0, 1]");
        PureState psi = bell_state();
        if (psi_spec != "bell") {
            DensityMatrix rho = read_state_file(psi_spec);
            SpectralDecomposition spec = eig_hermitian(rho);
            if (spec.eigenvalues(0) < 1.0 - 1e-9)
                throw NotNormalized("--psi file must contain a pure state");
            psi = PureState(spec.eigenvectors[0]);
        }
        DensityMatrix rho = build_pps({epsilon, psi});
        PpsWeights w = pps_pdf_weights(epsilon);

        fs::create_directories(out_dir);
        std::ostringstream os;
        os << "{\n";
        os << "  \"epsilon\": " << format_double(epsilon) << ",\n";
        os << "  \"mu1\": " << format_double(w.mu1) << ",\n";
        os << "  \"mu4\": " << format_double(w.mu4) << ",\n";
        os << "  \"atom_location\": " << format_double(pure_entanglement(psi)) << ",\n";
        os << "  \"concurrence\": " << format_double(wootters_concurrence(rho)) << ",\n";
        os << "  \"negativity\": " << format_double(negativity(rho)) << "\n";
        os << "}\n";
        std::ofstream f(out_dir / "report.json", std::ios::binary);
        f << os.str();
        out << "atom weight mu1 = " << format_double(w.mu1) << "\n";
        return kExitOk;
    } catch (const Error& e) {
        return report_error(err, e);
    }
}

int cmd_reconstruct(const fs::path& marker_file, const fs::path& out_file,
                    std::ostream& out, std::ostream& err) {
    try {
        MarkerSet markers = read_marker_file(marker_file);
        DensityMatrix rho = build_state(markers);
        if (out_file.has_parent_path()) fs::create_directories(out_file.parent_path());
        write_state_file(out_file, rho);
        out << "state written to " << out_file.string() << "\n";
        return kExitOk;
    } catch (const Error& e) {
        return report_error(err, e);
    }
}

int cmd_compare(std::uint64_t n, std::uint64_t seed, const fs::path& out_file,
                std::ostream& out, std::ostream& err) {
    try {
        if (n < 1000) throw ParseError("--samples must be at least 1000");
        Rng rng(seed);
        std::vector<std::vector<double>> rows;
        rows.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            int rank = 1 + static_cast<int>(i % 4);
            DensityMatrix rho = random_density_matrix(rank, rng);
            rows.push_back({wootters_concurrence(rho), negativity(rho)});
        }
        if (out_file.has_parent_path()) fs::create_directories(out_file.parent_path());
        write_csv(out_file, "concurrence,negativity", rows);

        // Scan for equal negativity with distinct concurrence.
        std::vector<std::size_t> order(rows.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return rows[a][1] < rows[b][1];
        });
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            for (std::size_t j = i + 1; j < order.size(); ++j) {
                double dn = std::abs(rows[order[j]][1] - rows[order[i]][1]);
                if (dn >= 1e-3) break;
                double dc = std::abs(rows[order[j]][0] - rows[order[i]][0]);
                if (dc > 0.05) {
                    out << "pair found: dN = " << format_double(dn)
                        << ", dC = " << format_double(dc) << "\n";
                    return kExitOk;
                }
            }
        }
        err << "no pair with matching negativity and distinct concurrence; "
               "increase N\n";
        return kExitGoalNotMet;
    } catch (const Error& e) {
        return report_error(err, e);
    }
}

}  // namespace entpdf
