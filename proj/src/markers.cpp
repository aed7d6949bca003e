#include "entpdf/markers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace entpdf {

WeightVector weights(const SpectralDecomposition& spec) {
    const auto& l = spec.eigenvalues;
    if (l(0) < 1e-12) throw ZeroState("leading eigenvalue vanishes");
    WeightVector wv;
    wv.lambda_diffs << l(0) - l(1), l(1) - l(2), l(2) - l(3), l(3);
    wv.mu = wv.lambda_diffs / l(0);
    return wv;
}

MarkerSet extract_markers(const DensityMatrix& rho) {
    SpectralDecomposition spec = eig_hermitian(rho);
    MarkerSet ms;
    ms.mu = weights(spec);

    const double mu1 = ms.mu.mu(0);
    const double mu2 = ms.mu.mu(1);
    const double mu3 = ms.mu.mu(2);

    PureState psi1(spec.eigenvectors[0]);
    if (mu1 > kWeightTol) ms.e1 = pure_entanglement(psi1);

    std::optional<SubspaceCanonicalForm> form;
    if (mu2 > kWeightTol) {
        Subspace2 span(psi1, PureState(spec.eigenvectors[1]));
        std::optional<PureState> anchor;
        if (mu1 > kWeightTol) anchor = psi1;
        form = canonicalize(span, anchor);
        try {
            ms.pi2 = pi2_markers(form->x, form->y);
        } catch (const DegenerateSubspace&) {
            // Fully separable rank-2 block: the component is an atom at 0.
            ms.pi2 = Pi2Markers{0.0, 0.0, std::numeric_limits<double>::infinity(), 0.0};
        }
        if (mu1 > kWeightTol) ms.angles = bloch_angles(psi1, *form);
    }

    if (mu3 > kWeightTol) {
        PureState psi4(spec.eigenvectors[3]);
        ms.e_perp = pure_entanglement(psi4);
        if (form) {
            auto [c1, c2] = complement_basis_or_fallback(*form);
            ms.angles_perp = bloch_angles_in_pair(form->map(psi4.vec()), c1, c2);
        }
    }
    return ms;
}

double EntanglementPDF::total_weight() const {
    double t = pi4_weight;
    for (const Atom& a : atoms) t += a.weight;
    if (pi2) t += pi2->weight;
    if (pi3) t += pi3->weight;
    return t;
}

EntanglementPDF compose_pdf(const MarkerSet& markers) {
    EntanglementPDF pdf;
    const double mu1 = markers.mu.mu(0);
    const double mu2 = markers.mu.mu(1);
    const double mu3 = markers.mu.mu(2);
    const double mu4 = markers.mu.mu(3);

    if (mu1 > kWeightTol) {
        if (!markers.e1) throw MissingAngles("e1 absent but mu1 > 0");
        pdf.atoms.push_back(Atom{mu1, *markers.e1});
    }
    if (mu2 > kWeightTol) {
        if (!markers.pi2) throw MissingAngles("rank-2 markers absent but mu2 > 0");
        if (markers.pi2->e_max < 1e-12) {
            pdf.atoms.push_back(Atom{mu2, 0.0});
        } else {
            CanonicalTriple t = invert_pi2(markers.pi2->e_max, markers.pi2->e_cusp);
            pdf.pi2 = EntanglementPDF::Pi2Part{mu2, t.x, t.y};
        }
    }
    if (mu3 > kWeightTol) {
        if (!markers.e_perp) throw MissingAngles("e_perp absent but mu3 > 0");
        pdf.pi3 = EntanglementPDF::Pi3Part{mu3, *markers.e_perp};
    }
    if (mu4 > kWeightTol) pdf.pi4_weight = mu4;
    return pdf;
}

double DensityGrid::total_mass() const {
    return std::accumulate(masses.begin(), masses.end(), 0.0);
}

DensityGrid grid_from_histogram(const Histogram& h) {
    DensityGrid g;
    g.bins = h.bins;
    g.masses.resize(h.bins);
    g.noise_var.resize(h.bins);
    double n = static_cast<double>(h.sample_count);
    for (int i = 0; i < h.bins; ++i) {
        double p = h.mass(i);
        g.masses[i] = p;
        g.noise_var[i] = p * (1.0 - p) / n;
    }
    g.noise_samples = h.sample_count;
    return g;
}

DensityGrid evaluate_pdf(const EntanglementPDF& pdf, const RenderOptions& opts) {
    DensityGrid g;
    g.bins = opts.bins;
    g.masses.assign(opts.bins, 0.0);
    g.atoms = pdf.atoms;

    if (pdf.pi2) {
        SampleOptions so;
        so.bins = opts.bins;
        Histogram h = sample_pi2(pdf.pi2->x, pdf.pi2->y, opts.samples, opts.seed, so);
        g.noise_var.assign(opts.bins, 0.0);
        double wgt = pdf.pi2->weight;
        for (int i = 0; i < opts.bins; ++i) {
            double p = h.mass(i);
            g.masses[i] += wgt * p;
            g.noise_var[i] = wgt * wgt * p * (1.0 - p) / static_cast<double>(opts.samples);
        }
        g.noise_samples = opts.samples;
    }
    if (pdf.pi3) {
        for (int i = 0; i < opts.bins; ++i) {
            double lo = pi3_cdf(g.center(i) - 0.5 * g.bin_width(), pdf.pi3->e_perp);
            double hi = pi3_cdf(g.center(i) + 0.5 * g.bin_width(), pdf.pi3->e_perp);
            g.masses[i] += pdf.pi3->weight * (hi - lo);
        }
    }
    if (pdf.pi4_weight > 0) {
        for (int i = 0; i < opts.bins; ++i) {
            double lo = pi4_cdf(g.center(i) - 0.5 * g.bin_width());
            double hi = pi4_cdf(g.center(i) + 0.5 * g.bin_width());
            g.masses[i] += pdf.pi4_weight * (hi - lo);
        }
    }
    return g;
}

namespace {

double median_abs(std::vector<double> v) {
    if (v.empty()) return 0.0;
    for (double& x : v) x = std::abs(x);
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
}

}  // namespace

DetectedFeatures detect_features(const DensityGrid& grid, const FeatureConfig& cfg) {
    const int n = grid.bins;
    const auto& m = grid.masses;
    if (grid.noise_samples > 0 &&
        grid.noise_samples / static_cast<std::uint64_t>(n) < cfg.min_counts_per_bin)
        throw InsufficientResolution("expected counts per bin below threshold");

    DetectedFeatures out;
    if (!grid.atoms.empty()) out.e1 = grid.atoms.front().location;

    // Support edge: last occupied bin, reported only when the support ends
    // strictly inside [0, 1].
    double occupied_tol = grid.noise_samples > 0
                              ? cfg.support_count_threshold / grid.noise_samples
                              : 1e-12;
    int last_occupied = -1;
    for (int i = 0; i < n; ++i)
        if (m[i] > occupied_tol) last_occupied = i;
    if (last_occupied >= 0 && last_occupied < n - 1)
        out.e_max = grid.center(last_occupied) + 0.5 * grid.bin_width();

    // First differences and their median magnitude.
    std::vector<double> slope(n - 1);
    for (int i = 0; i + 1 < n; ++i) slope[i] = m[i + 1] - m[i];
    double med_slope = median_abs(slope);

    // Cusp: a divergence concentrated at a point shows up either as one bin
    // above both neighbors or, when it straddles a bin edge, as an adjacent
    // pair above both outer neighbors. Slopes must beat the typical slope.
    int cusp_bin = -1, cusp_partner = -1;
    double cusp_peak = 0;
    for (int j = 1; j + 1 < n; ++j) {
        double up = m[j] - m[j - 1];
        double down = m[j] - m[j + 1];
        if (up > cfg.cusp_slope_factor * med_slope &&
            down > cfg.cusp_slope_factor * med_slope && m[j] > cusp_peak) {
            cusp_bin = j;
            cusp_partner = -1;
            cusp_peak = m[j];
        }
    }
    for (int j = 1; j + 2 < n; ++j) {
        double lo = std::min(m[j], m[j + 1]);
        double hi = std::max(m[j], m[j + 1]);
        double outer = std::max(m[j - 1], m[j + 2]);
        if (lo - outer > cfg.cusp_slope_factor * med_slope && hi > cusp_peak) {
            cusp_bin = j;
            cusp_partner = j + 1;
            cusp_peak = hi;
        }
    }
    if (cusp_bin >= 0)
        out.e_cusp = (cusp_partner >= 0) ? grid.edge(cusp_partner)
                                         : grid.center(cusp_bin);

    // Kink: largest curvature outlier away from jumps, divergences and the
    // interval boundaries. Slope outliers (jumps, cusp shoulders) are masked
    // first so a first-order discontinuity is never reported as a kink.
    std::vector<bool> masked(n, false);
    auto mask_around = [&](int center, int radius) {
        for (int i = std::max(0, center - radius);
             i <= std::min(n - 1, center + radius); ++i)
            masked[i] = true;
    };
    for (int i = 0; i + 1 < n; ++i)
        if (std::abs(slope[i]) > 6.0 * med_slope && med_slope > 0) {
            mask_around(i, 3);
            mask_around(i + 1, 3);
        }
    if (cusp_bin >= 0) mask_around(cusp_bin, cfg.exclusion_radius);
    if (cusp_partner >= 0) mask_around(cusp_partner, cfg.exclusion_radius);
    if (last_occupied >= 0 && last_occupied < n - 1)
        mask_around(last_occupied, cfg.exclusion_radius);
    int margin = std::max(1, static_cast<int>(cfg.boundary_margin * n));
    for (int i = 0; i < margin; ++i) {
        masked[i] = true;
        masked[n - 1 - i] = true;
    }

    // Edge-centered second difference: a derivative jump on the edge between
    // bins i and i+1 contributes its full w^2 * |jump| signal here, whatever
    // the alignment.
    std::vector<double> d2(n, 0.0);  // indexed by left bin of the edge
    for (int i = 1; i + 2 < n; ++i) d2[i] = m[i + 2] - m[i + 1] - m[i] + m[i - 1];
    auto usable = [&](int i) { return i >= 1 && i + 2 < n && !masked[i] && !masked[i + 1]; };
    std::vector<double> d2_pool;
    for (int i = 1; i + 2 < n; ++i)
        if (usable(i)) d2_pool.push_back(d2[i]);
    double med_d2 = median_abs(d2_pool);

    int best = -1;
    for (int i = 1; i + 2 < n; ++i) {
        if (!usable(i)) continue;
        if (best < 0 || std::abs(d2[i]) > std::abs(d2[best])) best = i;
    }
    if (best >= 0 && med_d2 > 0 &&
        std::abs(d2[best]) > cfg.kink_global_factor * med_d2) {
        // Local contrast: compare against nearby curvature, skipping the
        // overlapping edges that share the kink signal.
        std::vector<double> local;
        for (int i = std::max(1, best - cfg.kink_local_window);
             i <= std::min(n - 3, best + cfg.kink_local_window); ++i)
            if (std::abs(i - best) > 1) local.push_back(d2[i]);
        double med_local = median_abs(local);
        double noise_floor = 0.0;
        if (!grid.noise_var.empty()) {
            double var = 0.0;
            for (int j = best - 1; j <= best + 2; ++j) var += grid.noise_var[j];
            noise_floor = cfg.kink_noise_factor * std::sqrt(var);
        }
        if (std::abs(d2[best]) > cfg.kink_local_factor * med_local &&
            std::abs(d2[best]) > noise_floor)
            out.e_perp = grid.edge(best + 1);
    }
    return out;
}

}  // namespace entpdf
