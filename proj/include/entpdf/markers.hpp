#pragma once

#include <optional>
#include <vector>

#include "entpdf/quantum.hpp"
#include "entpdf/sampling.hpp"
#include "entpdf/subspace.hpp"
#include "entpdf/subspace_pdf.hpp"

namespace entpdf {

// Weights below this are treated as exactly zero (degenerate spectrum).
inline constexpr double kWeightTol = 1e-12;

// Spectral gaps and their rescaled form mu_i = (lambda_i - lambda_{i+1}) /
// lambda_1 (lambda_5 = 0); the mu sum to 1 identically.
struct WeightVector {
    Eigen::Vector4d lambda_diffs;
    Eigen::Vector4d mu;
};

WeightVector weights(const SpectralDecomposition& spec);

// The parameters characterizing a state's entanglement PDF, up to local
// operations. Fields tied to a vanishing weight are absent, never zero-filled.
struct MarkerSet {
    WeightVector mu;
    std::optional<double> e1;                 // absent when mu1 == 0
    std::optional<Pi2Markers> pi2;            // absent when mu2 == 0
    std::optional<double> e_perp;             // absent when mu3 == 0
    std::optional<BlochAngles> angles;        // psi1 in the canonical pair
    std::optional<BlochAngles> angles_perp;   // psi4 in the complement pair
};

MarkerSet extract_markers(const DensityMatrix& rho);

// Symbolic composite PDF: atoms plus weighted continuous components. The
// rank-2 component keeps its (x, y) parameters and is rendered by sampling;
// rank-3 and the universal component integrate in closed form.
struct EntanglementPDF {
    struct Pi2Part {
        double weight = 0;
        double x = 0, y = 0;
    };
    struct Pi3Part {
        double weight = 0;
        double e_perp = 0;
    };
    std::vector<Atom> atoms;
    std::optional<Pi2Part> pi2;
    std::optional<Pi3Part> pi3;
    double pi4_weight = 0;

    double total_weight() const;
};

EntanglementPDF compose_pdf(const MarkerSet& markers);

// Numerically rendered composite: per-bin masses on [0,1] plus the atom list
// kept out of the bins. `noise_samples` is the Monte-Carlo sample count
// behind the noisy (rank-2) part, 0 for fully closed-form renders.
struct DensityGrid {
    int bins = kDefaultBins;
    std::vector<double> masses;
    std::vector<Atom> atoms;
    std::uint64_t noise_samples = 0;
    // Per-bin variance of the mass estimate; empty for exact renders. Only
    // the sampled component contributes.
    std::vector<double> noise_var;

    double bin_width() const { return 1.0 / bins; }
    double edge(int i) const { return static_cast<double>(i) / bins; }
    double center(int i) const { return (i + 0.5) / bins; }
    double density(int i) const { return masses[i] * bins; }
    double total_mass() const;
};

struct RenderOptions {
    int bins = kDefaultBins;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 42;
};

DensityGrid evaluate_pdf(const EntanglementPDF& pdf, const RenderOptions& opts = {});

DensityGrid grid_from_histogram(const Histogram& h);

// Detected singular points of a rendered PDF; absent means not found, never
// zero. Thresholds are engineering defaults.
struct DetectedFeatures {
    std::optional<double> e1;       // first atom
    std::optional<double> e_cusp;   // divergent local maximum
    std::optional<double> e_max;    // end of support
    std::optional<double> e_perp;   // derivative discontinuity
};

struct FeatureConfig {
    double cusp_slope_factor = 3.0;    // neighbor slopes vs median |slope|
    double kink_global_factor = 5.0;   // |d2| vs median |d2|
    double kink_local_factor = 4.0;    // |d2| vs nearby |d2| (skipping +-1)
    double kink_noise_factor = 5.0;    // |d2| vs its own standard error
    int kink_local_window = 5;
    int exclusion_radius = 8;          // bins masked around cusp and edges
    double support_count_threshold = 5.0;
    double boundary_margin = 0.05;     // skip kink search within this of 0/1
    std::uint64_t min_counts_per_bin = 100;
};

DetectedFeatures detect_features(const DensityGrid& grid,
                                 const FeatureConfig& cfg = {});

}  // namespace entpdf
