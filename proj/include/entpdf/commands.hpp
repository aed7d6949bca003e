#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace entpdf {

// Exit codes shared by every command: 0 success, 2 input or validation
// failure (the violated invariant goes to `err`), 3 statistical goal not met.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitGoalNotMet = 3;

struct CommonOptions {
    int bins = 100;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 42;
};

// Full pipeline on a state file: writes markers.json, pdf.csv, atoms.csv.
int cmd_analyze(const std::filesystem::path& state_file,
                const std::filesystem::path& out_dir, const CommonOptions& opts,
                std::ostream& out, std::ostream& err);

// Rank-2 subspace analysis from (x, y) or from (e_max, e_cusp); writes
// markers.json and pdf.csv.
struct SubspaceArgs {
    std::optional<double> x, y;
    std::optional<double> e_max, e_cusp;
};
int cmd_subspace(const SubspaceArgs& args, const std::filesystem::path& out_dir,
                 const CommonOptions& opts, std::ostream& out, std::ostream& err);

// Rank-3 density versus its sampler; writes closed_form.csv and sampled.csv,
// reports the L1 distance on stdout.
int cmd_pi3(double e_perp, const std::filesystem::path& out_dir,
            const CommonOptions& opts, std::ostream& out, std::ostream& err);

// Pseudopure report: writes report.json.
int cmd_pps(double epsilon, const std::string& psi_spec,
            const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

// Markers -> state file.
int cmd_reconstruct(const std::filesystem::path& marker_file,
                    const std::filesystem::path& out_file, std::ostream& out,
                    std::ostream& err);

// Concurrence/negativity scatter over a random ensemble; writes a CSV and
// looks for a pair with nearly equal negativity but distinct concurrence.
int cmd_compare(std::uint64_t n, std::uint64_t seed,
                const std::filesystem::path& out_file, std::ostream& out,
                std::ostream& err);

}  // namespace entpdf
