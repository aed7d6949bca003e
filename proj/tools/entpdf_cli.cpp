#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "entpdf/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit entanglement distribution toolkit"};
    app.require_subcommand(1);

    entpdf::CommonOptions common;

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Markers and PDF of a state file");
    std::string state_file, out_dir;
    analyze->add_option("--state", state_file, "state JSON file")->required();
    analyze->add_option("--bins", common.bins, "histogram bins");
    analyze->add_option("--samples", common.samples, "Monte-Carlo samples");
    analyze->add_option("--seed", common.seed, "sampler seed");
    analyze->add_option("--out", out_dir, "output directory")->required();

    // subspace
    auto* subspace = app.add_subcommand("subspace", "Rank-2 subspace PDF");
    entpdf::SubspaceArgs sargs;
    double sx, sy, semax, secusp;
    auto* ox = subspace->add_option("--x", sx, "canonical x");
    auto* oy = subspace->add_option("--y", sy, "canonical y");
    auto* oe = subspace->add_option("--emax", semax, "support edge");
    auto* oc = subspace->add_option("--ecusp", secusp, "cusp location");
    std::string sub_out;
    subspace->add_option("--bins", common.bins, "histogram bins");
    subspace->add_option("--samples", common.samples, "Monte-Carlo samples");
    subspace->add_option("--seed", common.seed, "sampler seed");
    subspace->add_option("--out", sub_out, "output directory")->required();

    // pi3
    auto* pi3 = app.add_subcommand("pi3", "Rank-3 PDF: closed form vs sampled");
    double eperp = 0.0;
    std::string pi3_out;
    pi3->add_option("--eperp", eperp, "entanglement of the dual state")->required();
    pi3->add_option("--bins", common.bins, "histogram bins");
    pi3->add_option("--samples", common.samples, "Monte-Carlo samples");
    pi3->add_option("--seed", common.seed, "sampler seed");
    pi3->add_option("--out", pi3_out, "output directory")->required();

    // pps
    auto* pps = app.add_subcommand("pps", "Pseudopure-state report");
    double epsilon = 0.0;
    std::string psi_spec = "bell", pps_out;
    pps->add_option("--epsilon", epsilon, "purity parameter")->required();
    pps->add_option("--psi", psi_spec, "\"bell\" or a pure state file");
    pps->add_option("--out", pps_out, "output directory")->required();

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "Markers to state file");
    std::string marker_file, rec_out;
    rec->add_option("--markers", marker_file, "marker JSON file")->required();
    rec->add_option("--out", rec_out, "output state file")->required();

    // compare
    auto* cmp = app.add_subcommand("compare", "Concurrence vs negativity ensemble");
    std::uint64_t cmp_n = 100000, cmp_seed = 42;
    std::string cmp_out;
    cmp->add_option("--samples", cmp_n, "ensemble size");
    cmp->add_option("--seed", cmp_seed, "generator seed");
    cmp->add_option("--out", cmp_out, "output CSV file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    if (*analyze)
        return entpdf::cmd_analyze(state_file, out_dir, common, std::cout, std::cerr);
    if (*subspace) {
        if (*ox) sargs.x = sx;
        if (*oy) sargs.y = sy;
        if (*oe) sargs.e_max = semax;
        if (*oc) sargs.e_cusp = secusp;
        return entpdf::cmd_subspace(sargs, sub_out, common, std::cout, std::cerr);
    }
    if (*pi3) return entpdf::cmd_pi3(eperp, pi3_out, common, std::cout, std::cerr);
    if (*pps) return entpdf::cmd_pps(epsilon, psi_spec, pps_out, std::cout, std::cerr);
    if (*rec) return entpdf::cmd_reconstruct(marker_file, rec_out, std::cout, std::cerr);
    if (*cmp) return entpdf::cmd_compare(cmp_n, cmp_seed, cmp_out, std::cout, std::cerr);
    return 2;
}
