#pragma once

#include <vector>

#include "entpdf/quantum.hpp"

namespace entpdf {

// NMR pseudopure state (1-eps)/4 * I + eps |psi><psi|.
struct PseudoPureSpec {
    double epsilon = 0;
    PureState psi;
};

DensityMatrix build_pps(const PseudoPureSpec& spec);

// PDF weights of a pseudopure state: a Dirac atom of weight mu1 at the
// entanglement of psi on top of the universal background with weight mu4.
struct PpsWeights {
    double mu1 = 0;
    double mu4 = 0;
};

PpsWeights pps_pdf_weights(double epsilon);

struct PpsScanRow {
    double epsilon = 0;
    double mu1 = 0;
    double concurrence = 0;
    double negativity = 0;
};

// Concurrence/negativity versus the atom weight across an epsilon grid.
std::vector<PpsScanRow> concurrence_threshold_scan(const PureState& psi,
                                                   const std::vector<double>& epsilons);

// The Bell state (1,0,0,1)/sqrt(2).
PureState bell_state();

}  // namespace entpdf
