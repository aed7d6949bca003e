#include "entpdf/pps.hpp"

#include <cmath>

namespace entpdf {

PureState bell_state() {
    Vector4 v(1, 0, 0, 1);
    return PureState(v / std::sqrt(2.0));
}

DensityMatrix build_pps(const PseudoPureSpec& spec) {
    if (spec.epsilon < 0.0 || spec.epsilon > 1.0)
        throw InfeasibleMarkers("epsilon outside [0, 1]");
    Matrix4 m = (1.0 - spec.epsilon) / 4.0 * Matrix4::Identity() +
                spec.epsilon * spec.psi.vec() * spec.psi.vec().adjoint();
    m = ((m + m.adjoint()) / 2.0).eval();
    return DensityMatrix(m);
}

PpsWeights pps_pdf_weights(double epsilon) {
    if (epsilon < 0.0 || epsilon > 1.0)
        throw InfeasibleMarkers("epsilon outside [0, 1]");
    PpsWeights w;
    w.mu1 = 4.0 * epsilon / (1.0 + 3.0 * epsilon);
    w.mu4 = (1.0 - epsilon) / (1.0 + 3.0 * epsilon);
    return w;
}

std::vector<PpsScanRow> concurrence_threshold_scan(const PureState& psi,
                                                   const std::vector<double>& epsilons) {
    std::vector<PpsScanRow> rows;
    rows.reserve(epsilons.size());
    for (double eps : epsilons) {
        DensityMatrix rho = build_pps({eps, psi});
        PpsScanRow row;
        row.epsilon = eps;
        row.mu1 = pps_pdf_weights(eps).mu1;
        row.concurrence = wootters_concurrence(rho);
        row.negativity = negativity(rho);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace entpdf
