#include "entpdf/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace entpdf {

namespace {

const double kPi = std::numbers::pi;

Vector4 orthogonal_partner_in_pair(const BlochAngles& ang, const Vector4& v1,
                                   const Vector4& v2) {
    Complex a1 = -std::sin(ang.theta / 2.0) * std::exp(Complex(0, ang.phi / 2.0));
    Complex a2 = std::cos(ang.theta / 2.0) * std::exp(Complex(0, -ang.phi / 2.0));
    return a1 * v1 + a2 * v2;
}

double circular_diff(double a, double b) {
    double d = std::fmod(std::abs(a - b), 2.0 * kPi);
    return std::min(d, 2.0 * kPi - d);
}

}  // namespace

DensityMatrix build_state(const MarkerSet& markers) {
    const auto& mu = markers.mu.mu;
    for (int i = 0; i < 4; ++i)
        if (mu(i) < -1e-9) throw InfeasibleMarkers("negative weight");
    if (std::abs(mu.sum() - 1.0) > 1e-9)
        throw InfeasibleMarkers("weights do not sum to 1");
    const double mu1 = mu(0), mu2 = mu(1), mu3 = mu(2), mu4 = mu(3);

    Vector4 psi1, psi2, psi3, psi4;
    if (mu2 > kWeightTol) {
        if (!markers.pi2) throw MissingAngles("rank-2 markers required when mu2 > 0");
        if (markers.pi2->e_cusp > markers.pi2->e_max + 1e-12)
            throw InfeasibleMarkers("e_cusp exceeds e_max");
        CanonicalTriple t{1.0, 0.0, 0.0};
        if (markers.pi2->e_max >= 1e-12)
            t = invert_pi2(markers.pi2->e_max, markers.pi2->e_cusp);
        Vector4 chi1(1, 0, 0, 0);
        Vector4 chi2(0, t.x, t.y, t.z);

        if (mu1 > kWeightTol) {
            if (!markers.angles)
                throw MissingAngles("(theta, phi) required when mu1, mu2 > 0");
            psi1 = synthesize_in_pair(*markers.angles, chi1, chi2);
            psi2 = orthogonal_partner_in_pair(*markers.angles, chi1, chi2);
            if (markers.e1 &&
                std::abs(entanglement_of_vector(psi1) - *markers.e1) > 1e-6)
                throw InfeasibleMarkers("e1 inconsistent with (theta, phi)");
        } else {
            psi1 = chi1;
            psi2 = chi2;
        }

        SubspaceCanonicalForm form;
        form.x = t.x;
        form.y = t.y;
        form.z = t.z;
        form.u1 = Matrix2::Identity();
        form.u2 = Matrix2::Identity();
        auto [c1, c2] = complement_basis_or_fallback(form);
        if (mu3 > kWeightTol) {
            if (!markers.angles_perp)
                throw MissingAngles("(theta_perp, phi_perp) required when mu2, mu3 > 0");
            psi4 = synthesize_in_pair(*markers.angles_perp, c1, c2);
            psi3 = orthogonal_partner_in_pair(*markers.angles_perp, c1, c2);
            if (markers.e_perp &&
                std::abs(entanglement_of_vector(psi4) - *markers.e_perp) > 1e-6)
                throw InfeasibleMarkers("e_perp inconsistent with (theta_perp, phi_perp)");
        } else {
            psi3 = c1;
            psi4 = c2;
        }
    } else {
        // Degenerate lambda2 = lambda3: the rank-2 eigenspace carries no
        // weight and the gauge is free. Place psi1 in the up-up / down-down
        // sector and psi4 in the mirror sector; orthogonality is automatic.
        double e1 = (mu1 > kWeightTol && markers.e1) ? *markers.e1 : 0.0;
        if (mu1 > kWeightTol && !markers.e1)
            throw MissingAngles("e1 required when mu1 > 0");
        if (e1 < -1e-12 || e1 > 1.0 + 1e-12)
            throw InfeasibleMarkers("e1 outside [0, 1]");
        double d1 = 0.5 * std::asin(std::clamp(e1, 0.0, 1.0));
        psi1 = Vector4(std::cos(d1), 0, 0, std::sin(d1));
        psi2 = Vector4(-std::sin(d1), 0, 0, std::cos(d1));

        double ep = 0.0;
        if (mu3 > kWeightTol) {
            if (!markers.e_perp) throw MissingAngles("e_perp required when mu3 > 0");
            ep = *markers.e_perp;
            if (ep < -1e-12 || ep > 1.0 + 1e-12)
                throw InfeasibleMarkers("e_perp outside [0, 1]");
        }
        double d4 = 0.5 * std::asin(std::clamp(ep, 0.0, 1.0));
        psi4 = Vector4(0, std::cos(d4), std::sin(d4), 0);
        psi3 = Vector4(0, -std::sin(d4), std::cos(d4), 0);
    }

    double lambda1 = 1.0 / (mu1 + 2.0 * mu2 + 3.0 * mu3 + 4.0 * mu4);
    Eigen::Vector4d lam;
    lam(3) = lambda1 * mu4;
    lam(2) = lam(3) + lambda1 * mu3;
    lam(1) = lam(2) + lambda1 * mu2;
    lam(0) = lam(1) + lambda1 * mu1;

    Matrix4 rho = lam(0) * psi1 * psi1.adjoint() + lam(1) * psi2 * psi2.adjoint() +
                  lam(2) * psi3 * psi3.adjoint() + lam(3) * psi4 * psi4.adjoint();
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    rho /= rho.trace().real();
    return DensityMatrix(rho);
}

double marker_distance(const MarkerSet& a, const MarkerSet& b) {
    const double inf = std::numeric_limits<double>::infinity();
    double d = (a.mu.mu - b.mu.mu).cwiseAbs().maxCoeff();

    auto both = [&](const auto& x, const auto& y) {
        if (x.has_value() != y.has_value()) return -1;
        return x.has_value() ? 1 : 0;
    };

    int s = both(a.e1, b.e1);
    if (s < 0) return inf;
    if (s > 0) d = std::max(d, std::abs(*a.e1 - *b.e1));

    s = both(a.pi2, b.pi2);
    if (s < 0) return inf;
    if (s > 0) {
        d = std::max(d, std::abs(a.pi2->e_max - b.pi2->e_max));
        d = std::max(d, std::abs(a.pi2->e_cusp - b.pi2->e_cusp));
    }

    s = both(a.e_perp, b.e_perp);
    if (s < 0) return inf;
    if (s > 0) d = std::max(d, std::abs(*a.e_perp - *b.e_perp));

    s = both(a.angles, b.angles);
    if (s < 0) return inf;
    if (s > 0) {
        d = std::max(d, std::abs(a.angles->theta - b.angles->theta));
        d = std::max(d, circular_diff(a.angles->phi, b.angles->phi));
    }

    s = both(a.angles_perp, b.angles_perp);
    if (s < 0) return inf;
    if (s > 0) {
        d = std::max(d, std::abs(a.angles_perp->theta - b.angles_perp->theta));
        d = std::max(d, circular_diff(a.angles_perp->phi, b.angles_perp->phi));
    }
    return d;
}

bool lo_equivalent(const DensityMatrix& a, const DensityMatrix& b, double tol) {
    Eigen::Vector4d la = eig_hermitian(a).eigenvalues;
    Eigen::Vector4d lb = eig_hermitian(b).eigenvalues;
    if ((la - lb).cwiseAbs().maxCoeff() > tol) return false;
    return marker_distance(extract_markers(a), extract_markers(b)) <= tol;
}

}  // namespace entpdf
