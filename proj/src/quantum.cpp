#include "entpdf/quantum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace entpdf {

namespace {

std::string fmt_residual(const char* what, double residual) {
    std::ostringstream os;
    os << what << " (residual " << residual << ")";
    return os.str();
}

}  // namespace

PureState::PureState(const Vector4& amplitudes) : v_(amplitudes) {
    if (!v_.allFinite()) throw NotNormalized("pure state has non-finite amplitudes");
    double n = v_.norm();
    if (std::abs(n - 1.0) > kNormTol)
        throw NotNormalized(fmt_residual("pure state norm != 1", std::abs(n - 1.0)));
}

DensityMatrix::DensityMatrix(const Matrix4& m) : m_(m) {
    if (!m_.allFinite()) throw NotHermitian("density matrix has non-finite entries");
    double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermTol) throw NotHermitian(fmt_residual("matrix is not Hermitian", herm));
    double tr = std::abs(m_.trace() - Complex(1.0, 0.0));
    if (tr > kTraceTol) throw TraceNotOne(fmt_residual("trace != 1", tr));
    Eigen::SelfAdjointEigenSolver<Matrix4> es(m_, Eigen::EigenvaluesOnly);
    double lmin = es.eigenvalues().minCoeff();
    if (lmin < -kEigTol) throw NotPositive(fmt_residual("negative eigenvalue", -lmin));
}

Vector4 phase_fix_vector(const Vector4& v) {
    int imax = 0;
    double best = 0.0;
    for (int i = 0; i < 4; ++i) {
        double a = std::abs(v(i));
        if (a > best + 1e-15) {
            best = a;
            imax = i;
        }
    }
    Complex w = v(imax);
    if (std::abs(w) < 1e-300) return v;
    return v * (std::conj(w) / std::abs(w));
}

SpectralDecomposition eig_hermitian(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix4> es(rho.mat());
    SpectralDecomposition out;
    // Eigen returns ascending order; reverse it.
    for (int i = 0; i < 4; ++i) {
        out.eigenvalues(i) = es.eigenvalues()(3 - i);
        out.eigenvectors[i] = phase_fix_vector(es.eigenvectors().col(3 - i));
    }
    // Deterministic ordering inside degenerate blocks: sort by the index of
    // the largest-magnitude component.
    auto largest_index = [](const Vector4& v) {
        int imax = 0;
        double best = 0.0;
        for (int i = 0; i < 4; ++i) {
            double a = std::abs(v(i));
            if (a > best + 1e-15) {
                best = a;
                imax = i;
            }
        }
        return imax;
    };
    int i = 0;
    while (i < 4) {
        int j = i;
        while (j + 1 < 4 &&
               std::abs(out.eigenvalues(j) - out.eigenvalues(j + 1)) < kDegenTol)
            ++j;
        if (j > i) {
            std::sort(out.eigenvectors.begin() + i, out.eigenvectors.begin() + j + 1,
                      [&](const Vector4& a, const Vector4& b) {
                          return largest_index(a) < largest_index(b);
                      });
        }
        i = j + 1;
    }
    return out;
}

double entanglement_of_vector(const Vector4& v) {
    return 2.0 * std::abs(v(0) * v(3) - v(1) * v(2));
}

double pure_entanglement(const PureState& psi) {
    return entanglement_of_vector(psi.vec());
}

Matrix4 partial_transpose(const Matrix4& m, Subsystem which) {
    Matrix4 out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    int row = 2 * a + b;
                    int col = 2 * c + d;
                    if (which == Subsystem::Second)
                        out(row, col) = m(2 * a + d, 2 * c + b);
                    else
                        out(row, col) = m(2 * c + b, 2 * a + d);
                }
    return out;
}

double negativity(const DensityMatrix& rho) {
    Matrix4 pt = partial_transpose(rho.mat(), Subsystem::Second);
    Eigen::SelfAdjointEigenSolver<Matrix4> es(pt, Eigen::EigenvaluesOnly);
    double neg = 0.0;
    for (int i = 0; i < 4; ++i) {
        double l = es.eigenvalues()(i);
        if (l < 0.0) neg -= l;
    }
    return 2.0 * neg;
}

double wootters_concurrence(const DensityMatrix& rho) {
    // sigma_y (x) sigma_y in the product basis.
    Matrix4 yy = Matrix4::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Matrix4& m = rho.mat();
    Matrix4 tilde = yy * m.conjugate() * yy;
    // The r_i are the eigenvalues of rho * tilde; computing them through the
    // Hermitian matrix sqrt(rho) tilde sqrt(rho) keeps full precision where
    // the non-normal product loses half the digits.
    Eigen::SelfAdjointEigenSolver<Matrix4> er(m);
    Matrix4 sqrt_rho = Matrix4::Zero();
    for (int i = 0; i < 4; ++i) {
        // Clamp the sub-roundoff tail: sqrt(1e-16) noise would otherwise
        // contaminate the product at the 1e-8 level.
        double l = er.eigenvalues()(i);
        if (l < 1e-14) l = 0.0;
        sqrt_rho +=
            std::sqrt(l) * er.eigenvectors().col(i) * er.eigenvectors().col(i).adjoint();
    }
    Matrix4 x = sqrt_rho * tilde * sqrt_rho;
    x = ((x + x.adjoint()) / 2.0).eval();
    Eigen::SelfAdjointEigenSolver<Matrix4> es(x, Eigen::EigenvaluesOnly);
    // Eigenvalues at the roundoff floor of the triple product are exact
    // zeros of the rank-deficient spin-flip spectrum; the square root would
    // blow their noise up to 1e-8.
    double floor = 1e-13 * std::max(es.eigenvalues().maxCoeff(), 0.0);
    std::array<double, 4> r;
    for (int i = 0; i < 4; ++i) {
        double l = es.eigenvalues()(i);
        r[i] = (l > floor) ? std::sqrt(l) : 0.0;
    }
    std::sort(r.begin(), r.end(), std::greater<>());
    return std::max(0.0, r[0] - r[1] - r[2] - r[3]);
}

DensityMatrix random_density_matrix(int rank, Rng& rng) {
    if (rank < 1 || rank > 4) throw InvalidRank("rank must be in 1..4");
    Eigen::MatrixXcd g(4, rank);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < rank; ++j) g(i, j) = rng.complex_normal();
    Matrix4 m = g * g.adjoint();
    m /= m.trace().real();
    // Symmetrize away the last-ulp asymmetry before validation.
    m = ((m + m.adjoint()) / 2.0).eval();
    return DensityMatrix(m);
}

DensityMatrix random_density_matrix(int rank, std::uint64_t seed) {
    Rng rng(seed);
    return random_density_matrix(rank, rng);
}

PureState random_pure_state(Rng& rng) {
    Vector4 v;
    for (int i = 0; i < 4; ++i) v(i) = rng.complex_normal();
    v.normalize();
    return PureState(v);
}

PureState random_pure_state(std::uint64_t seed) {
    Rng rng(seed);
    return random_pure_state(rng);
}

Matrix2 random_local_unitary(Rng& rng) {
    // QR of a 2x2 Ginibre matrix with the R-diagonal phase fixed.
    Matrix2 g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = rng.complex_normal();
    Eigen::HouseholderQR<Matrix2> qr(g);
    Matrix2 q = qr.householderQ();
    Matrix2 r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < 2; ++i) {
        Complex d = r(i, i);
        q.col(i) *= (std::abs(d) > 0 ? d / std::abs(d) : Complex(1, 0));
    }
    return q;
}

Matrix4 kron2(const Matrix2& a, const Matrix2& b) {
    Matrix4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

}  // namespace entpdf
