#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "entpdf/markers.hpp"
#include "entpdf/quantum.hpp"

namespace entpdf::testing {

// --- Independent oracles. These deliberately avoid the library's code paths
// they are used to check. ---

// Concurrence through the brute-force spin-flip product: eigenvalues of the
// non-normal matrix rho * rho~ taken directly. Independent of the library's
// Hermitian-square-root route; accurate to roughly sqrt(machine epsilon).
inline double concurrence_product_oracle(const Matrix4& rho) {
    Matrix4 yy = Matrix4::Zero();
    yy(0, 3) = -1;
    yy(1, 2) = 1;
    yy(2, 1) = 1;
    yy(3, 0) = -1;
    Matrix4 tilde = yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Matrix4> es(rho * tilde, false);
    Eigen::Vector4d r;
    for (int i = 0; i < 4; ++i)
        r(i) = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
    std::sort(r.data(), r.data() + 4, std::greater<>());
    return std::max(0.0, r(0) - r(1) - r(2) - r(3));
}

// Negativity by explicit index permutation and eigensolve, independent of
// the library's partial_transpose.
inline double negativity_oracle(const Matrix4& rho) {
    Matrix4 pt;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    pt(2 * a + b, 2 * c + d) = rho(2 * a + d, 2 * c + b);
    Eigen::SelfAdjointEigenSolver<Matrix4> es(pt, Eigen::EigenvaluesOnly);
    double neg = 0;
    for (int i = 0; i < 4; ++i) neg += std::min(0.0, es.eigenvalues()(i));
    return -2.0 * neg;
}

// Ginibre recipe reimplemented on the standard library RNG.
inline Matrix4 ginibre_oracle(int rank, std::mt19937_64& eng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::MatrixXcd g(4, rank);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < rank; ++j) g(i, j) = Complex(nd(eng), nd(eng));
    Matrix4 m = g * g.adjoint();
    m /= m.trace().real();
    return ((m + m.adjoint()) / 2.0).eval();
}

// --- Generators ---

inline DensityMatrix density_from_spectrum(const Eigen::Vector4d& lambda,
                                           std::uint64_t seed) {
    // Haar-ish random orthonormal frame from Gram-Schmidt of Gaussian vectors.
    Rng rng(seed);
    Matrix4 frame;
    for (int c = 0; c < 4; ++c) {
        Vector4 v;
        for (int i = 0; i < 4; ++i) v(i) = rng.complex_normal();
        for (int p = 0; p < c; ++p) v -= frame.col(p) * frame.col(p).dot(v);
        frame.col(c) = v.normalized();
    }
    Matrix4 m = Matrix4::Zero();
    for (int c = 0; c < 4; ++c)
        m += lambda(c) * frame.col(c) * frame.col(c).adjoint();
    m = ((m + m.adjoint()) / 2.0).eval();
    m /= m.trace().real();
    return DensityMatrix(m);
}

inline Subspace2 random_subspace(Rng& rng) {
    PureState a = random_pure_state(rng);
    Vector4 b;
    for (int i = 0; i < 4; ++i) b(i) = rng.complex_normal();
    b -= a.vec() * a.vec().dot(b);
    return Subspace2(a, PureState(b.normalized()));
}

// --- Metrics ---

inline double l1_vs_cdf(const Histogram& h, const std::function<double(double)>& cdf) {
    double l1 = 0;
    for (int i = 0; i < h.bins; ++i)
        l1 += std::abs(h.mass(i) - (cdf(h.edge(i + 1)) - cdf(h.edge(i))));
    return l1;
}

inline double l1_between(const Histogram& a, const Histogram& b) {
    double l1 = 0;
    for (int i = 0; i < a.bins; ++i) l1 += std::abs(a.mass(i) - b.mass(i));
    return l1;
}

}  // namespace entpdf::testing
