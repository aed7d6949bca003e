#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>

#include "entpdf/errors.hpp"
#include "entpdf/rng.hpp"

namespace entpdf {

using Complex = std::complex<double>;
using Matrix4 = Eigen::Matrix4cd;
using Matrix2 = Eigen::Matrix2cd;
using Vector4 = Eigen::Vector4cd;
using Vector2 = Eigen::Vector2cd;

// Validation tolerances for states deserialized from 15-digit text.
inline constexpr double kHermTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kEigTol = 1e-9;
inline constexpr double kNormTol = 1e-12;
// Eigenvalues closer than this are treated as a degenerate block.
inline constexpr double kDegenTol = 1e-10;

// Product-basis ordering is (up-up, up-down, down-up, down-down).

// Normalized pure state of two qubits.
class PureState {
  public:
    explicit PureState(const Vector4& amplitudes);
    const Vector4& vec() const { return v_; }
    Complex operator[](int i) const { return v_(i); }

  private:
    Vector4 v_;
};

// Unit-trace positive Hermitian 4x4 matrix.
class DensityMatrix {
  public:
    explicit DensityMatrix(const Matrix4& m);
    const Matrix4& mat() const { return m_; }

  private:
    Matrix4 m_;
};

struct SpectralDecomposition {
    Eigen::Vector4d eigenvalues;           // non-increasing
    std::array<Vector4, 4> eigenvectors;   // orthonormal, phase-fixed
};

// Eigendecomposition with descending eigenvalues. Each eigenvector is
// oriented so its largest-magnitude component is real positive; within a
// degenerate block vectors are ordered by the index of that component.
SpectralDecomposition eig_hermitian(const DensityMatrix& rho);

// 2|a1*a4 - a2*a3| for amplitudes (a1..a4); invariant under local unitaries.
double pure_entanglement(const PureState& psi);

// Same quantity evaluated without the normalization check (internal use on
// freshly synthesized unit vectors).
double entanglement_of_vector(const Vector4& v);

// Spin-flip concurrence of a mixed state.
double wootters_concurrence(const DensityMatrix& rho);

// max(0, -2 sum of negative partial-transpose eigenvalues); equals 1 on a
// Bell projector under this normalization.
double negativity(const DensityMatrix& rho);

enum class Subsystem { First, Second };

Matrix4 partial_transpose(const Matrix4& m, Subsystem which);

// G G^dag / tr(G G^dag) with G a 4 x rank matrix of standard complex
// Gaussian entries; deterministic per seed.
DensityMatrix random_density_matrix(int rank, std::uint64_t seed);
DensityMatrix random_density_matrix(int rank, Rng& rng);

// Haar-uniform state on the full 4-dimensional sphere.
PureState random_pure_state(std::uint64_t seed);
PureState random_pure_state(Rng& rng);

// Haar-random single-qubit unitary (used to exercise local-operation
// invariance in tests and the reconstruction pipeline).
Matrix2 random_local_unitary(Rng& rng);

Matrix4 kron2(const Matrix2& a, const Matrix2& b);

// Phase-normalize so the largest-magnitude component is real positive.
Vector4 phase_fix_vector(const Vector4& v);

}  // namespace entpdf
