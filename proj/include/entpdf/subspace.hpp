#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "entpdf/quantum.hpp"

namespace entpdf {

// Two-dimensional subspace given by an orthonormal basis pair.
class Subspace2 {
  public:
    Subspace2(const PureState& b1, const PureState& b2);
    const Vector4& b1() const { return b1_; }
    const Vector4& b2() const { return b2_; }

  private:
    Vector4 b1_, b2_;
};

struct SeparableStates {
    bool all = false;               // every state in the span is separable
    std::vector<Vector4> states;    // otherwise one or two product states
};

// Roots of the separability quadratic inside the span. Returned states are
// normalized, phase-fixed, and have entanglement below 1e-9.
SeparableStates find_separable_states(const Subspace2& s);

// Local-operation image of a subspace: the span of (1,0,0,0) and (0,x,y,z)
// with x,y,z >= 0. `u1`,`u2` carry the full local rotation (z-phases folded
// in); `phase_fix` = {a, b, c} records the solved phase system, where c is
// the global phase of the map and a+b+c the residual phase left on chi1.
struct SubspaceCanonicalForm {
    double x = 0, y = 0, z = 0;
    Matrix2 u1, u2;
    std::array<double, 3> phase_fix{};
    Vector4 source_chi1;   // separable state picked inside the span
    Vector4 source_chi2;   // its in-span orthogonal partner

    Vector4 canonical_chi1() const { return Vector4(1, 0, 0, 0); }
    Vector4 canonical_chi2() const { return Vector4(0, x, y, z); }

    // The local-operation map including its global phase: chi2 goes exactly
    // to (0,x,y,z); chi1 goes to (1,0,0,0) times exp(i(a+b+c)).
    Vector4 map(const Vector4& v) const;
    Vector4 unmap(const Vector4& v) const;
};

// Bring a subspace to canonical form. When `anchor` is given, the separable
// state with the larger overlap against it is chosen as chi1; otherwise the
// quadratic root with the smaller principal argument wins.
SubspaceCanonicalForm canonicalize(const Subspace2& s,
                                   const std::optional<PureState>& anchor = std::nullopt);

// Canonical basis of the orthogonal complement, expressed in canonical
// coordinates. Throws DegenerateComplement when y and z both vanish.
std::pair<Vector4, Vector4> complement_basis(const SubspaceCanonicalForm& c);

// Gram-Schmidt completion used where the closed-form complement degenerates.
std::pair<Vector4, Vector4> complement_basis_or_fallback(const SubspaceCanonicalForm& c);

struct BlochAngles {
    double theta = 0;   // [0, pi]
    double phi = 0;     // [0, 2*pi)
};

// Angles of `psi` with respect to the canonical pair of `c`, following the
// expansion chi1 cos(theta/2) e^{i phi/2} + chi2 sin(theta/2) e^{-i phi/2}.
BlochAngles bloch_angles(const PureState& psi, const SubspaceCanonicalForm& c);

// Same decomposition against an arbitrary orthonormal pair in canonical
// coordinates (used for the complement basis). `g` is an already-mapped
// vector.
BlochAngles bloch_angles_in_pair(const Vector4& g, const Vector4& v1, const Vector4& v2);

// Inverse of bloch_angles: the state in original coordinates.
PureState synthesize(const BlochAngles& ang, const SubspaceCanonicalForm& c);

Vector4 synthesize_in_pair(const BlochAngles& ang, const Vector4& v1, const Vector4& v2);

// Bilinear form underlying pure_entanglement: Q(u,v) = u1 v4 + u4 v1 - u2 v3
// - u3 v2, so that E(psi) = |Q(psi, psi)|.
Complex entanglement_form(const Vector4& u, const Vector4& v);

}  // namespace entpdf
