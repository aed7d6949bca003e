#pragma once

#include <cstdint>

#include "entpdf/quantum.hpp"
#include "entpdf/sampling.hpp"
#include "entpdf/subspace.hpp"

namespace entpdf {

// Entanglement PDF markers of a canonical 2-dimensional subspace.
struct Pi2Markers {
    double e_max = 0;      // support edge
    double e_cusp = 0;     // integrable divergence
    double p_at_emax = 0;  // density at the support edge, >= 1/e_max
    double mu_angle = 0;   // arcsin(1 / (e_max * p_at_emax)), in [0, pi/2]
};

// Closed-form markers from the canonical parameters (x, y), z implied.
// Throws DegenerateSubspace when the subspace carries no entanglement.
Pi2Markers pi2_markers(double x, double y);

// Entanglement |z sin(theta) - x y (1 - cos(theta)) e^{-i phi}| of the state
// at Bloch angles (theta, phi) in the canonical subspace.
double pi2_entanglement_at(double x, double y, double theta, double phi);

// Uniform-measure sampler over the canonical subspace (cos(theta) uniform on
// [-1,1], phi uniform on [0, 2 pi)).
Histogram sample_pi2(double x, double y, std::uint64_t n, std::uint64_t seed,
                     const SampleOptions& opts = {});

// Sampler over an arbitrary orthonormal pair with the same measure; used to
// compare a subspace to its orthogonal complement.
Histogram sample_pair_pdf(const Vector4& v1, const Vector4& v2, std::uint64_t n,
                          std::uint64_t seed, const SampleOptions& opts = {});

// Density of the rank-3 projection PDF: (2E / sqrt(1 - e_perp^2)) *
// arccosh(1 / max(E, e_perp)). Throws DivergentDual for e_perp -> 1.
double pi3_density(double e, double e_perp);

// Antiderivative of pi3_density (zero at 0); pi3_cdf(1, .) == 1 exactly.
double pi3_cdf(double e, double e_perp);

// Haar sampler over the rank-3 subspace orthogonal to the given dual state.
Histogram sample_pi3(const PureState& e_perp_state, std::uint64_t n, std::uint64_t seed,
                     const SampleOptions& opts = {});
Histogram sample_pi3_value(double e_perp, std::uint64_t n, std::uint64_t seed,
                           const SampleOptions& opts = {});

// Universal full-space density 3E sqrt(1-E^2) and its antiderivative. The
// closed form is validated against the Monte-Carlo sampler in the tests.
double pi4_density(double e);
double pi4_cdf(double e);

// Haar sampler over the full space (normalized complex Gaussian 4-vectors).
Histogram sample_pi4(std::uint64_t n, std::uint64_t seed,
                     const SampleOptions& opts = {});

// Inverse of pi2_markers up to the x <-> y swap; the convention x >= y is
// returned. Throws InfeasibleMarkers when no canonical triple exists.
struct CanonicalTriple {
    double x = 0, y = 0, z = 0;
};

CanonicalTriple invert_pi2(double e_max, double e_cusp);

struct Atom {
    double weight = 0;
    double location = 0;
};

// Rank-1 projections have a pure point spectrum: a unit atom at E(psi).
Atom pi1_atom(const PureState& psi);

}  // namespace entpdf
