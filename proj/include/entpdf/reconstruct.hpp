#pragma once

#include "entpdf/markers.hpp"

namespace entpdf {

// Rebuild a density matrix whose marker set matches the input, in the fixed
// canonical gauge: the rank-2 eigenspace is span{(1,0,0,0), (0,x,y,z)} with
// (x,y,z) from invert_pi2, psi1 placed by (theta, phi) and psi4 by
// (theta_perp, phi_perp) in the complement pair. Subspaces with vanishing
// weight fall back to deterministic conventions.
DensityMatrix build_state(const MarkerSet& markers);

// Marker-level equivalence: equal spectra and equal present marker fields
// within `tol` (angles compared circularly). True by construction for states
// related by a local unitary pair.
bool lo_equivalent(const DensityMatrix& a, const DensityMatrix& b, double tol = 1e-6);

// Field-by-field marker distance used by lo_equivalent; infinity when the
// present/absent patterns differ.
double marker_distance(const MarkerSet& a, const MarkerSet& b);

}  // namespace entpdf
