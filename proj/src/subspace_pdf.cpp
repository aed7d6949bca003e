#include "entpdf/subspace_pdf.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace entpdf {

namespace {

const double kPi = std::numbers::pi;

double acosh_inv(double e) {
    // arccosh(1/e) for e in (0, 1]; diverges logarithmically at 0.
    return std::acosh(1.0 / e);
}

}  // namespace

Pi2Markers pi2_markers(double x, double y) {
    if (x < 0 || y < 0 || x * x + y * y > 1.0 + 1e-12)
        throw InfeasibleMarkers("(x, y) outside the canonical quarter disc");
    double z2 = std::max(0.0, 1.0 - x * x - y * y);
    double xy = x * y;
    double s = std::sqrt(z2 + xy * xy);
    double e_max = xy + s;
    if (e_max < 1e-12)
        throw DegenerateSubspace("subspace contains no entangled states");
    Pi2Markers m;
    m.e_max = e_max;
    m.e_cusp = z2 / e_max;
    double sin_mu = 2.0 * std::sqrt(xy * (xy * e_max + z2)) / std::pow(e_max, 1.5);
    m.mu_angle = std::asin(std::min(1.0, sin_mu));
    m.p_at_emax = (sin_mu > 0) ? 1.0 / (e_max * sin_mu)
                               : std::numeric_limits<double>::infinity();
    return m;
}

double pi2_entanglement_at(double x, double y, double theta, double phi) {
    double z = std::sqrt(std::max(0.0, 1.0 - x * x - y * y));
    double st = std::sin(theta);
    double omc = 1.0 - std::cos(theta);
    Complex v = z * st - x * y * omc * std::exp(Complex(0, -phi));
    return std::abs(v);
}

namespace {

// E for the pair measure given the three bilinear-form coefficients and the
// draws t = cos(theta) in [-1,1], phi in [0, 2 pi).
inline double pair_sample_value(Complex q11, Complex q12, Complex q22, double t,
                                double phi) {
    double c = std::cos(phi);
    double s = std::sin(phi);
    Complex e_phi(c, s);
    double c1sq = 0.5 * (1.0 + t);
    double c2sq = 0.5 * (1.0 - t);
    double c1c2 = 0.5 * std::sqrt(std::max(0.0, 1.0 - t * t));
    Complex q = q11 * c1sq * e_phi + 2.0 * q12 * c1c2 + q22 * c2sq * std::conj(e_phi);
    return std::abs(q);
}

}  // namespace

Histogram sample_pair_pdf(const Vector4& v1, const Vector4& v2, std::uint64_t n,
                          std::uint64_t seed, const SampleOptions& opts) {
    Complex q11 = entanglement_form(v1, v1);
    Complex q12 = entanglement_form(v1, v2);
    Complex q22 = entanglement_form(v2, v2);
    return sample_histogram(
        n, seed,
        [=](Rng& rng) {
            double t = rng.uniform(-1.0, 1.0);
            double phi = rng.uniform(0.0, 2.0 * kPi);
            return pair_sample_value(q11, q12, q22, t, phi);
        },
        opts);
}

Histogram sample_pi2(double x, double y, std::uint64_t n, std::uint64_t seed,
                     const SampleOptions& opts) {
    double z = std::sqrt(std::max(0.0, 1.0 - x * x - y * y));
    Vector4 chi2(0, x, y, z);
    return sample_pair_pdf(Vector4(1, 0, 0, 0), chi2, n, seed, opts);
}

double pi3_density(double e, double e_perp) {
    if (e_perp >= 1.0 - 1e-12)
        throw DivergentDual("dual state is maximally entangled");
    if (e_perp < 0) throw InfeasibleMarkers("e_perp must be nonnegative");
    if (e <= 0.0 || e >= 1.0) return 0.0;
    double e_gt = std::max(e, e_perp);
    return 2.0 * e / std::sqrt(1.0 - e_perp * e_perp) * acosh_inv(e_gt);
}

double pi3_cdf(double e, double e_perp) {
    if (e_perp >= 1.0 - 1e-12)
        throw DivergentDual("dual state is maximally entangled");
    double k = 1.0 / std::sqrt(1.0 - e_perp * e_perp);
    auto upper_part = [](double v) {
        // Antiderivative of 2E arccosh(1/E): E^2 arccosh(1/E) - sqrt(1-E^2).
        if (v >= 1.0) return 0.0;
        if (v <= 0.0) return -1.0;
        return v * v * acosh_inv(v) - std::sqrt(1.0 - v * v);
    };
    if (e <= 0.0) return 0.0;
    if (e >= 1.0) return 1.0;
    if (e_perp <= 0.0) return k * (upper_part(e) - upper_part(0.0));
    if (e <= e_perp) return k * acosh_inv(e_perp) * e * e;
    return k * (acosh_inv(e_perp) * e_perp * e_perp + upper_part(e) - upper_part(e_perp));
}

Histogram sample_pi3_value(double e_perp, std::uint64_t n, std::uint64_t seed,
                           const SampleOptions& opts) {
    if (e_perp >= 1.0 - 1e-12)
        throw DivergentDual("dual state is maximally entangled");
    // Canonical frame: the dual sits in the up-down / down-up sector, so the
    // rank-3 complement is spanned by the separable pair up-up, down-down and
    // one entangled vector carrying the same entanglement as the dual. The
    // phases alpha, gamma run over the full circle: the map (alpha, gamma) ->
    // (alpha + gamma, alpha - gamma) must cover the two relative-phase
    // circles evenly, which half-ranges do not.
    return sample_histogram(
        n, seed,
        [=](Rng& rng) {
            double u = rng.uniform();
            double sin_t = std::pow(u, 0.25);            // sin^4(theta) uniform
            double cos_t = std::sqrt(std::max(0.0, 1.0 - sin_t * sin_t));
            double v = rng.uniform(-1.0, 1.0);           // cos(2 beta) uniform
            double cos_b = std::sqrt(0.5 * (1.0 + v));
            double sin_b2 = 0.5 * (1.0 - v);
            double alpha = rng.uniform(0.0, 2.0 * kPi);
            double gamma = rng.uniform(0.0, 2.0 * kPi);
            double a = 2.0 * sin_t * cos_t * cos_b;
            double b = sin_t * sin_t * sin_b2 * e_perp;
            double c = std::cos(alpha - 3.0 * gamma);
            return std::sqrt(std::max(0.0, a * a + b * b + 2.0 * a * b * c));
        },
        opts);
}

Histogram sample_pi3(const PureState& e_perp_state, std::uint64_t n, std::uint64_t seed,
                     const SampleOptions& opts) {
    // The PDF depends on the dual only through its entanglement, so sampling
    // happens in the local-operation frame of the complement.
    return sample_pi3_value(pure_entanglement(e_perp_state), n, seed, opts);
}

double pi4_density(double e) {
    if (e <= 0.0 || e >= 1.0) return 0.0;
    return 3.0 * e * std::sqrt(1.0 - e * e);
}

double pi4_cdf(double e) {
    if (e <= 0.0) return 0.0;
    if (e >= 1.0) return 1.0;
    return 1.0 - std::pow(1.0 - e * e, 1.5);
}

Histogram sample_pi4(std::uint64_t n, std::uint64_t seed, const SampleOptions& opts) {
    return sample_histogram(
        n, seed,
        [](Rng& rng) {
            Complex a0 = rng.complex_normal();
            Complex a1 = rng.complex_normal();
            Complex a2 = rng.complex_normal();
            Complex a3 = rng.complex_normal();
            double n2 = std::norm(a0) + std::norm(a1) + std::norm(a2) + std::norm(a3);
            return 2.0 * std::abs(a0 * a3 - a1 * a2) / n2;
        },
        opts);
}

CanonicalTriple invert_pi2(double e_max, double e_cusp) {
    if (!(e_max >= 0) || !(e_cusp >= 0) || e_cusp > e_max + 1e-12 || e_max > 1.0 + 1e-12)
        throw InfeasibleMarkers("need 0 <= e_cusp <= e_max <= 1");
    double z2 = e_cusp * e_max;
    if (z2 > 1.0 + 1e-12) throw InfeasibleMarkers("e_cusp * e_max exceeds 1");
    double xy = 0.5 * (e_max - e_cusp);
    double s2 = 1.0 - z2;  // x^2 + y^2
    double disc = s2 * s2 - 4.0 * xy * xy;
    if (disc < -1e-12) throw InfeasibleMarkers("markers admit no canonical subspace");
    disc = std::max(0.0, disc);
    CanonicalTriple t;
    double q = 0.5 * (s2 + std::sqrt(disc));  // x^2, taking x >= y
    t.x = std::sqrt(q);
    t.y = (t.x > 1e-15) ? xy / t.x : 0.0;
    t.z = std::sqrt(std::max(0.0, z2));
    return t;
}

Atom pi1_atom(const PureState& psi) {
    return Atom{1.0, pure_entanglement(psi)};
}

}  // namespace entpdf
