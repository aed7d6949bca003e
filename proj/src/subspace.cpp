#include "entpdf/subspace.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace entpdf {

namespace {

constexpr double kOrthoTol = 1e-9;
const double kPi = std::numbers::pi;

double wrap_2pi(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0) a += 2.0 * kPi;
    if (a >= 2.0 * kPi) a = 0.0;
    return a;
}

// Selection key for the default root convention: closeness of the quadratic
// root c1/c2 to the positive real axis, preferring the larger |root| on ties
// (so an already-canonical chi1 keeps winning).
struct RootKey {
    double abs_arg;
    double neg_abs;
};

RootKey root_key(const Subspace2& s, const Vector4& state) {
    Complex c1 = s.b1().dot(state);
    Complex c2 = s.b2().dot(state);
    if (std::abs(c2) < 1e-12) return {0.0, -std::numeric_limits<double>::infinity()};
    Complex t = c1 / c2;
    return {std::abs(std::arg(t)), -std::abs(t)};
}

bool key_less(const RootKey& a, const RootKey& b) {
    if (std::abs(a.abs_arg - b.abs_arg) > 1e-12) return a.abs_arg < b.abs_arg;
    return a.neg_abs < b.neg_abs;
}

// Rank-1 factorization chi = u (x) v via the 2x2 reshape.
void factor_product_state(const Vector4& chi, Vector2& u, Vector2& v) {
    Matrix2 m;
    m << chi(0), chi(1), chi(2), chi(3);
    Eigen::JacobiSVD<Matrix2> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    u = svd.matrixU().col(0);
    v = svd.matrixV().col(0).conjugate();
}

Matrix2 unitary_sending_to_e1(const Vector2& u) {
    Matrix2 m;
    m << std::conj(u(0)), std::conj(u(1)), -u(1), u(0);
    return m;
}

}  // namespace

Complex entanglement_form(const Vector4& u, const Vector4& v) {
    return u(0) * v(3) + u(3) * v(0) - u(1) * v(2) - u(2) * v(1);
}

Subspace2::Subspace2(const PureState& b1, const PureState& b2)
    : b1_(b1.vec()), b2_(b2.vec()) {
    double overlap = std::abs(b1_.dot(b2_));
    if (overlap > kOrthoTol)
        throw NotNormalized("subspace basis is not orthogonal");
}

SeparableStates find_separable_states(const Subspace2& s) {
    const Vector4& b1 = s.b1();
    const Vector4& b2 = s.b2();
    Complex qa = entanglement_form(b1, b1);
    Complex qb = entanglement_form(b1, b2);
    Complex qc = entanglement_form(b2, b2);
    double scale = std::max({std::abs(qa), std::abs(qb), std::abs(qc)});

    SeparableStates out;
    if (scale < 1e-12) {
        out.all = true;
        return out;
    }

    auto push = [&](Complex c1, Complex c2) {
        Vector4 v = c1 * b1 + c2 * b2;
        double n = v.norm();
        if (n < 1e-12) return;
        v = phase_fix_vector(v / n);
        for (const Vector4& seen : out.states)
            if (std::abs(seen.dot(v)) > 1.0 - 1e-12) return;
        out.states.push_back(v);
    };

    if (std::abs(qa) < 1e-13 * scale) {
        // b1 itself is separable; the quadratic degenerates to linear.
        push(1.0, 0.0);
        if (std::abs(qb) > 1e-13 * scale) push(-qc, 2.0 * qb);
    } else {
        Complex disc = std::sqrt(qb * qb - qa * qc);
        push((-qb + disc), qa);
        push((-qb - disc), qa);
    }

    std::sort(out.states.begin(), out.states.end(),
              [&](const Vector4& a, const Vector4& b) {
                  return key_less(root_key(s, a), root_key(s, b));
              });
    return out;
}

Vector4 SubspaceCanonicalForm::map(const Vector4& v) const {
    return std::exp(Complex(0, phase_fix[2])) * (kron2(u1, u2) * v);
}

Vector4 SubspaceCanonicalForm::unmap(const Vector4& v) const {
    return std::exp(Complex(0, -phase_fix[2])) * (kron2(u1, u2).adjoint() * v);
}

SubspaceCanonicalForm canonicalize(const Subspace2& s,
                                   const std::optional<PureState>& anchor) {
    SeparableStates roots = find_separable_states(s);

    Vector4 chi1;
    if (roots.all) {
        if (anchor) {
            // Every state is separable; project the anchor into the span.
            Vector4 p = s.b1() * s.b1().dot(anchor->vec()) +
                        s.b2() * s.b2().dot(anchor->vec());
            chi1 = (p.norm() > 1e-6) ? phase_fix_vector(p.normalized())
                                     : s.b1();
        } else {
            chi1 = s.b1();
        }
    } else if (anchor && roots.states.size() > 1) {
        double best = -1.0;
        for (const Vector4& r : roots.states) {
            double ov = std::abs(r.dot(anchor->vec()));
            if (ov > best + 1e-12) {
                best = ov;
                chi1 = r;
            }
        }
    } else {
        chi1 = roots.states.front();
    }

    // In-span orthogonal partner of chi1.
    const Vector4& g = (std::abs(chi1.dot(s.b1())) <= std::abs(chi1.dot(s.b2())))
                           ? s.b1()
                           : s.b2();
    Vector4 chi2 = g - chi1 * chi1.dot(g);
    chi2 = phase_fix_vector(chi2.normalized());

    Vector2 u, v;
    factor_product_state(chi1, u, v);
    Matrix2 w1 = unitary_sending_to_e1(u);
    Matrix2 w2 = unitary_sending_to_e1(v);

    Vector4 w = kron2(w1, w2) * chi2;
    auto neg_arg = [](Complex c) { return std::abs(c) > 1e-14 ? -std::arg(c) : 0.0; };
    double p2 = neg_arg(w(1));
    double p3 = neg_arg(w(2));
    double p4 = neg_arg(w(3));
    double a = (p2 - p4) / 2.0;
    double b = (p3 - p4) / 2.0;
    double c = (p2 + p3) / 2.0;

    Matrix2 r1 = Matrix2::Zero(), r2 = Matrix2::Zero();
    r1(0, 0) = std::exp(Complex(0, a));
    r1(1, 1) = std::exp(Complex(0, -a));
    r2(0, 0) = std::exp(Complex(0, b));
    r2(1, 1) = std::exp(Complex(0, -b));

    SubspaceCanonicalForm out;
    out.u1 = r1 * w1;
    out.u2 = r2 * w2;
    out.phase_fix = {a, b, c};
    out.x = std::abs(w(1));
    out.y = std::abs(w(2));
    out.z = std::abs(w(3));
    out.source_chi1 = chi1;
    out.source_chi2 = chi2;
    return out;
}

std::pair<Vector4, Vector4> complement_basis(const SubspaceCanonicalForm& c) {
    double s2 = c.y * c.y + c.z * c.z;
    if (s2 < 1e-12)
        throw DegenerateComplement("complement formulas degenerate at y = z = 0");
    double s = std::sqrt(s2);
    Vector4 c1(0, 0, c.z / s, -c.y / s);
    Vector4 c2(0, s, -c.x * c.y / s, -c.x * c.z / s);
    return {c1, c2};
}

std::pair<Vector4, Vector4> complement_basis_or_fallback(const SubspaceCanonicalForm& c) {
    try {
        return complement_basis(c);
    } catch (const DegenerateComplement&) {
        // Gram-Schmidt of the computational basis against the canonical pair.
        Vector4 p1 = c.canonical_chi1();
        Vector4 p2 = c.canonical_chi2();
        std::vector<Vector4> kept;
        for (int i = 1; i < 4 && kept.size() < 2; ++i) {
            Vector4 e = Vector4::Zero();
            e(i) = 1.0;
            Vector4 r = e - p1 * p1.dot(e) - p2 * p2.dot(e);
            for (const Vector4& k : kept) r -= k * k.dot(r);
            if (r.norm() > 0.5) kept.push_back(r.normalized());
        }
        return {kept.at(0), kept.at(1)};
    }
}

BlochAngles bloch_angles_in_pair(const Vector4& g, const Vector4& v1, const Vector4& v2) {
    Complex d1 = v1.dot(g);
    Complex d2 = v2.dot(g);
    double residual = (g - d1 * v1 - d2 * v2).norm();
    if (residual > kOrthoTol)
        throw NotInSubspace("state lies outside the spanned subspace");
    BlochAngles ang;
    ang.theta = 2.0 * std::atan2(std::abs(d2), std::abs(d1));
    if (std::abs(d1) < 1e-12 || std::abs(d2) < 1e-12)
        ang.phi = 0.0;
    else
        ang.phi = wrap_2pi(std::arg(d1) - std::arg(d2));
    return ang;
}

BlochAngles bloch_angles(const PureState& psi, const SubspaceCanonicalForm& c) {
    Vector4 g = c.map(psi.vec());
    return bloch_angles_in_pair(g, c.canonical_chi1(), c.canonical_chi2());
}

Vector4 synthesize_in_pair(const BlochAngles& ang, const Vector4& v1, const Vector4& v2) {
    Complex a1 = std::cos(ang.theta / 2.0) * std::exp(Complex(0, ang.phi / 2.0));
    Complex a2 = std::sin(ang.theta / 2.0) * std::exp(Complex(0, -ang.phi / 2.0));
    return a1 * v1 + a2 * v2;
}

PureState synthesize(const BlochAngles& ang, const SubspaceCanonicalForm& c) {
    Vector4 g = synthesize_in_pair(ang, c.canonical_chi1(), c.canonical_chi2());
    Vector4 v = c.unmap(g);
    return PureState(v.normalized());
}

}  // namespace entpdf
