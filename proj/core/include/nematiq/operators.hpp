// Linear and nonlinear spatial operators of the coupled system:
// Leray projection, Stokes operator A and Neumann-surrogate Laplacian A1
// (with fractional powers), heat semigroups, the trilinear form b and the
// maps B, Btilde, M, the director noise G(n) = n x h with its Stratonovich
// square, and the velocity noise coefficient S.
//
// Nonlinear terms are evaluated pseudo-spectrally (pointwise products in
// real space) and dealiased, so the cancellation identities
//   <B(u,v),v> = 0,   <Btilde(v,n),n> = 0,
//   <Btilde(v,n),A1 n> + <M(n,n),v> = 0,   <v.grad n, f(n)> = 0
// hold to quadrature accuracy on band-limited fields.

#pragma once

#include "nematiq/field.hpp"
#include "nematiq/polynomial.hpp"

#include <functional>
#include <vector>

namespace nematiq {

/// d/dx_axis, spectral multiplier i*k_axis.
SpectralField derivative(const SpectralField& f, int axis);

/// Helmholtz-Leray projection: u(k) -> u(k) - k (k.u(k)) / |k|^2, identity at k=0.
SpectralField leray_project(const SpectralField& u);

/// Stokes operator power: multiplier |k|^(2*power) on k != 0 modes.
/// power = 0 is the identity; power > 0 zeroes the k=0 mode (seminorm
/// operator); power < 0 rejects a field with nonzero mean.
SpectralField apply_stokes(const SpectralField& v, double power);

/// (shifted ? (1+|k|^2)^power : |k|^(2*power)) applied componentwise.
SpectralField apply_A1(const SpectralField& n, double power, bool shifted);

/// Heat semigroup e^{-t A}: per-mode factor e^{-t |k|^2}; t >= 0.
SpectralField semigroup_apply(const SpectralField& f, double t);

/// b(u,v,w) = sum_{i,j} int u_i d_i(v_j) w_j dx by dealiased real-space
/// quadrature; u must have 2 components, v and w equal counts.
double trilinear_b(const SpectralField& u, const SpectralField& v, const SpectralField& w);

/// B(u,v) = Leray(u.grad v), dealiased.
SpectralField apply_B(const SpectralField& u, const SpectralField& v);

/// Btilde(v,n) = v.grad n (3 components), dealiased.
SpectralField apply_Btilde(const SpectralField& v, const SpectralField& n);

/// M(n1,n2) = Leray[Div(grad n1 (.) grad n2)], dealiased;
/// <M(n1,n2),u> = -sum int d_i n1 . d_j n2 d_j u_i.
SpectralField apply_M(const SpectralField& n1, const SpectralField& n2);

/// Director noise channel: acts by the fixed field h (already including the
/// amplitude), G(n) = n x h.
struct DirectorNoise {
    SpectralField h;        // 3-component, H^2-smooth, amplitude folded in
    double amplitude = 0.0;

    DirectorNoise() = default;
    DirectorNoise(SpectralField h_raw, double amp);
    bool enabled() const { return amplitude != 0.0; }
};

/// order 1: n x h pointwise; order 2: (n x h) x h pointwise.  Dealiased.
SpectralField apply_G(const SpectralField& n, const DirectorNoise& dn, int order);

/// Pointwise cross product of two director fields, dealiased.
SpectralField cross_product(const SpectralField& a, const SpectralField& b);

/// Velocity noise coefficient S : H -> HS(K1, V).
struct VelocityNoise {
    enum class Mode { additive, smoothed_multiplicative, off };
    Mode mode = Mode::off;
    std::vector<double> sigmas;          // sigma_1..sigma_J
    double smoothing_order = 1.0;        // s >= 1/2 (smoothed mode)
    std::vector<SpectralField> basis;    // g_1..g_J (additive mode)
    double ell5 = 0.0;                   // growth bound constant, computed

    static VelocityNoise off_noise() { return VelocityNoise{}; }
    static VelocityNoise smoothed(const Grid& g, double s, double sigma0, int J);
    static VelocityNoise additive(const Grid& g, double sigma0, int J);

    int modes() const { return static_cast<int>(sigmas.size()); }
    bool enabled() const { return mode != Mode::off && !sigmas.empty(); }
};

/// S(v) e_j: additive -> sigma_j g_j; smoothed -> sigma_j (I+A)^{-s} v.
SpectralField apply_S(const SpectralField& v, const VelocityNoise& vn, int j);

/// sum_j ||S(v) e_j||_{H^1}^2.
double hilbert_schmidt_h1_sq(const SpectralField& v, const VelocityNoise& vn);
/// sum_j |S(v) e_j|_{L^2}^2 (the Ito correction weight of (1/2)|v|^2).
double hilbert_schmidt_l2_sq(const SpectralField& v, const VelocityNoise& vn);

}  // namespace nematiq
