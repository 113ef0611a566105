// Sobolev norms and inner products computed from Fourier coefficients.
//
// Two multiplier conventions coexist, chosen per call site:
//   shifted   : (1 + |k|^2)^s  -- realizes the X_alpha scale (I + A1)^alpha,
//               used for every "H^s" norm written ||.||_s.
//   unshifted : |k|^{2s}       -- gradient seminorms such as |grad v|_{L^2}.
// s = 0 (either convention) is the L^2 norm via Parseval.

#pragma once

#include "nematiq/field.hpp"

namespace nematiq {

struct SobolevLevel {
    double s = 0.0;
    bool shifted = true;
};

/// (sum_k w(k)^s |f_k|^2 * (2pi)^2)^(1/2), w per SobolevLevel.
/// s must lie in [-2, 4]; unshifted negative s rejects a nonzero mean mode.
double sobolev_norm(const SpectralField& f, SobolevLevel level);

inline double l2_norm(const SpectralField& f) { return sobolev_norm(f, {0.0, true}); }
inline double h1_norm(const SpectralField& f) { return sobolev_norm(f, {1.0, true}); }
inline double h2_norm(const SpectralField& f) { return sobolev_norm(f, {2.0, true}); }
inline double h3_norm(const SpectralField& f) { return sobolev_norm(f, {3.0, true}); }
inline double grad_norm(const SpectralField& f) { return sobolev_norm(f, {1.0, false}); }

/// L^2 inner product <f, g> = (2pi)^2 sum_k Re(f_k conj(g_k)).
double l2_inner(const SpectralField& f, const SpectralField& g);

/// L^p norm by real-space quadrature of |f(x)|^p (|.| the pointwise
/// Euclidean norm across components).
double lp_norm(const RealField& f, double p);
double lp_norm(const SpectralField& f, double p);

double linf_norm(const RealField& f);
double linf_norm(const SpectralField& f);

/// Real-space quadrature sum(x) g(x) * cell_area; exact for band-limited g.
double quadrature(const RealField& f, int comp = 0);

}  // namespace nematiq
