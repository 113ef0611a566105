// Shared helpers for the test suites: analytic field construction and
// real-space quadrature oracles that bypass the spectral code paths.

#pragma once

#include "nematiq/field.hpp"
#include "nematiq/sampling.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace nematiq::test {

using PointFn = std::function<void(double x, double y, double* comps)>;

/// Sample an analytic field on the grid.
inline RealField sample_field(const Grid& g, FieldTag tag, const PointFn& fn) {
    RealField out(g, tag);
    for (int jy = 0; jy < g.ny(); ++jy) {
        for (int jx = 0; jx < g.nx(); ++jx) {
            const double x = kTwoPi * jx / g.nx();
            const double y = kTwoPi * jy / g.ny();
            double vals[3] = {0, 0, 0};
            fn(x, y, vals);
            for (int c = 0; c < out.ncomp(); ++c) out.comp[c][jy * g.nx() + jx] = vals[c];
        }
    }
    return out;
}

inline SpectralField make_field(const Grid& g, FieldTag tag, const PointFn& fn) {
    return to_spectral(sample_field(g, tag, fn), tag);
}

inline SpectralField make_scalar(const Grid& g, const std::function<double(double, double)>& fn) {
    return make_field(g, FieldTag::scalar,
                      [&](double x, double y, double* v) { v[0] = fn(x, y); });
}

/// Midpoint-rule quadrature of an analytic integrand over [0,2pi]^2 on a
/// fine lattice, independent of any spectral machinery.
inline double quadrature_oracle(const std::function<double(double, double)>& fn, int res = 256) {
    double acc = 0.0;
    for (int j = 0; j < res; ++j)
        for (int i = 0; i < res; ++i)
            acc += fn(kTwoPi * (i + 0.5) / res, kTwoPi * (j + 0.5) / res);
    return acc * kTwoPi * kTwoPi / (res * res);
}

/// Taylor-Green vortex (a sin x cos y, -a cos x sin y); divergence-free.
inline SpectralField taylor_green(const Grid& g, double a = 1.0) {
    return make_field(g, FieldTag::velocity, [a](double x, double y, double* v) {
        v[0] = a * std::sin(x) * std::cos(y);
        v[1] = -a * std::cos(x) * std::sin(y);
    });
}

}  // namespace nematiq::test
