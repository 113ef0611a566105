// Discrete stochastic convolution  I(t_M) = sum_{m<M} S_{t_M - t_m} xi(t_m) dW_m
// against the heat semigroup, and its stopped variant
//   I_tau(t_M) = sum_{m<M, t_m < tau} S_{t_M - t_m} xi(t_m) dW_m.
// With grid-aligned stopping times the identities
//   S_{t - t^tau} I(t^tau) = I_tau(t)   and   I(t^tau) = I_tau(t^tau)
// hold exactly (float associativity aside), and sigma <= tau implies
// I_tau(t^sigma) = I_sigma(t^sigma).

#pragma once

#include "nematiq/field.hpp"
#include "nematiq/wiener.hpp"

#include <functional>
#include <limits>

namespace nematiq {

enum class StoppingKind { tau_k, tau_n_truncation, synthetic };

struct StoppingTime {
    double value = std::numeric_limits<double>::infinity();
    int grid_index = -1;  // index of first grid time >= value; -1 when infinite
    StoppingKind kind = StoppingKind::synthetic;

    bool finite() const { return grid_index >= 0; }

    static StoppingTime at_index(int idx, double t, StoppingKind k) {
        return StoppingTime{t, idx, k};
    }
    static StoppingTime never(StoppingKind k = StoppingKind::synthetic) {
        return StoppingTime{std::numeric_limits<double>::infinity(), -1, k};
    }
};

/// xi(m) is the integrand value at grid time m*dt (must not look ahead);
/// dW(m) the matching Wiener increment.
using IntegrandFn = std::function<SpectralField(int m)>;
using IncrementFn = std::function<double(int m)>;

/// I(M dt) with the heat semigroup applied spectrally.
SpectralField stochastic_convolution(const IntegrandFn& xi, const IncrementFn& dW,
                                     double dt, int M, const Grid& grid, FieldTag tag);

/// Stopped convolution I_tau(M dt); tau aligned to the grid (its index is
/// in units of dt).
SpectralField stopped_convolution(const IntegrandFn& xi, const IncrementFn& dW,
                                  double dt, int M, const StoppingTime& tau,
                                  const Grid& grid, FieldTag tag);

}  // namespace nematiq
