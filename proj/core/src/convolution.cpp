#include "nematiq/convolution.hpp"

#include "nematiq/operators.hpp"

namespace nematiq {

namespace {

SpectralField accumulate(const IntegrandFn& xi, const IncrementFn& dW, double dt, int M,
                         int upper, const Grid& grid, FieldTag tag) {
    SpectralField acc(grid, tag);
    for (int m = 0; m < upper; ++m) {
        SpectralField term = semigroup_apply(xi(m), (M - m) * dt);
        axpy(dW(m), term, acc);
    }
    return acc;
}

}  // namespace

SpectralField stochastic_convolution(const IntegrandFn& xi, const IncrementFn& dW, double dt,
                                     int M, const Grid& grid, FieldTag tag) {
    if (M < 0) throw std::invalid_argument("stochastic_convolution: negative horizon");
    return accumulate(xi, dW, dt, M, M, grid, tag);
}

SpectralField stopped_convolution(const IntegrandFn& xi, const IncrementFn& dW, double dt,
                                  int M, const StoppingTime& tau, const Grid& grid,
                                  FieldTag tag) {
    if (M < 0) throw std::invalid_argument("stopped_convolution: negative horizon");
    const int upper = tau.finite() ? std::min(M, tau.grid_index) : M;
    return accumulate(xi, dW, dt, M, upper, grid, tag);
}

}  // namespace nematiq
