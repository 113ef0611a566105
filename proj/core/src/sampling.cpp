#include "nematiq/sampling.hpp"

#include "nematiq/operators.hpp"

#include <cmath>

namespace nematiq {

SpectralField FieldSampler::raw(std::mt19937_64& rng, FieldTag tag) const {
    SpectralField f(grid, tag);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int bx = std::min(band, grid.nx() / 2 - 1);
    const int by = std::min(band, grid.ny() / 2 - 1);
    for (int c = 0; c < f.ncomp(); ++c) {
        for (int ky = -by; ky <= by; ++ky) {
            for (int kx = -bx; kx <= bx; ++kx) {
                const int m = grid.mode_index(kx, ky);
                const double scale =
                    amplitude * std::pow(decay, std::max(std::abs(kx), std::abs(ky)));
                f[c][m] = scale * Complex(gauss(rng), gauss(rng));
            }
        }
    }
    hermitian_symmetrize(f);
    dealias_inplace(f);
    return f;
}

SpectralField FieldSampler::scalar(std::mt19937_64& rng) const {
    return raw(rng, FieldTag::scalar);
}

SpectralField FieldSampler::velocity(std::mt19937_64& rng) const {
    SpectralField f = raw(rng, FieldTag::velocity);
    f[0][0] = f[1][0] = Complex{};  // zero mean keeps fractional Stokes powers usable
    return leray_project(f);
}

SpectralField FieldSampler::director(std::mt19937_64& rng) const {
    return raw(rng, FieldTag::director);
}

}  // namespace nematiq
