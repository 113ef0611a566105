// Random band-limited fields with decaying spectra, used by the
// inequality probes and the identity test corpus.

#pragma once

#include "nematiq/field.hpp"

#include <cstdint>
#include <random>

namespace nematiq {

struct FieldSampler {
    Grid grid;
    int band = 8;          // modes with max(|kx|,|ky|) <= band are populated
    double decay = 0.65;   // coefficient scale decay^max(|kx|,|ky|)
    double amplitude = 1.0;

    FieldSampler(const Grid& g, int band_, double decay_ = 0.65, double amp = 1.0)
        : grid(g), band(band_), decay(decay_), amplitude(amp) {}

    /// Hermitian-symmetric random field, dealiased.
    SpectralField scalar(std::mt19937_64& rng) const;
    /// Divergence-free 2-component field.
    SpectralField velocity(std::mt19937_64& rng) const;
    /// 3-component field.
    SpectralField director(std::mt19937_64& rng) const;

  private:
    SpectralField raw(std::mt19937_64& rng, FieldTag tag) const;
};

}  // namespace nematiq
