#include "nematiq/norms.hpp"

#include <cmath>

namespace nematiq {

double sobolev_norm(const SpectralField& f, SobolevLevel level) {
    if (level.s < -2.0 || level.s > 4.0)
        throw std::invalid_argument("sobolev_norm: order outside supported range [-2,4]");
    const Grid& g = f.grid();
    if (!level.shifted && level.s < 0.0) {
        for (int c = 0; c < f.ncomp(); ++c)
            if (std::abs(f[c][0]) > 0.0)
                throw std::invalid_argument(
                    "sobolev_norm: unshifted negative order needs a zero-mean field");
    }
    const double area = kTwoPi * kTwoPi;
    double acc = 0.0;
    for (int c = 0; c < f.ncomp(); ++c) {
        for (int m = 0; m < g.size(); ++m) {
            const double k2 = g.k2(m);
            double w;
            if (level.shifted) {
                w = std::pow(1.0 + k2, level.s);
            } else if (k2 == 0.0) {
                w = (level.s == 0.0) ? 1.0 : 0.0;
            } else {
                w = std::pow(k2, level.s);
            }
            acc += w * std::norm(f[c][m]);
        }
    }
    return std::sqrt(area * acc);
}

double l2_inner(const SpectralField& f, const SpectralField& g) {
    require_same_grid(f.grid(), g.grid(), "l2_inner");
    if (f.ncomp() != g.ncomp()) throw std::invalid_argument("l2_inner: component mismatch");
    double acc = 0.0;
    for (int c = 0; c < f.ncomp(); ++c)
        for (size_t m = 0; m < f[c].size(); ++m)
            acc += f[c][m].real() * g[c][m].real() + f[c][m].imag() * g[c][m].imag();
    return kTwoPi * kTwoPi * acc;
}

double lp_norm(const RealField& f, double p) {
    const int n = f.grid.size();
    double acc = 0.0;
    for (int m = 0; m < n; ++m) {
        double a2 = 0.0;
        for (const auto& c : f.comp) a2 += c[m] * c[m];
        acc += std::pow(a2, p / 2.0);
    }
    return std::pow(acc * f.grid.cell_area(), 1.0 / p);
}

double lp_norm(const SpectralField& f, double p) { return lp_norm(to_real(f), p); }

double linf_norm(const RealField& f) {
    const int n = f.grid.size();
    double best = 0.0;
    for (int m = 0; m < n; ++m) {
        double a2 = 0.0;
        for (const auto& c : f.comp) a2 += c[m] * c[m];
        best = std::max(best, a2);
    }
    return std::sqrt(best);
}

double linf_norm(const SpectralField& f) { return linf_norm(to_real(f)); }

double quadrature(const RealField& f, int comp) {
    double acc = 0.0;
    for (double v : f.comp[comp]) acc += v;
    return acc * f.grid.cell_area();
}

}  // namespace nematiq
