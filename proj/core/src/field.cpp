#include "nematiq/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace nematiq {

namespace {

// FFTW plan execution is thread-safe, planning is not.  Plans are cached
// per resolution and created under a lock, with FFTW_UNALIGNED so they can
// run on any caller-provided buffer.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int nx, int ny) {
    static std::mutex mtx;
    static std::map<std::pair<int, int>, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(nx, ny);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<Complex> in(static_cast<size_t>(nx) * ny), out(in.size());
    PlanPair p;
    // FFTW is row-major with the first dimension slowest: (ny, nx).
    p.fwd = fftw_plan_dft_2d(ny, nx,
                             reinterpret_cast<fftw_complex*>(in.data()),
                             reinterpret_cast<fftw_complex*>(out.data()),
                             FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_2d(ny, nx,
                             reinterpret_cast<fftw_complex*>(in.data()),
                             reinterpret_cast<fftw_complex*>(out.data()),
                             FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    return cache.emplace(key, p).first->second;
}

int wavenumber(int j, int n) { return j <= n / 2 ? j : j - n; }

}  // namespace

Grid::Grid(int nx, int ny, double dealias_fraction) : nx_(nx), ny_(ny), frac_(dealias_fraction) {
    if (nx < 8 || ny < 8)
        throw std::invalid_argument("Grid: resolution must be at least 8 per axis");
    if (nx % 2 != 0 || ny % 2 != 0)
        throw std::invalid_argument("Grid: resolution must be even per axis");
    if (!(dealias_fraction > 0.0) || dealias_fraction > 1.0)
        throw std::invalid_argument("Grid: dealias_fraction must lie in (0,1]");

    auto tab = std::make_shared<Tables>();
    const int n = nx * ny;
    tab->kx.resize(n);
    tab->ky.resize(n);
    tab->k2.resize(n);
    tab->mask.resize(n);
    tab->conj.resize(n);
    for (int jy = 0; jy < ny; ++jy) {
        for (int jx = 0; jx < nx; ++jx) {
            const int m = jy * nx + jx;
            const int ikx = wavenumber(jx, nx);
            const int iky = wavenumber(jy, ny);
            tab->kx[m] = ikx;
            tab->ky[m] = iky;
            tab->k2[m] = double(ikx) * ikx + double(iky) * iky;
            const double rx = std::abs(ikx) / (nx / 2.0);
            const double ry = std::abs(iky) / (ny / 2.0);
            tab->mask[m] = (std::max(rx, ry) > dealias_fraction) ? 0.0 : 1.0;
            const int cjx = (nx - jx) % nx;
            const int cjy = (ny - jy) % ny;
            tab->conj[m] = cjy * nx + cjx;
        }
    }
    tab_ = std::move(tab);
}

int Grid::mode_index(int kx_int, int ky_int) const {
    if (kx_int <= -nx_ / 2 || kx_int > nx_ / 2 || ky_int <= -ny_ / 2 || ky_int > ny_ / 2)
        throw std::out_of_range("Grid::mode_index: wavenumber outside grid");
    const int jx = kx_int >= 0 ? kx_int : kx_int + nx_;
    const int jy = ky_int >= 0 ? ky_int : ky_int + ny_;
    return jy * nx_ + jx;
}

Grid make_grid(int nx, int ny, double dealias_fraction) { return Grid(nx, ny, dealias_fraction); }

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    require_same_grid(grid_, o.grid_, "SpectralField::operator+=");
    for (int c = 0; c < ncomp(); ++c)
        for (size_t m = 0; m < comp_[c].size(); ++m) comp_[c][m] += o.comp_[c][m];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    require_same_grid(grid_, o.grid_, "SpectralField::operator-=");
    for (int c = 0; c < ncomp(); ++c)
        for (size_t m = 0; m < comp_[c].size(); ++m) comp_[c][m] -= o.comp_[c][m];
    return *this;
}

SpectralField& SpectralField::operator*=(double a) {
    for (int c = 0; c < ncomp(); ++c)
        for (auto& z : comp_[c]) z *= a;
    return *this;
}

void axpy(double a, const SpectralField& x, SpectralField& y) {
    require_same_grid(x.grid(), y.grid(), "axpy");
    for (int c = 0; c < y.ncomp(); ++c)
        for (size_t m = 0; m < y[c].size(); ++m) y[c][m] += a * x[c][m];
}

SpectralField to_spectral(const RealField& samples, FieldTag tag) {
    const Grid& g = samples.grid;
    if (static_cast<int>(samples.comp.size()) != component_count(tag))
        throw std::invalid_argument("to_spectral: component count does not match tag");
    for (const auto& c : samples.comp)
        if (static_cast<int>(c.size()) != g.size())
            throw std::invalid_argument("to_spectral: sample shape does not match grid");

    SpectralField out(g, tag);
    auto& plans = plans_for(g.nx(), g.ny());
    const double norm = 1.0 / g.size();
    std::vector<Complex> in(g.size()), tmp(g.size());
    for (int c = 0; c < out.ncomp(); ++c) {
        for (int m = 0; m < g.size(); ++m) in[m] = Complex(samples.comp[c][m], 0.0);
        fftw_execute_dft(plans.fwd, reinterpret_cast<fftw_complex*>(in.data()),
                         reinterpret_cast<fftw_complex*>(tmp.data()));
        for (int m = 0; m < g.size(); ++m) out[c][m] = tmp[m] * norm;
    }
    return out;
}

RealField to_real(const SpectralField& f) {
    const Grid& g = f.grid();
    RealField out(g, f.tag());
    auto& plans = plans_for(g.nx(), g.ny());
    std::vector<Complex> in(g.size()), tmp(g.size());
    for (int c = 0; c < f.ncomp(); ++c) {
        for (int m = 0; m < g.size(); ++m) in[m] = f[c][m];
        fftw_execute_dft(plans.bwd, reinterpret_cast<fftw_complex*>(in.data()),
                         reinterpret_cast<fftw_complex*>(tmp.data()));
        for (int m = 0; m < g.size(); ++m) out.comp[c][m] = tmp[m].real();
    }
    return out;
}

void dealias_inplace(SpectralField& f) {
    const Grid& g = f.grid();
    for (int c = 0; c < f.ncomp(); ++c)
        for (int m = 0; m < g.size(); ++m) f[c][m] *= g.mask(m);
}

SpectralField dealias(SpectralField f) {
    dealias_inplace(f);
    return f;
}

void hermitian_symmetrize(SpectralField& f) {
    const Grid& g = f.grid();
    for (int c = 0; c < f.ncomp(); ++c) {
        auto& a = f[c];
        for (int m = 0; m < g.size(); ++m) {
            const int mc = g.conj_index(m);
            if (mc < m) continue;
            const Complex avg = 0.5 * (a[m] + std::conj(a[mc]));
            a[m] = avg;
            a[mc] = std::conj(avg);
        }
    }
}

double hermitian_defect(const SpectralField& f) {
    const Grid& g = f.grid();
    double d = 0.0;
    for (int c = 0; c < f.ncomp(); ++c)
        for (int m = 0; m < g.size(); ++m)
            d = std::max(d, std::abs(f[c][m] - std::conj(f[c][g.conj_index(m)])));
    return d;
}

bool all_finite(const SpectralField& f) {
    for (int c = 0; c < f.ncomp(); ++c)
        for (const auto& z : f[c])
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double divergence_linf(const SpectralField& u) {
    if (u.ncomp() != 2) throw std::invalid_argument("divergence_linf: needs a 2-component field");
    const Grid& g = u.grid();
    double d = 0.0;
    for (int m = 0; m < g.size(); ++m) {
        const Complex div = Complex(0, 1) * (g.kx(m) * u[0][m] + g.ky(m) * u[1][m]);
        d = std::max(d, std::abs(div));
    }
    return d;
}

double max_abs_coeff(const SpectralField& f) {
    double d = 0.0;
    for (int c = 0; c < f.ncomp(); ++c)
        for (const auto& z : f[c]) d = std::max(d, std::abs(z));
    return d;
}

double coeff_distance(const SpectralField& a, const SpectralField& b) {
    require_same_grid(a.grid(), b.grid(), "coeff_distance");
    double d = 0.0;
    for (int c = 0; c < a.ncomp(); ++c)
        for (size_t m = 0; m < a[c].size(); ++m) d = std::max(d, std::abs(a[c][m] - b[c][m]));
    return d;
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (!a.same(b)) throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

}  // namespace nematiq
