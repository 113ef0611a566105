// Spectral fields on the 2D periodic torus [0,2pi]^2.
//
// Real-valued scalar/vector fields are stored as full complex Fourier
// coefficient arrays with Hermitian symmetry.  Coefficients follow the
// analysis normalization: a constant field 1 has a single coefficient 1
// at k = 0, and sin(x) has coefficients -i/2 at k=(1,0) and +i/2 at
// k=(-1,0).  The wavenumber set per axis is {-n/2+1, ..., n/2}.

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>
#include <memory>

namespace nematiq {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

enum class FieldTag { scalar, velocity, director };

inline int component_count(FieldTag tag) {
    switch (tag) {
        case FieldTag::scalar:   return 1;
        case FieldTag::velocity: return 2;
        case FieldTag::director: return 3;
    }
    return 0;
}

/// Spectral resolution and precomputed wavenumber/dealias tables.
/// Cheap to copy; the tables are shared and immutable.
class Grid {
  public:
    Grid() = default;
    Grid(int nx, int ny, double dealias_fraction);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int size() const { return nx_ * ny_; }
    double dealias_fraction() const { return frac_; }

    // Wavenumbers of flattened mode index m = jy*nx + jx.
    double kx(int m) const { return tab_->kx[m]; }
    double ky(int m) const { return tab_->ky[m]; }
    double k2(int m) const { return tab_->k2[m]; }
    // 1.0 for retained modes, 0.0 for modes removed by the dealias rule.
    double mask(int m) const { return tab_->mask[m]; }

    int index(int jx, int jy) const { return jy * nx_ + jx; }
    // Flattened index of the conjugate mode -k.
    int conj_index(int m) const { return tab_->conj[m]; }

    // Mode index for integer wavenumbers (kx in (-nx/2, nx/2], same for ky).
    int mode_index(int kx_int, int ky_int) const;

    bool same(const Grid& o) const {
        return nx_ == o.nx_ && ny_ == o.ny_ && frac_ == o.frac_;
    }

    double cell_area() const { return kTwoPi * kTwoPi / size(); }

  private:
    struct Tables {
        std::vector<double> kx, ky, k2, mask;
        std::vector<int> conj;
    };
    int nx_ = 0, ny_ = 0;
    double frac_ = 1.0;
    std::shared_ptr<const Tables> tab_;
};

/// Real-space samples on the grid, row-major (index = jy*nx + jx),
/// one array per component.
struct RealField {
    Grid grid;
    FieldTag tag = FieldTag::scalar;
    std::vector<std::vector<double>> comp;

    RealField() = default;
    RealField(const Grid& g, FieldTag t)
        : grid(g), tag(t),
          comp(component_count(t), std::vector<double>(g.size(), 0.0)) {}

    int ncomp() const { return static_cast<int>(comp.size()); }
};

/// Fourier coefficients of a real field, one array per component.
class SpectralField {
  public:
    SpectralField() = default;
    SpectralField(const Grid& g, FieldTag t)
        : grid_(g), tag_(t),
          comp_(component_count(t), std::vector<Complex>(g.size(), Complex{})) {}

    const Grid& grid() const { return grid_; }
    FieldTag tag() const { return tag_; }
    int ncomp() const { return static_cast<int>(comp_.size()); }

    std::vector<Complex>& operator[](int c) { return comp_[c]; }
    const std::vector<Complex>& operator[](int c) const { return comp_[c]; }

    Complex& at(int c, int m) { return comp_[c][m]; }
    const Complex& at(int c, int m) const { return comp_[c][m]; }

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double a);

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double a, SpectralField f) { return f *= a; }

  private:
    Grid grid_;
    FieldTag tag_ = FieldTag::scalar;
    std::vector<std::vector<Complex>> comp_;
};

/// y = y + a*x
void axpy(double a, const SpectralField& x, SpectralField& y);

Grid make_grid(int nx, int ny, double dealias_fraction = 2.0 / 3.0);

// Forward (samples -> coefficients) and backward (coefficients -> samples)
// transforms.  forward(backward(f)) reproduces f to round-off.
SpectralField to_spectral(const RealField& samples, FieldTag tag);
RealField to_real(const SpectralField& f);

/// Zero every coefficient with max(|kx|/(nx/2), |ky|/(ny/2)) > dealias_fraction.
SpectralField dealias(SpectralField f);
void dealias_inplace(SpectralField& f);

/// Enforce c(-k) = conj(c(k)); the result represents a real field exactly.
void hermitian_symmetrize(SpectralField& f);
double hermitian_defect(const SpectralField& f);

bool all_finite(const SpectralField& f);

/// Max |i k . u(k)| over modes; a discrete divergence residual.
double divergence_linf(const SpectralField& u);

double max_abs_coeff(const SpectralField& f);

/// Coefficient-wise max |a - b|.
double coeff_distance(const SpectralField& a, const SpectralField& b);

void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace nematiq
