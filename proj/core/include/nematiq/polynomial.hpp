// The polynomial director nonlinearity f(d) = ftilde(|d|^2) d with
// ftilde(r) = sum_{k=0}^{N} a_k r^k, a_N < 0, and its potential
// F(d) = (1/2) Ftilde(|d|^2) where Ftilde' = ftilde and Ftilde(0) = 0,
// so that F'(d)[g] = f(d).g exactly.

#pragma once

#include "nematiq/field.hpp"

#include <array>
#include <vector>

namespace nematiq {

class PolynomialF {
  public:
    /// Coefficients a_0..a_N of ftilde; requires a_N < 0.
    explicit PolynomialF(std::vector<double> coeffs, double epsilon = 0.0);

    /// Ginzburg-Landau preset ftilde_eps(r) = (1/eps^2)(1 - r), N = 1.
    static PolynomialF ginzburg_landau(double epsilon);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double epsilon() const { return epsilon_; }

    /// Leading coefficient of Ftilde, a_{N+1} = a_N / (N+1) < 0.
    double top_potential_coeff() const { return coeffs_.back() / (degree() + 1); }

    double ftilde(double r) const;
    double ftilde_prime(double r) const;
    /// Ftilde(r) with Ftilde' = ftilde, Ftilde(0) = 0.
    double Ftilde(double r) const;

    /// f(d) for a pointwise 3-vector.
    std::array<double, 3> f_point(const std::array<double, 3>& d) const;

  private:
    std::vector<double> coeffs_;
    double epsilon_;
};

/// f(n) evaluated pointwise on the quadrature grid, transformed, dealiased.
SpectralField eval_f(const SpectralField& n, const PolynomialF& poly);

/// Pointwise Jacobian action f'(n)[g] = ftilde(|n|^2) g + 2 ftilde'(|n|^2)(n.g) n,
/// transformed and dealiased.
SpectralField eval_f_prime(const SpectralField& n, const SpectralField& g,
                           const PolynomialF& poly);

/// Pointwise second derivative f''(n)[g,g], transformed and dealiased.
SpectralField eval_f_second(const SpectralField& n, const SpectralField& g,
                            const PolynomialF& poly);

/// int F(n(x)) dx with F(d) = (1/2) Ftilde(|d|^2).
double eval_F_potential(const SpectralField& n, const PolynomialF& poly);

}  // namespace nematiq
