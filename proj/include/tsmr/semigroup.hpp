#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tsmr/grid.hpp"

namespace tsmr {

enum class Family { HeatLaplacian, PoissonLaplacian, DivForm1D, Schrodinger1D };

std::string family_name(Family f);

enum class ResolventPower { L = 1, LSquared = 2 };

// Self-adjoint nonnegative generator L on the periodic spatial lattice,
// diagonalized either by the DFT (constant-coefficient families) or by a
// dense symmetric eigendecomposition (variable-coefficient 1-D families).
// All functional calculus goes through the spectral symbol.
class SemigroupModel {
public:
    static SemigroupModel heat(const GridSpec& spatial);
    static SemigroupModel poisson(const GridSpec& spatial);
    // -D^-(a D^+), second-order conservative differences; 0 < lambda <= a <= Lambda.
    static SemigroupModel divform1d(const GridSpec& spatial, const std::vector<double>& a);
    // -D^- D^+ + V with V >= 0.
    static SemigroupModel schrodinger1d(const GridSpec& spatial, const std::vector<double>& V);

    Family family() const { return family_; }
    double m() const { return m_; }  // homogeneity: 2 except Poisson (1)
    const GridSpec& spatial() const { return spatial_; }
    std::size_t size() const { return spatial_.spatial_size(); }
    // Spectrum of the discretized generator (unsorted, aligned with modes).
    const std::vector<double>& eigenvalues() const { return mu_; }

    // out = phi(L) v for a bounded spectral symbol phi.
    void spectral_apply(const std::function<Complex(double)>& symbol, const Complex* v,
                        Complex* out) const;

    // Expansion in the diagonalizing basis (DFT modes or eigenvectors),
    // aligned with eigenvalues(); from_spectral inverts to_spectral exactly.
    std::vector<Complex> to_spectral(const Complex* v) const;
    void from_spectral(const std::vector<Complex>& coeffs, Complex* out) const;

    void apply_semigroup(double t, const Complex* v, Complex* out) const;
    void apply_tL_exp(double t, const Complex* v, Complex* out) const;
    // (tL)^alpha e^{-tL} with principal powers; mu = 0 contributes 0.
    void apply_fractional(Complex alpha, double t, const Complex* v, Complex* out) const;
    // (1 - z L^pow)^{-1}; requires min_k |1 - z mu^pow| >= 1e-8.
    void apply_resolvent(Complex z, ResolventPower pow, const Complex* v, Complex* out) const;

    // Dense matrix M of f -> phi(L) f (pure index application, no cell
    // measure); capped at Nx <= 1024 for n=1 and 64 per axis otherwise.
    Eigen::MatrixXcd kernel_matrix(const std::function<Complex(double)>& symbol) const;

    // Recorded coefficient bounds for the variable-coefficient families.
    double coeffLower = 1.0, coeffUpper = 1.0;

private:
    SemigroupModel(Family f, double m, const GridSpec& spatial);

    Family family_;
    double m_;
    GridSpec spatial_;
    std::vector<double> mu_;

    bool fourier_ = true;
    std::shared_ptr<class SpatialFFT> fft_;
    Eigen::MatrixXd phi_;  // orthonormal eigenvectors (matrix-backed families)
};

}  // namespace tsmr
