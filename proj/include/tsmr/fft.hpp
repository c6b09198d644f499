#pragma once

#include <complex>
#include <vector>

#include "tsmr/grid.hpp"

namespace tsmr {

// n-dimensional complex DFT on the Nx^n spatial lattice (FFTW backed).
// forward() is unnormalized; inverse() divides by the lattice size.
class SpatialFFT {
public:
    SpatialFFT(int n, int Nx);
    ~SpatialFFT();
    SpatialFFT(const SpatialFFT&) = delete;
    SpatialFFT& operator=(const SpatialFFT&) = delete;

    std::size_t size() const { return size_; }
    void forward(Complex* data) const;
    void inverse(Complex* data) const;

    // Signed integer mode along one axis for flat frequency index.
    static int mode(std::size_t freqFlat, int axis, int n, int Nx);
    // Continuous frequency xi_j = (pi/X) * mode for a [-X,X) period.
    static double frequency(std::size_t freqFlat, int axis, int n, int Nx, double X);

private:
    int n_, Nx_;
    std::size_t size_;
    void* fwd_;  // fftw_plan
    void* inv_;
    Complex* buf_;  // fftw_malloc'd work buffer the plans are bound to
};

}  // namespace tsmr
