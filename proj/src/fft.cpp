#include "tsmr/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>

namespace tsmr {

SpatialFFT::SpatialFFT(int n, int Nx) : n_(n), Nx_(Nx) {
    size_ = 1;
    for (int i = 0; i < n; ++i) size_ *= static_cast<std::size_t>(Nx);
    buf_ = reinterpret_cast<Complex*>(fftw_malloc(sizeof(fftw_complex) * size_));
    if (!buf_) throw ResourceError("SpatialFFT: allocation failed");
    int dims[3] = {Nx, Nx, Nx};
    auto* b = reinterpret_cast<fftw_complex*>(buf_);
    fwd_ = fftw_plan_dft(n, dims, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft(n, dims, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!fwd_ || !inv_) throw ResourceError("SpatialFFT: plan creation failed");
}

SpatialFFT::~SpatialFFT() {
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(inv_));
    fftw_free(buf_);
}

void SpatialFFT::forward(Complex* data) const {
    std::memcpy(buf_, data, sizeof(Complex) * size_);
    fftw_execute(static_cast<fftw_plan>(fwd_));
    std::memcpy(data, buf_, sizeof(Complex) * size_);
}

void SpatialFFT::inverse(Complex* data) const {
    std::memcpy(buf_, data, sizeof(Complex) * size_);
    fftw_execute(static_cast<fftw_plan>(inv_));
    const double scale = 1.0 / static_cast<double>(size_);
    for (std::size_t i = 0; i < size_; ++i) data[i] = buf_[i] * scale;
}

int SpatialFFT::mode(std::size_t freqFlat, int axis, int n, int Nx) {
    const auto N = static_cast<std::size_t>(Nx);
    for (int a = n - 1; a > axis; --a) freqFlat /= N;
    int j = static_cast<int>(freqFlat % N);
    return j <= Nx / 2 ? j : j - Nx;
}

double SpatialFFT::frequency(std::size_t freqFlat, int axis, int n, int Nx, double X) {
    return (3.14159265358979323846 / X) * mode(freqFlat, axis, n, Nx);
}

}  // namespace tsmr
