#include "tsmr/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tsmr/fft.hpp"

namespace tsmr {

std::string family_name(Family f) {
    switch (f) {
        case Family::HeatLaplacian: return "heat";
        case Family::PoissonLaplacian: return "poisson";
        case Family::DivForm1D: return "divform";
        case Family::Schrodinger1D: return "schrodinger";
    }
    return "?";
}

SemigroupModel::SemigroupModel(Family f, double m, const GridSpec& spatial)
    : family_(f), m_(m), spatial_(spatial) {
    spatial_.validate();
}

SemigroupModel SemigroupModel::heat(const GridSpec& spatial) {
    SemigroupModel s(Family::HeatLaplacian, 2.0, spatial);
    const std::size_t S = s.size();
    s.fft_ = std::make_shared<SpatialFFT>(spatial.n, spatial.Nx);
    s.mu_.resize(S);
    for (std::size_t k = 0; k < S; ++k) {
        double sq = 0.0;
        for (int a = 0; a < spatial.n; ++a) {
            const double xi = SpatialFFT::frequency(k, a, spatial.n, spatial.Nx, spatial.X);
            sq += xi * xi;
        }
        s.mu_[k] = sq;
    }
    return s;
}

SemigroupModel SemigroupModel::poisson(const GridSpec& spatial) {
    SemigroupModel s = heat(spatial);
    s.family_ = Family::PoissonLaplacian;
    s.m_ = 1.0;
    for (auto& mu : s.mu_) mu = std::sqrt(mu);  // L = (-Delta)^{1/2}
    return s;
}

namespace {

// Dense symmetric eigendecomposition of a 1-D periodic operator matrix.
void diagonalize(const Eigen::MatrixXd& A, std::vector<double>& mu, Eigen::MatrixXd& phi) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
    const auto& ev = es.eigenvalues();
    mu.resize(static_cast<std::size_t>(ev.size()));
    for (Eigen::Index i = 0; i < ev.size(); ++i) mu[static_cast<std::size_t>(i)] = std::max(ev[i], 0.0);
    phi = es.eigenvectors();
}

}  // namespace

SemigroupModel SemigroupModel::divform1d(const GridSpec& spatial, const std::vector<double>& a) {
    if (spatial.n != 1) throw ConfigError("divform1d: requires n = 1");
    SemigroupModel s(Family::DivForm1D, 2.0, spatial);
    const int N = spatial.Nx;
    if (a.size() != static_cast<std::size_t>(N)) throw ConfigError("divform1d: coefficient length != Nx");
    double lo = a[0], hi = a[0];
    for (double v : a) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(lo > 0.0)) throw ConfigError("divform1d: coefficients must be uniformly positive");
    s.coeffLower = lo;
    s.coeffUpper = hi;
    // -D^-(a D^+): (Lv)_i = -(a_i(v_{i+1}-v_i) - a_{i-1}(v_i - v_{i-1})) / h^2.
    const double h2 = spatial.dx() * spatial.dx();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        const int ip = (i + 1) % N, im = (i + N - 1) % N;
        A(i, i) = (a[i] + a[im]) / h2;
        A(i, ip) -= a[i] / h2;
        A(i, im) -= a[im] / h2;
    }
    s.fourier_ = false;
    diagonalize(A, s.mu_, s.phi_);
    return s;
}

SemigroupModel SemigroupModel::schrodinger1d(const GridSpec& spatial, const std::vector<double>& V) {
    if (spatial.n != 1) throw ConfigError("schrodinger1d: requires n = 1");
    SemigroupModel s(Family::Schrodinger1D, 2.0, spatial);
    const int N = spatial.Nx;
    if (V.size() != static_cast<std::size_t>(N)) throw ConfigError("schrodinger1d: potential length != Nx");
    for (double v : V)
        if (v < 0.0) throw ConfigError("schrodinger1d: potential must be nonnegative");
    const double h2 = spatial.dx() * spatial.dx();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        const int ip = (i + 1) % N, im = (i + N - 1) % N;
        A(i, i) = 2.0 / h2 + V[i];
        A(i, ip) -= 1.0 / h2;
        A(i, im) -= 1.0 / h2;
    }
    s.fourier_ = false;
    diagonalize(A, s.mu_, s.phi_);
    return s;
}

void SemigroupModel::spectral_apply(const std::function<Complex(double)>& symbol, const Complex* v,
                                    Complex* out) const {
    const std::size_t S = size();
    if (fourier_) {
        std::vector<Complex> buf(v, v + S);
        fft_->forward(buf.data());
        for (std::size_t k = 0; k < S; ++k) buf[k] *= symbol(mu_[k]);
        fft_->inverse(buf.data());
        std::copy(buf.begin(), buf.end(), out);
    } else {
        const auto N = static_cast<Eigen::Index>(S);
        Eigen::VectorXcd x(N);
        for (Eigen::Index i = 0; i < N; ++i) x[i] = v[static_cast<std::size_t>(i)];
        Eigen::VectorXcd c = phi_.transpose() * x;
        for (Eigen::Index k = 0; k < N; ++k) c[k] *= symbol(mu_[static_cast<std::size_t>(k)]);
        Eigen::VectorXcd y = phi_ * c;
        for (Eigen::Index i = 0; i < N; ++i) out[static_cast<std::size_t>(i)] = y[i];
    }
}

std::vector<Complex> SemigroupModel::to_spectral(const Complex* v) const {
    const std::size_t S = size();
    std::vector<Complex> c(v, v + S);
    if (fourier_) {
        fft_->forward(c.data());
    } else {
        const auto N = static_cast<Eigen::Index>(S);
        Eigen::Map<const Eigen::VectorXcd> x(c.data(), N);
        Eigen::VectorXcd y = phi_.transpose() * x;
        for (Eigen::Index i = 0; i < N; ++i) c[static_cast<std::size_t>(i)] = y[i];
    }
    return c;
}

void SemigroupModel::from_spectral(const std::vector<Complex>& coeffs, Complex* out) const {
    const std::size_t S = size();
    if (coeffs.size() != S) throw ParameterError("from_spectral: coefficient length mismatch");
    if (fourier_) {
        std::copy(coeffs.begin(), coeffs.end(), out);
        fft_->inverse(out);
    } else {
        const auto N = static_cast<Eigen::Index>(S);
        Eigen::Map<const Eigen::VectorXcd> c(coeffs.data(), N);
        Eigen::VectorXcd y = phi_ * c;
        for (Eigen::Index i = 0; i < N; ++i) out[static_cast<std::size_t>(i)] = y[i];
    }
}

void SemigroupModel::apply_semigroup(double t, const Complex* v, Complex* out) const {
    if (!(t > 0.0)) throw ParameterError("apply_semigroup: t must be positive");
    spectral_apply([t](double mu) { return Complex(std::exp(-t * mu)); }, v, out);
}

void SemigroupModel::apply_tL_exp(double t, const Complex* v, Complex* out) const {
    if (!(t > 0.0)) throw ParameterError("apply_tL_exp: t must be positive");
    spectral_apply([t](double mu) { return Complex(t * mu * std::exp(-t * mu)); }, v, out);
}

void SemigroupModel::apply_fractional(Complex alpha, double t, const Complex* v, Complex* out) const {
    if (!(t > 0.0)) throw ParameterError("apply_fractional: t must be positive");
    if (!(alpha.real() > 0.0)) throw ParameterError("apply_fractional: Re(alpha) must be positive");
    spectral_apply(
        [alpha, t](double mu) {
            if (mu <= 0.0) return Complex(0.0);
            return std::exp(alpha * std::log(t * mu) - t * mu);  // principal power
        },
        v, out);
}

void SemigroupModel::apply_resolvent(Complex z, ResolventPower pow, const Complex* v,
                                     Complex* out) const {
    const int p = static_cast<int>(pow);
    double margin = std::numeric_limits<double>::infinity();
    for (double mu : mu_) {
        const double d = std::abs(1.0 - z * std::pow(Complex(mu), p));
        margin = std::min(margin, d);
    }
    if (margin < 1e-8)
        throw NumericError("apply_resolvent: z too close to the spectrum (margin " +
                           std::to_string(margin) + ")");
    spectral_apply([z, p](double mu) { return 1.0 / (1.0 - z * std::pow(Complex(mu), p)); }, v, out);
}

Eigen::MatrixXcd SemigroupModel::kernel_matrix(const std::function<Complex(double)>& symbol) const {
    if ((spatial_.n == 1 && spatial_.Nx > 1024) || (spatial_.n > 1 && spatial_.Nx > 64))
        throw ResourceError("kernel_matrix: dense size cap exceeded (Nx <= 1024 for n=1, 64 per axis otherwise)");
    const auto S = static_cast<Eigen::Index>(size());
    Eigen::MatrixXcd M(S, S);
    std::vector<Complex> e(static_cast<std::size_t>(S), Complex(0.0));
    std::vector<Complex> col(static_cast<std::size_t>(S));
    for (Eigen::Index j = 0; j < S; ++j) {
        e[static_cast<std::size_t>(j)] = Complex(1.0);
        spectral_apply(symbol, e.data(), col.data());
        for (Eigen::Index i = 0; i < S; ++i) M(i, j) = col[static_cast<std::size_t>(i)];
        e[static_cast<std::size_t>(j)] = Complex(0.0);
    }
    return M;
}

}  // namespace tsmr
