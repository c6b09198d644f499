#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tsmr/semigroup.hpp"
#include "tsmr/tent.hpp"

namespace tsmr {

enum class Orientation { Forward, Backward };
enum class KernelKind { MaxReg, MaxRegAlpha, Custom };
enum class Part { Whole, Singular, Tail };

Part parse_part(const std::string& s);

// K(t,s) applied to a spatial slice; used by the Custom kind only.
using KernelCallback = std::function<void(double t, double s, const Complex* in, Complex* out)>;

// Operator-valued kernel on the half-line. MaxReg: K(t,s) = L e^{-|t-s|L};
// MaxRegAlpha: K(t,s) = |t-s|^{alpha-1} L^alpha e^{-|t-s|L}. Forward kernels
// act on s < t, backward on s > t.
struct KernelOp {
    Orientation orientation = Orientation::Forward;
    KernelKind kind = KernelKind::MaxReg;
    Complex alpha{1.0, 0.0};
    const SemigroupModel* model = nullptr;
    KernelCallback custom;
    // Recorded estimate of C in ||K(t,s)|| <= C |t-s|^{-1}.
    double sizeConstant = 0.0;
};

KernelOp make_maxreg(const SemigroupModel& S, Orientation o = Orientation::Forward);
KernelOp make_maxreg_alpha(const SemigroupModel& S, Complex alpha,
                           Orientation o = Orientation::Forward);
KernelOp make_custom(const SemigroupModel& S, KernelCallback cb,
                     Orientation o = Orientation::Forward);

struct ApplyInfo {
    bool truncationWarning = false;  // backward tail cut at tMax with data there
};

// Quadrature application of int K(t,s) f(s) ds. tail integrates s <= t/2
// (forward) or s >= 2t (backward) on the grid nodes; singular integrates
// u = |t-s| on a 64-cell geometric subgrid from u = t*2^{-20}, with the
// |t-s|^{alpha-1} factor absorbed into incomplete-power-rule weights;
// whole = singular + tail exactly.
Field apply(const KernelOp& T, const Field& f, Part part = Part::Whole,
            ApplyInfo* info = nullptr);

// J_alpha f(t) = int_0^{t/2} (s/t)^alpha K(t,s) f(s) ds. Requires
// Re(alpha) > (beta-1)/2 for the weighted-L^2 bound; alpha = 0 is exactly
// the tail part of apply.
Field apply_J_alpha(const KernelOp& T, Complex alpha, const Field& f, double beta);

// M_alpha f(t) = int_0^t (t-s)^{alpha-1} L^alpha e^{-(t-s)L} f(s) ds.
Field apply_M_alpha(Complex alpha, const SemigroupModel& S, const Field& f);

// Max over sample (t,s) pairs of |t-s| * ||K(t,s)||_{2->2} (spectral).
double check_size_bound(const KernelOp& T, const std::vector<std::pair<double, double>>& samplePairs);

// Max over samples of the weighted Hardy ratio
//   sum_i ((1/t_i) sum_{t_j <= t_i/2} w_j f_j)^2 t_i^beta w_i / sum_j f_j^2 t_j^beta w_j
// on the spec's geometric time grid; requires beta < 1.
double hardy_check(double beta, const GridSpec& spec, const std::vector<std::vector<double>>& samples);

struct TentRatioResult {
    double maxRatio = 0.0;
    std::vector<double> ratios;
};

TentRatioResult tent_ratio(const KernelOp& T, const TentParams& params,
                           const std::vector<Field>& inputs);

}  // namespace tsmr
