#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "tsmr/grid.hpp"

namespace tsmr {

// Identifies the space T^{p,2,m}(t^beta dtdy). p = infinity selects the
// Carleson-measure endpoint.
struct TentParams {
    double p = 2.0;
    double m = 1.0;
    double beta = 0.0;
    bool pInf = false;

    void validate() const;
};

// Cone-localized square-function norm
//   ( sum_x h * A(x)^{p/2} )^{1/p},
//   A(x) = sum_{t_i, y_j : |y_j - x| < t_i^{1/m}} t_i^{-n/m} |g|^2 t_i^beta w_i h.
// Cone membership is strict (< t^{1/m}); p = inf redirects to carleson_norm.
double tent_norm(const Field& g, const TentParams& params);

// sup over lattice centers x and a dyadic r-ladder of
//   ( r^{-n} sum_{|y-x|<r, t<r^m} |g|^2 t^beta w h )^{1/2}.
double carleson_norm(const Field& g, double m, double beta);

// Companion time grid with t' = t^{1/m} (same Nt, still geometric).
GridSpec companion_spec(const GridSpec& spec, double m);

// Homogeneity-change isometry j(f)(t,y) = sqrt(m) t^{m(1+beta)/2} f(t^m, y),
// sampled on the companion grid; T^{p,2,m}(t^beta) -> T^{p,2,1}(t^{-1}).
Field change_homogeneity(const Field& f, double m, double beta);

enum class AtomKind { Constant, Randomized, Oscillatory };

AtomKind parse_atom_kind(const std::string& s);

// Normalized building block supported in the tent (0, r^m] x B(x0, r)
// (closed ball on the lattice) with discrete size bound
//   sum |A|^2 t^beta w h <= r^{-n(2/p - 1)}.
struct Atom {
    Field field;
    double r = 1.0;
    std::array<double, 3> x0{0.0, 0.0, 0.0};
    TentParams params;
};

// Builds an atom from a seeded smooth profile in tent-normalized coordinates
// (t/r^m, (y-x0)/r), rescaled so the discrete size bound holds with equality.
Atom make_atom(AtomKind kind, double r, const std::array<double, 3>& x0, const TentParams& params,
               const GridSpec& spec, std::uint64_t seed);

struct AtomCheck {
    bool pass = false;
    double slack = 0.0;  // r^{n(2/p-1)} * quadrature(|A|^2 t^beta) - 1
};

AtomCheck verify_atom(const Atom& a, double slackTol = 1e-9);

}  // namespace tsmr
