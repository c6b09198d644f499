#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsmr/rational.hpp"

#include "json.hpp"

namespace tsmr::exponents {

// One end of a p-range. `limit` marks endpoints that are only reached in the
// limit of an admissible parameter (the epsilon endpoints of the concrete
// operator ranges).
struct Endpoint {
    ExtRat value;
    bool open = true;
    bool limit = false;
};

struct Interval {
    Endpoint lo, hi;
    bool empty = false;

    bool contains(const ExtRat& p) const;
    std::string str() const;
};

struct NamedValue {
    std::string name;
    std::string value;  // exact rational string, "inf", or a tag
};

struct ExponentReport {
    std::vector<NamedValue> values;
    Interval interval;
    std::string caseTag;
    std::string provenance;
    bool hypothesisViolation = false;
    std::string violationReason;

    nlohmann::json to_json() const;
    void add(const std::string& name, const ExtRat& v) { values.push_back({name, v.str()}); }
    void add(const std::string& name, const std::string& v) { values.push_back({name, v}); }
};

// Boundary exponent of the singular part: M = (n/2m)(2/p_M - 1).
// M = inf collapses to 0 (every p > 0 admissible for that part).
Rat p_M(int n, const Rat& m, const ExtRat& M);

// p_c = 4n / (2n + m(1-beta) q'), cross-checked against its other displayed
// form. q = 1 (q' = inf) degenerates to 0.
Rat p_c(int n, const Rat& m, const Rat& beta, const ExtRat& q);

// tilde p_c = 2n / (2n/q + m(1-beta)).
Rat tilde_p_c(int n, const Rat& m, const Rat& beta, const ExtRat& q);

// Decay order of the alpha-family kernel: M_q = Re(alpha) + (n/m)|1/q - 1/2|.
Rat M_q(const Rat& alphaRe, int n, const Rat& m, const ExtRat& q);

// v(alpha, q) = Re(alpha) - (beta-1)/2 + (n/m)(1/q - 1/2).
Rat v_exp(const Rat& alphaRe, const ExtRat& q, int n, const Rat& m, const Rat& beta);

// Forward range below 2 from L^q-L^2 decay: two-case split on q' against
// 2n/(m(1-beta)).
ExponentReport thm31_range(int n, const Rat& m, const Rat& beta, const ExtRat& q, const ExtRat& M);

// Backward-operator range (p_M, 2), needs beta > -1.
ExponentReport prop36_range(int n, const Rat& m, const Rat& beta, const ExtRat& q, const ExtRat& M);

// Dual ranges at and above 2 from L^2-L^q decay.
ExponentReport thm41_range(int n, const Rat& m, const Rat& beta, const ExtRat& q, const ExtRat& M);
ExponentReport prop42_range(int n, const Rat& m, const Rat& beta, const ExtRat& q, const ExtRat& M);

enum class Cor56Direction { AForward, BForward, ABackward, BBackward };

Cor56Direction parse_direction(const std::string& s);

// Maximal-regularity p_L case logic driven by resolvent decay for exponent q.
ExponentReport cor56_pL(int n, const Rat& m, const Rat& beta, const ExtRat& q, Cor56Direction dir);

enum class Preset { Prop14Heat, Prop14Sqrt, Prop15, Prop16, Prop17 };

Preset parse_preset(const std::string& s);
std::string preset_name(Preset p);

// Published boundedness range of the concrete operators, n >= 1.
// pMinus/pPlus override the default limiting exponents 2n/(n+2), 2n/(n-2)
// used for the complex divergence-form presets (n >= 3).
ExponentReport preset(Preset tag, int n, std::optional<ExtRat> pMinus = std::nullopt,
                      std::optional<ExtRat> pPlus = std::nullopt);

}  // namespace tsmr::exponents
