#include "tsmr/exponents.hpp"

namespace tsmr::exponents {

namespace {

const Rat kHalf(1, 2);
const Rat kTwo(2);

void require(bool cond, const char* msg) {
    if (!cond) throw ParameterError(msg);
}

ExponentReport violation(const std::string& reason) {
    ExponentReport r;
    r.hypothesisViolation = true;
    r.violationReason = reason;
    r.caseTag = "hypothesis-violation";
    r.interval.empty = true;
    return r;
}

// n/(2m) - (n/m)(1/q - 1/2); nonnegative for q in [1,2].
Rat singular_gap(int n, const Rat& m, const ExtRat& q) {
    Rat nm = Rat(n) / m;
    return nm * kHalf - nm * (q.reciprocal() - kHalf);
}

bool thm31_case1(int n, const Rat& m, const Rat& beta, const ExtRat& q) {
    // q' <= 2n/(m(1-beta)), in the sign-safe equivalent form
    // n/(2m) >= -(beta-1)/2 + (n/m)(1/q - 1/2).
    Rat lhs = Rat(n) / (kTwo * m);
    Rat rhs = (Rat(1) - beta) * kHalf + (Rat(n) / m) * (q.reciprocal() - kHalf);
    return lhs >= rhs;
}

bool thm41_case1(int n, const Rat& m, const Rat& beta, const ExtRat& q) {
    // q <= 2n/(m(1-beta))  <=>  n/(2m) >= -(beta-1)/2 + (n/m)(1/2 - 1/q).
    Rat lhs = Rat(n) / (kTwo * m);
    Rat rhs = (Rat(1) - beta) * kHalf + (Rat(n) / m) * (kHalf - q.reciprocal());
    return lhs >= rhs;
}

}  // namespace

bool Interval::contains(const ExtRat& p) const {
    if (empty) return false;
    if (p < lo.value || (lo.open && p == lo.value)) return false;
    if (p > hi.value || (hi.open && p == hi.value)) return false;
    return true;
}

std::string Interval::str() const {
    if (empty) return "(empty)";
    std::string s = lo.open ? "(" : "[";
    s += lo.value.str();
    if (lo.limit) s += "+eps";
    s += ", ";
    s += hi.value.str();
    if (hi.limit) s += "+eps";
    s += hi.open ? ")" : "]";
    return s;
}

nlohmann::json ExponentReport::to_json() const {
    nlohmann::json j;
    nlohmann::json vals = nlohmann::json::object();
    for (const auto& v : values) vals[v.name] = v.value;
    j["values"] = vals;
    j["caseTag"] = caseTag;
    j["provenance"] = provenance;
    if (hypothesisViolation) {
        j["hypothesisViolation"] = true;
        j["violationReason"] = violationReason;
    } else {
        auto ep = [](const Endpoint& e) {
            return nlohmann::json{{"value", e.value.str()}, {"open", e.open}, {"limit", e.limit}};
        };
        j["interval"] = {
            {"lo", ep(interval.lo)},
            {"hi", ep(interval.hi)},
            {"empty", interval.empty},
            {"display", interval.str()},
        };
    }
    return j;
}

Rat p_M(int n, const Rat& m, const ExtRat& M) {
    require(n >= 1, "p_M: n must be a positive integer");
    require(m > Rat(0), "p_M: m must be positive");
    if (M.is_inf()) return Rat(0);
    require(M.rat() > Rat(0), "p_M: M must be positive");
    return Rat(2 * n) / (kTwo * m * M.rat() + Rat(n));
}

Rat p_c(int n, const Rat& m, const Rat& beta, const ExtRat& q) {
    require(beta < Rat(1), "p_c: beta < 1 required");
    require(ExtRat(1) <= q && q <= ExtRat(2), "p_c: q in [1,2] required");
    ExtRat qp = q.conjugate();
    if (qp.is_inf()) return Rat(0);  // q = 1 degenerates; caller redirects
    Rat direct = Rat(4 * n) / (Rat(2 * n) + m * (Rat(1) - beta) * qp.rat());
    // Cross-check against the equivalent 2A/(A + (1-beta)/2) form.
    Rat a = singular_gap(n, m, q);
    Rat alt = kTwo * a / (a + (Rat(1) - beta) * kHalf);
    if (direct != alt) throw NumericError("p_c: the two closed forms disagree");
    return direct;
}

Rat tilde_p_c(int n, const Rat& m, const Rat& beta, const ExtRat& q) {
    require(beta < Rat(1), "tilde_p_c: beta < 1 required");
    require(ExtRat(1) <= q && q <= ExtRat(2), "tilde_p_c: q in [1,2] required");
    return Rat(2 * n) / (Rat(2 * n) * q.reciprocal() + m * (Rat(1) - beta));
}

Rat M_q(const Rat& alphaRe, int n, const Rat& m, const ExtRat& q) {
    Rat gap = q.reciprocal() - kHalf;
    if (gap < Rat(0)) gap = -gap;
    return alphaRe + (Rat(n) / m) * gap;
}

Rat v_exp(const Rat& alphaRe, const ExtRat& q, int n, const Rat& m, const Rat& beta) {
    return alphaRe - (beta - Rat(1)) * kHalf + (Rat(n) / m) * (q.reciprocal() - kHalf);
}

ExponentReport thm31_range(int n, const Rat& m, const Rat& beta, const ExtRat& q, const ExtRat& M) {
    if (!(ExtRat(1) <= q && q <= ExtRat(2))) return violation("q outside [1,2]");
    if (!(beta < Rat(1))) return violation("beta >= 1");
    Rat critical = Rat(n) / (kTwo * m);
    if (!(M > ExtRat(critical))) return violation("M <= n/(2m): no range claimed");

    ExponentReport r;
    Rat pm = p_M(n, m, M);
    r.add("p_M", pm);
    r.interval.hi = {ExtRat(kTwo), /*open=*/false, /*limit=*/false};
    if (thm31_case1(n, m, beta, q)) {
        Rat pc = p_c(n, m, beta, q);
        r.add("p_c", pc);
        r.caseTag = "Thm3.1-case1";
        r.provenance = "q' <= 2n/(m(1-beta))";
        r.interval.lo = {ExtRat(pc), /*open=*/true, /*limit=*/false};
    } else {
        Rat ptc = tilde_p_c(n, m, beta, q);
        r.add("tilde_p_c", ptc);
        r.caseTag = "Thm3.1-case2";
        r.provenance = "q' > 2n/(m(1-beta))";
        Rat lo = pm > ptc ? pm : ptc;
        r.interval.lo = {ExtRat(lo), true, false};
    }
    return r;
}

ExponentReport prop36_range(int n, const Rat& m, const Rat& beta, const ExtRat& q, const ExtRat& M) {
    if (!(ExtRat(1) <= q && q <= ExtRat(2))) return violation("q outside [1,2]");
    if (!(beta > Rat(-1))) return violation("beta <= -1");
    Rat critical = Rat(n) / (kTwo * m);
    if (!(M > ExtRat(critical))) return violation("M <= n/(2m): no range claimed");

    ExponentReport r;
    Rat pm = p_M(n, m, M);
    r.add("p_M", pm);
    r.caseTag = "Prop3.6";
    r.provenance = "backward operator, p_M < p < 2";
    r.interval.lo = {ExtRat(pm), true, false};
    r.interval.hi = {ExtRat(kTwo), true, false};
    return r;
}

ExponentReport thm41_range(int n, const Rat& m, const Rat& beta, const ExtRat& q, const ExtRat& M) {
    if (!(ExtRat(2) <= q)) return violation("q outside [2,inf]");
    if (!(beta > Rat(-1))) return violation("beta <= -1");
    Rat critical = Rat(n) / (kTwo * m);
    if (!(M > ExtRat(critical))) return violation("M <= n/(2m): no range claimed");

    ExponentReport r;
    r.interval.lo = {ExtRat(kTwo), false, false};
    if (thm41_case1(n, m, beta, q)) {
        r.caseTag = "Thm4.1-case1";
        r.provenance = "q <= 2n/(m(1-beta))";
        Rat pc;
        if (beta == Rat(1)) {
            pc = kTwo;
        } else if (q.is_inf()) {
            return violation("q = inf with beta > 1: degenerate dual exponent");
        } else {
            pc = Rat(4 * n) / (Rat(2 * n) + m * (Rat(1) - beta) * q.rat());
        }
        r.add("p_c", pc);
        ExtRat pcp = pc == Rat(1) ? ExtRat::infinity() : ExtRat(pc / (pc - Rat(1)));
        r.add("p_c'", pcp);
        if (pc == Rat(1)) {
            // Boundary q = 2n/(m(1-beta)): endpoint attainment at p = inf is
            // left open; recorded as an open endpoint.
            r.provenance += "; boundary p_c = 1, attainment at p_c' unstated";
        }
        r.interval.hi = {pcp, /*open=*/true, false};
        if (!(ExtRat(kTwo) < pcp)) {
            r.interval.empty = true;
            r.provenance += "; p_c' <= 2, empty range";
        }
    } else {
        r.caseTag = "Thm4.1-case2";
        r.provenance = "q > 2n/(m(1-beta))";
        r.interval.hi = {ExtRat::infinity(), /*open=*/false, false};
    }
    return r;
}

ExponentReport prop42_range(int n, const Rat& m, const Rat& beta, const ExtRat& q, const ExtRat& M) {
    if (!(ExtRat(2) <= q)) return violation("q outside [2,inf]");
    if (!(beta < Rat(1))) return violation("beta >= 1");
    Rat critical = Rat(n) / (kTwo * m);
    if (!(M > ExtRat(critical))) return violation("M <= n/(2m): no range claimed");

    ExponentReport r;
    r.caseTag = "Prop4.2";
    r.provenance = "forward operator, 2 <= p <= inf";
    r.interval.lo = {ExtRat(kTwo), false, false};
    r.interval.hi = {ExtRat::infinity(), false, false};
    return r;
}

Cor56Direction parse_direction(const std::string& s) {
    if (s == "A-forward") return Cor56Direction::AForward;
    if (s == "B-forward") return Cor56Direction::BForward;
    if (s == "A-backward") return Cor56Direction::ABackward;
    if (s == "B-backward") return Cor56Direction::BBackward;
    throw ParameterError("unknown cor56 direction: " + s);
}

ExponentReport cor56_pL(int n, const Rat& m, const Rat& beta, const ExtRat& q, Cor56Direction dir) {
    ExponentReport r;
    switch (dir) {
        case Cor56Direction::AForward: {
            if (!(ExtRat(1) <= q && q <= ExtRat(2))) return violation("A-forward needs q in [1,2]");
            ExtRat qp = q.conjugate();
            Rat mq = M_q(Rat(1), n, m, q);
            r.add("M_q", mq);
            // cond = n/(m q'); q' = inf gives 0.
            Rat cond = qp.is_inf() ? Rat(0) : Rat(n) / (m * qp.rat());
            ExtRat pL;
            if (cond < Rat(1) && beta <= Rat(-1)) {
                pL = ExtRat(p_M(n, m, ExtRat(mq)));
                r.caseTag = "A1";
                r.provenance = "n/(mq') < 1, beta <= -1: p_L = p_{M_q}";
            } else if (cond < Rat(1)) {
                if (!(beta < Rat(1))) return violation("A-forward items 1-2 need beta < 1");
                auto base = thm31_range(n, m, beta, q, ExtRat(mq));
                if (base.hypothesisViolation) return base;
                pL = base.interval.lo.value;
                r.caseTag = "A2";
                r.provenance = "n/(mq') < 1, -1 < beta < 1: range transfers from the q-decay theorem (" +
                               base.caseTag + ")";
                for (const auto& nv : base.values)
                    if (nv.name != "p_M") r.values.push_back(nv);
            } else {
                if (!(beta < Rat(1))) return violation("A-forward item 3 needs beta < 1");
                Rat pc = p_c(n, m, beta, q);
                r.add("p_c", pc);
                Rat base = pc < Rat(1) ? pc : Rat(1);
                Rat invHalf = (m * qp.rat() / Rat(n)) * (base.inv() - kHalf);
                Rat inv = kHalf + invHalf;
                pL = ExtRat(inv.inv());
                r.caseTag = "A3";
                r.provenance = "n/(mq') >= 1: 1/p_L - 1/2 = (mq'/n)(1/inf(p_c,1) - 1/2)";
            }
            r.add("p_L", pL);
            r.interval.lo = {pL, true, false};
            r.interval.hi = {ExtRat(kTwo), true, false};
            return r;
        }
        case Cor56Direction::BForward: {
            if (!(ExtRat(2) <= q)) return violation("B-forward needs q in [2,inf]");
            Rat mqv = M_q(Rat(1), n, m, q);
            r.add("M_q", mqv);
            r.interval.lo = {ExtRat(kTwo), true, false};
            ExtRat mTimesQ = q.is_inf() ? ExtRat::infinity() : ExtRat(m * q.rat());
            if (mTimesQ > ExtRat(Rat(n))) {
                r.caseTag = "B-infty";
                r.provenance = "mq > n: bounded up to and including p = inf";
                r.add("p_L", ExtRat::infinity());
                r.interval.hi = {ExtRat::infinity(), false, false};
            } else {
                ExtRat pL = mTimesQ == ExtRat(Rat(n))
                                ? ExtRat::infinity()
                                : ExtRat(Rat(2 * n) / (Rat(n) - mTimesQ.rat()));
                r.caseTag = "B-finite";
                r.provenance = "mq <= n: p_L = 2n/(n - mq)";
                r.add("p_L", pL);
                r.interval.hi = {pL, true, false};
            }
            return r;
        }
        case Cor56Direction::ABackward: {
            if (!(ExtRat(2) <= q)) return violation("A-backward needs q in [2,inf]");
            Rat cond = q.is_inf() ? Rat(0) : Rat(n) / (m * q.rat());
            r.interval.lo = {ExtRat(kTwo), true, false};
            if (cond < Rat(1) && beta >= Rat(1)) {
                r.caseTag = "A1";
                r.provenance = "n/(mq) < 1, beta >= 1: bounded up to p = inf";
                r.add("p_L", ExtRat::infinity());
                r.interval.hi = {ExtRat::infinity(), false, false};
            } else if (cond < Rat(1) && beta > Rat(-1)) {
                Rat pc;
                if (q.is_inf()) {
                    pc = Rat(0);
                } else {
                    pc = Rat(4 * n) / (Rat(2 * n) + m * (Rat(1) - beta) * q.rat());
                }
                r.add("p_c", pc);
                r.caseTag = "A2";
                if (pc < Rat(1)) {
                    r.provenance = "n/(mq) < 1, p_c < 1: bounded up to p = inf";
                    r.add("p_L", ExtRat::infinity());
                    r.interval.hi = {ExtRat::infinity(), false, false};
                } else {
                    ExtRat pL = pc == Rat(1) ? ExtRat::infinity() : ExtRat(pc / (pc - Rat(1)));
                    r.provenance = "n/(mq) < 1, p_c >= 1: p_L = p_c'";
                    r.add("p_L", pL);
                    r.interval.hi = {pL, true, false};
                }
            } else if (cond >= Rat(1)) {
                // mq <= n here.
                Rat mtq = m * q.rat();
                ExtRat pL = mtq == Rat(n) ? ExtRat::infinity() : ExtRat(Rat(2 * n) / (Rat(n) - mtq));
                r.caseTag = "A3";
                r.provenance = "n/(mq) >= 1: 1/p_L - 1/2 = -mq/(2n)";
                r.add("p_L", pL);
                r.interval.hi = {pL, true, false};
            } else {
                return violation("A-backward needs beta > -1 in item 2");
            }
            return r;
        }
        case Cor56Direction::BBackward: {
            if (!(ExtRat(1) <= q && q <= ExtRat(2))) return violation("B-backward needs q in [1,2]");
            ExtRat qp = q.conjugate();
            Rat mqv = M_q(Rat(1), n, m, q);
            r.add("M_q", mqv);
            ExtRat mTimesQp = qp.is_inf() ? ExtRat::infinity() : ExtRat(m * qp.rat());
            ExtRat pL;
            if (mTimesQp <= ExtRat(Rat(n))) {
                pL = ExtRat(Rat(2 * n) / (Rat(n) + mTimesQp.rat()));
                r.caseTag = "B-finite";
                r.provenance = "mq' <= n: p_L = 2n/(n + mq')";
            } else {
                pL = ExtRat(p_M(n, m, ExtRat(mqv)));
                r.caseTag = "B-pM";
                r.provenance = "mq' > n: p_L = p_{M_q}";
            }
            r.add("p_L", pL);
            r.interval.lo = {pL, true, false};
            r.interval.hi = {ExtRat(kTwo), true, false};
            return r;
        }
    }
    return violation("unreachable");
}

Preset parse_preset(const std::string& s) {
    if (s == "prop14-heat" || s == "Prop14-heat") return Preset::Prop14Heat;
    if (s == "prop14-sqrt" || s == "Prop14-sqrt") return Preset::Prop14Sqrt;
    if (s == "prop15" || s == "Prop15") return Preset::Prop15;
    if (s == "prop16" || s == "Prop16") return Preset::Prop16;
    if (s == "prop17" || s == "Prop17") return Preset::Prop17;
    throw ParameterError("unknown preset: " + s);
}

std::string preset_name(Preset p) {
    switch (p) {
        case Preset::Prop14Heat: return "Prop14-heat";
        case Preset::Prop14Sqrt: return "Prop14-sqrt";
        case Preset::Prop15: return "Prop15";
        case Preset::Prop16: return "Prop16";
        case Preset::Prop17: return "Prop17";
    }
    return "?";
}

ExponentReport preset(Preset tag, int n, std::optional<ExtRat> pMinus, std::optional<ExtRat> pPlus) {
    require(n >= 1, "preset: n must be a positive integer");
    const Rat lowerPointwise = Rat(n) / Rat(n + 1);

    auto pointwiseRange = [&](const char* prov) {
        ExponentReport r;
        r.caseTag = "pointwise-gaussian";
        r.provenance = prov;
        r.add("tilde_p_c", lowerPointwise);
        r.interval.lo = {ExtRat(lowerPointwise), true, false};
        r.interval.hi = {ExtRat::infinity(), false, false};
        return r;
    };

    switch (tag) {
        case Preset::Prop14Heat:
            return pointwiseRange("heat-type semigroup with pointwise Gaussian bounds, m=2, beta=0");
        case Preset::Prop14Sqrt:
            return pointwiseRange("Poisson-type semigroup, m=1, beta=-1, order n/2+1");
        case Preset::Prop15:
            return pointwiseRange(
                "nonnegative-potential and real divergence-form generators, both homogeneities");
        case Preset::Prop16: {
            const Rat m(2), beta(0);
            if (n <= 2)
                return pointwiseRange("complex divergence-form, n <= 2: pointwise Gaussian bounds");
            ExtRat qLow = pMinus.value_or(ExtRat(Rat(2 * n, n + 2)));
            auto base = thm31_range(n, m, beta, qLow, ExtRat::infinity());
            if (base.hypothesisViolation) return base;
            ExponentReport r;
            r.caseTag = base.caseTag;
            r.provenance = "complex divergence-form, q -> " + qLow.str() + " limit; " + base.provenance;
            r.values = base.values;
            r.interval.lo = {base.interval.lo.value, true, /*limit=*/true};
            r.interval.hi = {ExtRat::infinity(), false, false};
            return r;
        }
        case Preset::Prop17: {
            const Rat m(1), beta(-1);
            if (n <= 2)
                return pointwiseRange("complex divergence-form square root, n <= 2: pointwise Poisson bounds");
            ExtRat qLow = pMinus.value_or(ExtRat(Rat(2 * n, n + 2)));
            ExtRat qHigh = pPlus.value_or(ExtRat(Rat(2 * n, n - 2)));
            auto lower = cor56_pL(n, m, beta, qLow, Cor56Direction::AForward);
            if (lower.hypothesisViolation) return lower;
            auto upper = cor56_pL(n, m, beta, qHigh, Cor56Direction::BForward);
            if (upper.hypothesisViolation) return upper;
            ExponentReport r;
            r.caseTag = lower.caseTag + "/" + upper.caseTag;
            r.provenance = "complex divergence-form square root, q limits " + qLow.str() + ", " +
                           qHigh.str() + "; lower: " + lower.provenance + "; upper: " + upper.provenance;
            r.values = lower.values;
            r.interval.lo = {lower.interval.lo.value, true, /*limit=*/true};
            // q exceeds the default pPlus limit strictly, so the boundary
            // mq = n already lands in the inclusive-infinity branch.
            ExtRat hi = upper.interval.hi.value;
            bool mqCritical = !qHigh.is_inf() && m * qHigh.rat() == Rat(n);
            if (upper.caseTag == "B-infty" || mqCritical) {
                r.interval.hi = {ExtRat::infinity(), false, false};
            } else {
                r.interval.hi = {hi, true, /*limit=*/!hi.is_inf()};
            }
            return r;
        }
    }
    return violation("unreachable");
}

}  // namespace tsmr::exponents
