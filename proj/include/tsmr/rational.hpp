#pragma once

#include <cstdint>
#include <string>

#include "tsmr/errors.hpp"

namespace tsmr {

// Exact rational with int64 numerator/denominator, always normalized
// (den > 0, gcd(|num|, den) == 1). Intermediate products go through
// __int128 and overflow is reported, not wrapped.
class Rat {
public:
    constexpr Rat() : num_(0), den_(1) {}
    Rat(std::int64_t n) : num_(n), den_(1) {}
    Rat(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    Rat operator-() const;
    friend Rat operator+(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a, const Rat& b);
    friend Rat operator*(const Rat& a, const Rat& b);
    friend Rat operator/(const Rat& a, const Rat& b);

    friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b);
    friend bool operator<=(const Rat& a, const Rat& b) { return a < b || a == b; }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

    Rat inv() const;

    // Parses "a/b", integers, and plain decimals ("-0.5"); exact.
    static Rat parse(const std::string& s);

private:
    std::int64_t num_, den_;
};

// Rational extended with +infinity. Exponents like q, M live in (0, inf];
// infinity stays symbolic, never a float sentinel.
class ExtRat {
public:
    ExtRat() : finite_(Rat(0)), inf_(false) {}
    ExtRat(const Rat& r) : finite_(r), inf_(false) {}
    ExtRat(std::int64_t n) : finite_(Rat(n)), inf_(false) {}

    static ExtRat infinity() {
        ExtRat e;
        e.inf_ = true;
        return e;
    }

    bool is_inf() const { return inf_; }
    const Rat& rat() const {
        if (inf_) throw NumericError("ExtRat: infinite value has no rational part");
        return finite_;
    }

    double to_double() const;
    std::string str() const { return inf_ ? "inf" : finite_.str(); }

    // Conjugate exponent x' = x/(x-1), with 1' = inf and inf' = 1.
    ExtRat conjugate() const;
    // 1/x with 1/inf = 0.
    Rat reciprocal() const { return inf_ ? Rat(0) : finite_.inv(); }

    friend bool operator==(const ExtRat& a, const ExtRat& b);
    friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }
    friend bool operator<(const ExtRat& a, const ExtRat& b);
    friend bool operator<=(const ExtRat& a, const ExtRat& b) { return a < b || a == b; }
    friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
    friend bool operator>=(const ExtRat& a, const ExtRat& b) { return b <= a; }

    static ExtRat parse(const std::string& s);

private:
    Rat finite_;
    bool inf_;
};

inline ExtRat min(const ExtRat& a, const ExtRat& b) { return a < b ? a : b; }
inline ExtRat max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

}  // namespace tsmr
