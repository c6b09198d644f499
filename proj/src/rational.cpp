#include "tsmr/rational.hpp"

#include <cstdlib>
#include <limits>
#include <numeric>

namespace tsmr {

namespace {

using i128 = __int128;

std::int64_t checked_narrow(i128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw NumericError("rational overflow");
    return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rat make(i128 n, i128 d) {
    if (d == 0) throw NumericError("rational division by zero");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return Rat(checked_narrow(n), checked_narrow(d));
}

}  // namespace

Rat::Rat(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (d == 0) throw NumericError("rational division by zero");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

std::string Rat::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat Rat::operator-() const { return Rat(-num_, den_); }

Rat operator+(const Rat& a, const Rat& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }

Rat operator*(const Rat& a, const Rat& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw NumericError("rational division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

bool operator<(const Rat& a, const Rat& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
}

Rat Rat::inv() const {
    if (num_ == 0) throw NumericError("rational division by zero");
    return Rat(den_, num_);
}

Rat Rat::parse(const std::string& s) {
    if (s.empty()) throw ParameterError("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::int64_t n = std::stoll(s.substr(0, slash));
        std::int64_t d = std::stoll(s.substr(slash + 1));
        return Rat(n, d);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac = s.size() - dot - 1;
        std::int64_t n = std::stoll(digits);
        std::int64_t d = 1;
        for (std::size_t i = 0; i < frac; ++i) {
            if (d > std::numeric_limits<std::int64_t>::max() / 10)
                throw NumericError("rational overflow");
            d *= 10;
        }
        return Rat(n, d);
    }
    return Rat(std::stoll(s));
}

double ExtRat::to_double() const {
    return inf_ ? std::numeric_limits<double>::infinity() : finite_.to_double();
}

ExtRat ExtRat::conjugate() const {
    if (inf_) return ExtRat(Rat(1));
    if (finite_ == Rat(1)) return ExtRat::infinity();
    if (finite_ <= Rat(0)) throw ParameterError("conjugate exponent needs x >= 1");
    return ExtRat(finite_ / (finite_ - Rat(1)));
}

bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
    return a.finite_ == b.finite_;
}

bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.finite_ < b.finite_;
}

ExtRat ExtRat::parse(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") return ExtRat::infinity();
    return ExtRat(Rat::parse(s));
}

}  // namespace tsmr
