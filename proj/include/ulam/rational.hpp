#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ulam {

// Exact rational with canonical form (den > 0, gcd(num, den) == 1).
// Thresholds like "count >= (1 - 2*alpha) * m" are evaluated by
// cross-multiplication in integers, never through floating point.
class Rational {
public:
    Rational() : num_(0), den_(1) {}

    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den_ == 0) throw std::invalid_argument("rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    static Rational from_int(std::int64_t v) { return Rational(v, 1); }

    // Accepts "p/q", an integer, or a plain decimal such as "0.1" (exactly 1/10).
    static Rational parse(const std::string& text) {
        if (text.empty()) throw std::invalid_argument("rational: empty string");
        const auto slash = text.find('/');
        if (slash != std::string::npos) {
            return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
        }
        const auto dot = text.find('.');
        if (dot == std::string::npos) {
            return Rational(parse_int(text), 1);
        }
        const std::string whole = text.substr(0, dot);
        const std::string frac = text.substr(dot + 1);
        if (frac.size() > 18) throw std::invalid_argument("rational: too many decimal digits");
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const bool neg = !whole.empty() && whole[0] == '-';
        const std::int64_t w = whole.empty() || whole == "-" ? 0 : parse_int(whole);
        std::int64_t f = frac.empty() ? 0 : parse_int(frac);
        if (neg) f = -f;
        return Rational(w * den + f, den);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string to_string() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    static std::int64_t parse_int(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("rational: bad integer '" + s + "'");
        std::size_t pos = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("rational: bad integer '" + s + "'");
        }
        if (pos != s.size()) throw std::invalid_argument("rational: bad integer '" + s + "'");
        return v;
    }

    std::int64_t num_;
    std::int64_t den_;
};

}  // namespace ulam
