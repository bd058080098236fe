#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <compare>

#include "coverbench/errors.hpp"

namespace coverbench {

// Exact rational arithmetic for instance costs. All cost comparisons in the
// solvers are equality-sensitive, so binary floating point is never used for
// costs; doubles appear only in reporting (ratio certificates, timings).
//
// Numerator/denominator are int64 kept in lowest terms with den > 0.
// Intermediates run through __int128 and narrowing is checked; desk-scale
// instances stay far away from the bounds.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(int64_t n, int64_t d) { assign(n, d); }

    int64_t num() const { return num_; }
    int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return from_wide(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return from_wide(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_wide((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) fail(ErrorCode::BadParameters, "division by zero rational");
        return from_wide((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 lhs = (__int128)a.num_ * b.den_;
        __int128 rhs = (__int128)b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    double to_double() const { return (double)num_ / (double)den_; }

    // Canonical text form: "7" or "7/2".
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "7", "-3", "7/2", and decimal literals like "2.5".
    static Rational parse(const std::string& s);

private:
    void assign(int64_t n, int64_t d) {
        if (d == 0) fail(ErrorCode::BadParameters, "rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        num_ = n;
        den_ = d;
    }

    static Rational from_wide(__int128 n, __int128 d) {
        if (d == 0) fail(ErrorCode::BadParameters, "rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 an = n < 0 ? -n : n;
        __int128 g = gcd_wide(an, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            fail(ErrorCode::Overflow, "rational arithmetic exceeded 64-bit range");
        Rational r;
        r.num_ = (int64_t)n;
        r.den_ = (int64_t)d;
        return r;
    }

    static __int128 gcd_wide(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a;
    }

    int64_t num_;
    int64_t den_;
};

inline Rational Rational::parse(const std::string& s) {
    if (s.empty()) fail(ErrorCode::ParseError, "empty rational literal");
    auto parse_int = [&](const std::string& t) -> int64_t {
        size_t pos = 0;
        int64_t v = 0;
        try {
            v = std::stoll(t, &pos);
        } catch (const std::exception&) {
            fail(ErrorCode::ParseError, "bad integer in rational literal '" + s + "'");
        }
        if (pos != t.size())
            fail(ErrorCode::ParseError, "trailing junk in rational literal '" + s + "'");
        return v;
    };
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        int64_t n = parse_int(s.substr(0, slash));
        int64_t d = parse_int(s.substr(slash + 1));
        if (d == 0) fail(ErrorCode::ParseError, "zero denominator in '" + s + "'");
        return Rational(n, d);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (fp.empty() || fp.size() > 15)
            fail(ErrorCode::ParseError, "bad decimal literal '" + s + "'");
        bool neg = !ip.empty() && ip[0] == '-';
        int64_t whole = ip.empty() || ip == "-" ? 0 : parse_int(ip);
        int64_t frac = parse_int(fp);
        if (frac < 0) fail(ErrorCode::ParseError, "bad decimal literal '" + s + "'");
        int64_t scale = 1;
        for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
        Rational r = Rational(whole < 0 ? -whole : whole) + Rational(frac, scale);
        return (neg || whole < 0) ? -r : r;
    }
    return Rational(parse_int(s));
}

}  // namespace coverbench
