#pragma once

#include <cstdint>
#include <string>

#include "horolab/errors.hpp"

namespace horolab {

using int128 = __int128;

std::string int128_to_string(int128 v);

// Exact non-negative rational on 128-bit components.
//
// Boundary/volume ratios stay tiny, but Folner denominators are sums of
// products of level counts (each up to the 1e15 count cap), so numerators and
// denominators can reach ~1e32. Comparisons use Euclidean steps instead of
// cross products, so they cannot overflow even at full 128-bit width.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int128 num, int128 den) : num_(num), den_(den) {
        if (den_ == 0) throw ParameterError("Rational: zero denominator");
        if (num_ < 0 || den_ < 0) throw ParameterError("Rational: negative component");
        reduce();
    }
    static Rational from_ints(long long num, long long den) {
        return Rational(static_cast<int128>(num), static_cast<int128>(den));
    }

    int128 num() const { return num_; }
    int128 den() const { return den_; }

    bool is_zero() const { return num_ == 0; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    Rational scaled(long long factor) const {
        if (factor < 0) throw ParameterError("Rational::scaled: negative factor");
        return Rational(num_ * factor, den_);
    }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return compare(*this, o) < 0; }
    bool operator>(const Rational& o) const { return compare(*this, o) > 0; }
    bool operator<=(const Rational& o) const { return compare(*this, o) <= 0; }
    bool operator>=(const Rational& o) const { return compare(*this, o) >= 0; }

    static int compare(const Rational& a, const Rational& b) {
        int128 an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
        for (;;) {
            const int128 qa = an / ad;
            const int128 qb = bn / bd;
            if (qa != qb) return qa < qb ? -1 : 1;
            const int128 ra = an % ad;
            const int128 rb = bn % bd;
            if (ra == 0 && rb == 0) return 0;
            if (ra == 0) return -1;
            if (rb == 0) return 1;
            // Both fractional parts are in (0,1); x < y iff 1/x > 1/y, so
            // continue on the swapped reciprocals.
            const int128 old_ad = ad, old_bd = bd;
            an = old_bd; ad = rb;
            bn = old_ad; bd = ra;
        }
    }

    // "num/den", or just "num" when den == 1.
    std::string str() const {
        if (den_ == 1) return int128_to_string(num_);
        return int128_to_string(num_) + "/" + int128_to_string(den_);
    }

private:
    void reduce() {
        int128 g = gcd128(num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    static int128 gcd128(int128 a, int128 b) {
        while (b != 0) { int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    int128 num_;
    int128 den_;
};

}  // namespace horolab
