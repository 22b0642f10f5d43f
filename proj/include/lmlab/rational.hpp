#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lmlab {

// Exact rational on int64 with __int128 intermediates. Denominators in the
// Ramare bookkeeping are tiny (products of omega+1 factors), so overflow is
// checked rather than engineered around.
struct Rat {
    int64_t num = 0;
    int64_t den = 1;

    Rat() = default;
    Rat(int64_t n) : num(n), den(1) {}
    Rat(int64_t n, int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    static Rat from_i128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rat: overflow");
        Rat r;
        r.num = static_cast<int64_t>(n);
        r.den = static_cast<int64_t>(d);
        return r;
    }

    Rat operator+(const Rat& o) const {
        return from_i128(static_cast<__int128>(num) * o.den +
                             static_cast<__int128>(o.num) * den,
                         static_cast<__int128>(den) * o.den);
    }
    Rat operator-(const Rat& o) const {
        return from_i128(static_cast<__int128>(num) * o.den -
                             static_cast<__int128>(o.num) * den,
                         static_cast<__int128>(den) * o.den);
    }
    Rat operator*(const Rat& o) const {
        return from_i128(static_cast<__int128>(num) * o.num,
                         static_cast<__int128>(den) * o.den);
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }

    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }

    bool is_integer() const { return den == 1; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        return den == 1 ? std::to_string(num)
                        : std::to_string(num) + "/" + std::to_string(den);
    }
};

}  // namespace lmlab
