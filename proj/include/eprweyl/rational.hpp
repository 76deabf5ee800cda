#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace eprweyl {

/// Exact rational number in canonical reduced form (denominator > 0).
///
/// Coordinates of phase points are rationals so that support decisions
/// (x == 0, a + c == 0, ...) are exact rather than tolerance based.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n); // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(mpq_class value);

    /// Parses "p", "-p", "p/q". Throws UsageError on malformed input or q == 0.
    static Rational parse(std::string_view text);

    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] double to_double() const { return value_.get_d(); }
    [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
    [[nodiscard]] const mpq_class& raw() const { return value_; }

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(const Rational& a, const Rational& b);

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace eprweyl
