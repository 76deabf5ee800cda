#pragma once

#include <array>
#include <compare>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>

#include "eprweyl/rational.hpp"

namespace eprweyl {

/// A point of R^2 (a, b) or R^4 (a, b, c, d) with exact rational coordinates.
///
/// In dimension 4 the first pair belongs to the first tensor factor and the
/// second pair to the second factor.
class PhasePoint {
public:
    PhasePoint() = default;
    PhasePoint(std::initializer_list<Rational> coords);
    explicit PhasePoint(std::span<const Rational> coords);

    static PhasePoint zero(int dim);

    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] const Rational& operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] std::span<const Rational> coords() const {
        return {coords_.data(), static_cast<std::size_t>(dim_)};
    }
    [[nodiscard]] bool is_zero() const;

    /// First (slot 1) or second (slot 2) coordinate pair of a 4-point.
    [[nodiscard]] PhasePoint pair(int slot) const;
    [[nodiscard]] std::array<double, 4> to_doubles() const;
    [[nodiscard]] std::string to_string() const;

    PhasePoint operator-() const;
    friend PhasePoint operator+(const PhasePoint& x, const PhasePoint& y);
    friend PhasePoint operator-(const PhasePoint& x, const PhasePoint& y);

    friend bool operator==(const PhasePoint& x, const PhasePoint& y);
    friend std::strong_ordering operator<=>(const PhasePoint& x, const PhasePoint& y);

private:
    std::array<Rational, 4> coords_{};
    int dim_ = 0;
};

/// Concatenates two 2-points into the 4-point (x, y).
PhasePoint concat(const PhasePoint& x, const PhasePoint& y);

std::ostream& operator<<(std::ostream& os, const PhasePoint& p);

} // namespace eprweyl
