#include "eprweyl/phase_point.hpp"

#include <ostream>

#include "eprweyl/errors.hpp"

namespace eprweyl {

namespace {
void require_same_dim(const PhasePoint& x, const PhasePoint& y) {
    if (x.dim() != y.dim())
        throw UsageError("phase point dimension mismatch: " + std::to_string(x.dim()) + " vs " +
                         std::to_string(y.dim()));
}
} // namespace

PhasePoint::PhasePoint(std::initializer_list<Rational> coords)
    : PhasePoint(std::span<const Rational>(coords.begin(), coords.size())) {}

PhasePoint::PhasePoint(std::span<const Rational> coords) {
    if (coords.size() != 2 && coords.size() != 4)
        throw UsageError("phase point must have 2 or 4 coordinates, got " + std::to_string(coords.size()));
    dim_ = static_cast<int>(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) coords_[i] = coords[i];
}

PhasePoint PhasePoint::zero(int dim) {
    if (dim == 2) return PhasePoint{0, 0};
    if (dim == 4) return PhasePoint{0, 0, 0, 0};
    throw UsageError("phase point dimension must be 2 or 4");
}

bool PhasePoint::is_zero() const {
    for (int i = 0; i < dim_; ++i)
        if (!coords_[static_cast<std::size_t>(i)].is_zero()) return false;
    return true;
}

PhasePoint PhasePoint::pair(int slot) const {
    if (dim_ != 4) throw UsageError("pair() requires a 4-point");
    if (slot == 1) return PhasePoint{coords_[0], coords_[1]};
    if (slot == 2) return PhasePoint{coords_[2], coords_[3]};
    throw UsageError("tensor slot must be 1 or 2");
}

std::array<double, 4> PhasePoint::to_doubles() const {
    std::array<double, 4> out{};
    for (int i = 0; i < dim_; ++i) out[static_cast<std::size_t>(i)] = coords_[static_cast<std::size_t>(i)].to_double();
    return out;
}

std::string PhasePoint::to_string() const {
    std::string s = "(";
    for (int i = 0; i < dim_; ++i) {
        if (i) s += ",";
        s += coords_[static_cast<std::size_t>(i)].to_string();
    }
    return s + ")";
}

PhasePoint PhasePoint::operator-() const {
    PhasePoint r = *this;
    for (int i = 0; i < dim_; ++i) r.coords_[static_cast<std::size_t>(i)] = -coords_[static_cast<std::size_t>(i)];
    return r;
}

PhasePoint operator+(const PhasePoint& x, const PhasePoint& y) {
    require_same_dim(x, y);
    PhasePoint r = x;
    for (std::size_t i = 0; i < static_cast<std::size_t>(x.dim_); ++i) r.coords_[i] += y.coords_[i];
    return r;
}

PhasePoint operator-(const PhasePoint& x, const PhasePoint& y) {
    require_same_dim(x, y);
    PhasePoint r = x;
    for (std::size_t i = 0; i < static_cast<std::size_t>(x.dim_); ++i) r.coords_[i] -= y.coords_[i];
    return r;
}

bool operator==(const PhasePoint& x, const PhasePoint& y) {
    if (x.dim_ != y.dim_) return false;
    for (std::size_t i = 0; i < static_cast<std::size_t>(x.dim_); ++i)
        if (!(x.coords_[i] == y.coords_[i])) return false;
    return true;
}

std::strong_ordering operator<=>(const PhasePoint& x, const PhasePoint& y) {
    if (auto c = x.dim_ <=> y.dim_; c != 0) return c;
    for (std::size_t i = 0; i < static_cast<std::size_t>(x.dim_); ++i)
        if (auto c = x.coords_[i] <=> y.coords_[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

PhasePoint concat(const PhasePoint& x, const PhasePoint& y) {
    if (x.dim() != 2 || y.dim() != 2) throw UsageError("concat requires two 2-points");
    return PhasePoint{x[0], x[1], y[0], y[1]};
}

std::ostream& operator<<(std::ostream& os, const PhasePoint& p) { return os << p.to_string(); }

} // namespace eprweyl
