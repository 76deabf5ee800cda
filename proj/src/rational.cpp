#include "eprweyl/rational.hpp"

#include <cctype>
#include <ostream>

#include "eprweyl/errors.hpp"

namespace eprweyl {

Rational::Rational(std::int64_t n) : value_(static_cast<long>(n)) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw UsageError("Rational: zero denominator");
    value_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
    const std::string s(text);
    const auto slash = s.find('/');
    auto valid_int = [](const std::string& part) {
        std::size_t i = 0;
        if (!part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
        return true;
    };
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw UsageError("malformed rational '" + s + "'");
    mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
    mpz_class d(den, 10);
    if (d == 0) throw UsageError("rational '" + s + "' has zero denominator");
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(std::move(q));
}

std::string Rational::to_string() const { return value_.get_str(10); }

Rational& Rational::operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
}
Rational& Rational::operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
}
Rational& Rational::operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw UsageError("Rational: division by zero");
    return Rational(mpq_class(a.value_ / b.value_));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

} // namespace eprweyl
