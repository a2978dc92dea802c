#include "rpforge/exact_scalar.hpp"

#include <cmath>
#include <stdexcept>

namespace rpforge {

ExactScalar::ExactScalar(Rational numerator, std::uint64_t radicand)
    : numerator_(std::move(numerator)), radicand_(radicand) {
    if (radicand_ == 0) throw std::invalid_argument("ExactScalar radicand must be positive");
    if (numerator_ == 0) {
        radicand_ = 1;
        return;
    }
    // q / sqrt(f^2 r) = (q / f) / sqrt(r)
    for (std::uint64_t f = 2; f * f <= radicand_; ++f) {
        while (radicand_ % (f * f) == 0) {
            radicand_ /= f * f;
            numerator_ /= f;
        }
    }
}

ExactScalar ExactScalar::operator-() const {
    ExactScalar r = *this;
    r.numerator_ = -r.numerator_;
    return r;
}

std::strong_ordering ExactScalar::operator<=>(const ExactScalar& o) const {
    const int sa = sign(), sb = o.sign();
    if (sa != sb) return sa <=> sb;
    if (sa == 0) return std::strong_ordering::equal;
    // Same sign: compare squares, q1^2 r2 vs q2^2 r1, flipping for negatives.
    const Rational lhs = numerator_ * numerator_ * o.radicand_;
    const Rational rhs = o.numerator_ * o.numerator_ * radicand_;
    const int c = lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    return (sa > 0 ? c : -c) <=> 0;
}

double ExactScalar::to_double() const {
    return numerator_.convert_to<double>() / std::sqrt(static_cast<double>(radicand_));
}

std::string ExactScalar::to_string() const {
    std::string s = numerator_.str();
    if (radicand_ != 1) s += "/sqrt(" + std::to_string(radicand_) + ")";
    return s;
}

} // namespace rpforge
