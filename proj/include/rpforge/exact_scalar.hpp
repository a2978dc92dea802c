#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace rpforge {

using Rational = boost::multiprecision::mpq_rational;

// The value numerator / sqrt(radicand), with radicand square-free after
// construction. Inner products between subset vertices, and between a subset
// vertex and a rational vector, all have this form.
class ExactScalar {
public:
    ExactScalar() = default;
    explicit ExactScalar(Rational numerator, std::uint64_t radicand = 1);

    const Rational& numerator() const { return numerator_; }
    std::uint64_t radicand() const { return radicand_; }
    int sign() const { return numerator_.sign(); }

    ExactScalar operator-() const;

    std::strong_ordering operator<=>(const ExactScalar& o) const;
    bool operator==(const ExactScalar& o) const { return (*this <=> o) == 0; }

    double to_double() const;
    std::string to_string() const;

private:
    Rational numerator_ = 0;
    std::uint64_t radicand_ = 1;
};

} // namespace rpforge
