#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rpforge {

// Largest ground set the fixed-width encoding supports.
inline constexpr int kMaxGroundSize = 64;

// A subset of the ground set {1,...,n}, stored as a membership word.
// Element i (1-based) lives in bit i-1.
class Subset {
public:
    constexpr Subset() = default;
    constexpr explicit Subset(std::uint64_t bits) : bits_(bits) {}

    static Subset from_elements(const std::vector<int>& elements);
    static constexpr Subset singleton(int i) { return Subset(std::uint64_t{1} << (i - 1)); }
    // {1,...,n}
    static constexpr Subset full(int n) {
        return Subset(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool contains(int i) const { return (bits_ >> (i - 1)) & 1u; }
    constexpr bool disjoint(Subset o) const { return (bits_ & o.bits_) == 0; }
    constexpr bool subset_of(Subset o) const { return (bits_ & ~o.bits_) == 0; }
    // Largest element, 0 when empty.
    constexpr int max_element() const { return 64 - std::countl_zero(bits_); }
    constexpr int min_element() const { return bits_ ? std::countr_zero(bits_) + 1 : 0; }

    constexpr Subset with(int i) const { return Subset(bits_ | (std::uint64_t{1} << (i - 1))); }
    constexpr Subset without(int i) const { return Subset(bits_ & ~(std::uint64_t{1} << (i - 1))); }

    constexpr Subset operator|(Subset o) const { return Subset(bits_ | o.bits_); }
    constexpr Subset operator&(Subset o) const { return Subset(bits_ & o.bits_); }
    constexpr Subset minus(Subset o) const { return Subset(bits_ & ~o.bits_); }

    // Sorted 1-based elements.
    std::vector<int> elements() const;
    std::string to_string() const;

    template <class F>
    void for_each(F&& f) const {
        for (std::uint64_t w = bits_; w; w &= w - 1) f(std::countr_zero(w) + 1);
    }

    constexpr bool operator==(const Subset&) const = default;

private:
    std::uint64_t bits_ = 0;
};

// Canonical order: by size, then lexicographic on the sorted element lists.
bool canonical_less(Subset a, Subset b);

struct CanonicalLess {
    bool operator()(Subset a, Subset b) const { return canonical_less(a, b); }
};

} // namespace rpforge

template <>
struct std::hash<rpforge::Subset> {
    std::size_t operator()(rpforge::Subset s) const noexcept {
        return std::hash<std::uint64_t>{}(s.bits());
    }
};
