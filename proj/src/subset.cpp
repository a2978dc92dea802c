#include "rpforge/subset.hpp"

#include <stdexcept>

namespace rpforge {

Subset Subset::from_elements(const std::vector<int>& elements) {
    std::uint64_t bits = 0;
    for (int i : elements) {
        if (i < 1 || i > kMaxGroundSize)
            throw std::invalid_argument("subset element out of range: " + std::to_string(i));
        bits |= std::uint64_t{1} << (i - 1);
    }
    return Subset(bits);
}

std::vector<int> Subset::elements() const {
    std::vector<int> out;
    out.reserve(size());
    for_each([&](int i) { out.push_back(i); });
    return out;
}

std::string Subset::to_string() const {
    std::string s = "{";
    bool first = true;
    for_each([&](int i) {
        if (!first) s += ",";
        s += std::to_string(i);
        first = false;
    });
    return s + "}";
}

bool canonical_less(Subset a, Subset b) {
    if (a.size() != b.size()) return a.size() < b.size();
    std::uint64_t diff = a.bits() ^ b.bits();
    if (diff == 0) return false;
    // With equal sizes, the set holding the smallest differing element comes first.
    return (a.bits() & (diff & -diff)) != 0;
}

} // namespace rpforge
