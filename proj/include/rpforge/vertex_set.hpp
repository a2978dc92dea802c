#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace rpforge {

// Set of vertex indices below kCapacity. Polytopes handled here have at most
// 2 * (2^7 - 1) = 254 vertices, which bounds the hull stage.
class VertexSet {
public:
    static constexpr int kCapacity = 256;
    static constexpr int kWords = kCapacity / 64;

    VertexSet() = default;
    static VertexSet of(const std::vector<int>& indices) {
        VertexSet s;
        for (int i : indices) s.insert(i);
        return s;
    }

    void insert(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void erase(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool contains(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }
    // Smallest member, or -1.
    int first() const {
        for (int k = 0; k < kWords; ++k)
            if (words_[k]) return k * 64 + std::countr_zero(words_[k]);
        return -1;
    }
    bool subset_of(const VertexSet& o) const {
        for (int k = 0; k < kWords; ++k)
            if (words_[k] & ~o.words_[k]) return false;
        return true;
    }
    bool intersects(const VertexSet& o) const {
        for (int k = 0; k < kWords; ++k)
            if (words_[k] & o.words_[k]) return true;
        return false;
    }

    VertexSet operator&(const VertexSet& o) const {
        VertexSet r;
        for (int k = 0; k < kWords; ++k) r.words_[k] = words_[k] & o.words_[k];
        return r;
    }
    VertexSet operator|(const VertexSet& o) const {
        VertexSet r;
        for (int k = 0; k < kWords; ++k) r.words_[k] = words_[k] | o.words_[k];
        return r;
    }
    VertexSet& operator|=(const VertexSet& o) {
        for (int k = 0; k < kWords; ++k) words_[k] |= o.words_[k];
        return *this;
    }

    template <class F>
    void for_each(F&& f) const {
        for (int k = 0; k < kWords; ++k)
            for (std::uint64_t w = words_[k]; w; w &= w - 1) f(k * 64 + std::countr_zero(w));
    }
    std::vector<int> indices() const {
        std::vector<int> out;
        for_each([&](int i) { out.push_back(i); });
        return out;
    }

    bool operator==(const VertexSet&) const = default;
    // Total order: the set holding the smallest differing index comes first.
    bool lex_less(const VertexSet& o) const {
        for (int k = 0; k < kWords; ++k) {
            const std::uint64_t diff = words_[k] ^ o.words_[k];
            if (diff) return (words_[k] & (diff & -diff)) != 0;
        }
        return false;
    }

    std::size_t hash() const {
        std::size_t h = 0;
        for (auto w : words_) h = h * 0x9E3779B97F4A7C15ull ^ std::hash<std::uint64_t>{}(w);
        return h;
    }

private:
    std::array<std::uint64_t, kWords> words_{};
};

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

} // namespace rpforge
