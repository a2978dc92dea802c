#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rpforge {

using BigInt = boost::multiprecision::cpp_int;
using DenseIntMatrix = std::vector<std::vector<BigInt>>;

// Column-major sparse integer matrix; each column holds (row, value) pairs
// sorted by row with nonzero values.
struct SparseIntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, std::int64_t>>> columns;

    DenseIntMatrix to_dense() const;
};

struct SmithResult {
    // Nonzero invariant factors d1 | d2 | ..., all positive.
    std::vector<BigInt> invariants;
    std::size_t rank() const { return invariants.size(); }
};

SmithResult smith_normal_form(DenseIntMatrix m);

// Eliminates unit pivots sparsely, then finishes the residual block densely.
// Same result as smith_normal_form on the dense matrix.
SmithResult smith_normal_form(const SparseIntMatrix& m);

// Rank over Z/p for a prime p.
std::size_t rank_mod_prime(const SparseIntMatrix& m, std::int64_t p);

} // namespace rpforge
