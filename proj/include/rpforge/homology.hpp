#pragma once

#include <vector>

#include "rpforge/complex.hpp"
#include "rpforge/report.hpp"
#include "rpforge/smith.hpp"

namespace rpforge {

// Simplicial chain complex with lexicographically ordered faces; boundary[d]
// maps d-chains to (d-1)-chains (boundary[0] is the 0 x f0 zero map).
struct ChainComplexData {
    std::vector<std::vector<Simplex>> faces;
    std::vector<SparseIntMatrix> boundary;

    int dimension() const { return static_cast<int>(faces.size()) - 1; }
};

// Entry for omitting the vertex at position p of a sorted face is (-1)^p.
// Throws std::logic_error if some composite boundary is nonzero.
ChainComplexData boundary_matrices(const SimplicialComplex& k);

// Checks boundary[d-1] * boundary[d] == 0 for every d.
bool boundary_squares_to_zero(const ChainComplexData& c);

enum class Coefficients { Z, Z2 };
const char* to_string(Coefficients c);

struct HomologyGroup {
    int d = 0;
    long long rank = 0;
    std::vector<BigInt> torsion;  // invariant factors > 1 (always empty over Z/2)
    bool operator==(const HomologyGroup&) const = default;
};

struct HomologyResult {
    Coefficients coefficients = Coefficients::Z;
    std::vector<HomologyGroup> dims;
    long long euler = 0;

    bool same_groups(const HomologyResult& o) const {
        return coefficients == o.coefficients && dims == o.dims;
    }
};

// Z: ranks and torsion from Smith normal forms. Z2: ranks over GF(2).
// Throws std::logic_error if the Euler-Poincare identity fails.
HomologyResult homology(const SimplicialComplex& k, Coefficients coefficients);

// Homology of RP^m.
HomologyResult expected_rp_homology(int m, Coefficients coefficients);

// Every codimension-1 face in exactly two maximal faces, and the facet
// adjacency graph connected. Throws std::invalid_argument on non-pure input.
ConditionReport check_pseudomanifold(const SimplicialComplex& k);

// For dimension 1: every vertex has degree 2. For dimension 2: every vertex
// link is a single cycle. Throws std::invalid_argument above dimension 2.
ConditionReport check_vertex_links(const SimplicialComplex& k);

} // namespace rpforge
