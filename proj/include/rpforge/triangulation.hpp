#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "rpforge/complex.hpp"
#include "rpforge/geometry.hpp"
#include "rpforge/report.hpp"
#include "rpforge/vertex_set.hpp"

namespace rpforge {

struct EquivariantTriangulation {
    SimplicialComplex complex;
    Involution involution;
};

// Pulling triangulation of the polytopal cells `cells` (each of dimension
// `cell_dim`), pulling vertices in increasing index order. The faces of a
// cell F are generated by the sets F & G for G in `face_source`; for the
// boundary of a polytope the facets themselves serve.
std::vector<Simplex> pulling_triangulation(std::span<const VertexSet> cells, int cell_dim,
                                           std::span<const VertexSet> face_source);

// Triangulates the boundary of the lattice's polytope by pulling pairs of
// opposite vertices (lattice order: +A immediately before -A). Throws
// std::invalid_argument if some face contains opposite vertices.
EquivariantTriangulation pull_triangulate(const FaceLattice& lattice);

// Throws std::invalid_argument if the involution does not match the complex.
ConditionReport check_equivariance(const SimplicialComplex& s, const Involution& inv);
ConditionReport check_star_disjointness(const SimplicialComplex& s, const Involution& inv);

class QuotientError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The orbit complex S / (v ~ inv(v)). Quotient vertex t stands for the pair
// whose smaller id is the t-th smallest representative. Throws QuotientError
// when the preconditions fail or the identification is not simplicial.
SimplicialComplex quotient(const SimplicialComplex& s, const Involution& inv);

} // namespace rpforge
