#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "rpforge/exact_scalar.hpp"
#include "rpforge/family.hpp"
#include "rpforge/report.hpp"
#include "rpforge/vertex_set.hpp"

namespace rpforge {

using Real = boost::multiprecision::mpfr_float;

// Sets the default MPFR working precision (in bits) for its lifetime.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_digits10_;
};

// The point +-A/|A|^(1/2) on the unit sphere.
struct SignedVertex {
    Subset set;
    int sign = 1;

    SignedVertex operator-() const { return {set, -sign}; }
    bool operator==(const SignedVertex&) const = default;
};

// Coordinates at the current default precision.
std::vector<Real> embed(const SignedVertex& v, int n);
std::vector<double> embed_double(const SignedVertex& v, int n);

ExactScalar inner_vertices(const SignedVertex& u, const SignedVertex& v);
ExactScalar inner_rational(const std::vector<Rational>& x, const SignedVertex& v);

struct Facet {
    VertexSet vertices;
    std::vector<Real> normal;  // unit outer normal
    Real offset;               // <v, normal> for v on the facet
    Real residual;             // max |<v, normal> - offset| over facet vertices
    Real margin;               // min offset - <v, normal> over the other vertices
};

struct FaceLattice {
    int n = 0;
    std::vector<SignedVertex> vertices;
    std::vector<Facet> facets;
    unsigned precision_bits = 0;
    double eps = 0;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    // antipodes()[v] is the index of -v; throws if some -v is missing.
    std::vector<int> antipodes() const;
    // facet_star()[v] lists the facets containing vertex v.
    std::vector<std::vector<int>> facet_star() const;
    Real min_margin() const;
};

// A facet that could not be certified at the requested tolerance.
class CertificationError : public std::runtime_error {
public:
    CertificationError(const std::string& what, std::vector<int> facet_vertices)
        : std::runtime_error(what), facet_vertices_(std::move(facet_vertices)) {}
    const std::vector<int>& facet_vertices() const { return facet_vertices_; }

private:
    std::vector<int> facet_vertices_;
};

struct HullOptions {
    unsigned precision_bits = 256;
    double eps = std::ldexp(1.0, -64);
};

// Vertex order of the lattice: for each member A in canonical order, +A then -A.
std::vector<SignedVertex> lattice_vertices(const SubsetFamily& v);

// Face lattice of P(V), the hull of the points V and -V. Requires every
// singleton in V. Each facet is certified: its vertices lie on the computed
// hyperplane within eps and every other vertex lies below it by more than eps.
FaceLattice convex_hull(const SubsetFamily& v, const HullOptions& options = {});

ConditionReport check_orthant_property(const FaceLattice& lattice);
ConditionReport check_antipodal_disjoint(const FaceLattice& lattice);
// Unit norm of every vertex, tested with exact arithmetic.
ConditionReport check_unit_norms(const FaceLattice& lattice);
// Facet list closed under negation.
ConditionReport check_central_symmetry(const FaceLattice& lattice);

enum class SupportRoute { Exchange, Singleton, Shrink, Grow, Fallback };
const char* to_string(SupportRoute r);

struct SupportWitness {
    Subset c;
    SupportRoute route = SupportRoute::Exchange;
    ExactScalar value;  // <C, x>
};

// For disjoint members A, B with <A,x> = <B,x> and x >= 0 (not all zero),
// finds C in V with <C,x> > <A,x> by the exchange / convexity case analysis.
// The result is verified exactly. With `exhaustive_fallback`, a failed
// construction falls back to scanning V and reports route Fallback.
SupportWitness smaller_support_witness(Subset a, Subset b, const std::vector<Rational>& x,
                                       const SubsetFamily& v, bool exhaustive_fallback = false);

} // namespace rpforge
