#include "rpforge/geometry.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_set>

namespace rpforge {

PrecisionScope::PrecisionScope(unsigned bits)
    : saved_digits10_(Real::default_precision()) {
    // MPFR precision is configured in decimal digits here.
    Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

std::vector<Real> embed(const SignedVertex& v, int n) {
    std::vector<Real> x(n, Real(0));
    const Real c = Real(v.sign) / boost::multiprecision::sqrt(Real(v.set.size()));
    v.set.for_each([&](int i) {
        if (i <= n) x[i - 1] = c;
    });
    return x;
}

std::vector<double> embed_double(const SignedVertex& v, int n) {
    std::vector<double> x(n, 0.0);
    const double c = v.sign / std::sqrt(static_cast<double>(v.set.size()));
    v.set.for_each([&](int i) {
        if (i <= n) x[i - 1] = c;
    });
    return x;
}

ExactScalar inner_vertices(const SignedVertex& u, const SignedVertex& v) {
    const int common = (u.set & v.set).size();
    return ExactScalar(Rational(u.sign * v.sign * common),
                       static_cast<std::uint64_t>(u.set.size()) * v.set.size());
}

ExactScalar inner_rational(const std::vector<Rational>& x, const SignedVertex& v) {
    Rational sum = 0;
    v.set.for_each([&](int i) {
        if (i > static_cast<int>(x.size()))
            throw std::invalid_argument("vector shorter than subset support");
        sum += x[i - 1];
    });
    return ExactScalar(sum * v.sign, static_cast<std::uint64_t>(v.set.size()));
}

std::vector<SignedVertex> lattice_vertices(const SubsetFamily& v) {
    std::vector<SignedVertex> out;
    out.reserve(2 * v.size());
    for (Subset a : v.members()) {
        out.push_back({a, +1});
        out.push_back({a, -1});
    }
    return out;
}

std::vector<int> FaceLattice::antipodes() const {
    std::map<std::pair<std::uint64_t, int>, int> index;
    for (int i = 0; i < vertex_count(); ++i) index[{vertices[i].set.bits(), vertices[i].sign}] = i;
    std::vector<int> out(vertices.size());
    for (int i = 0; i < vertex_count(); ++i) {
        auto it = index.find({vertices[i].set.bits(), -vertices[i].sign});
        if (it == index.end())
            throw std::invalid_argument("vertex list is not centrally symmetric at " +
                                        vertices[i].set.to_string());
        out[i] = it->second;
    }
    return out;
}

std::vector<std::vector<int>> FaceLattice::facet_star() const {
    std::vector<std::vector<int>> star(vertices.size());
    for (int f = 0; f < static_cast<int>(facets.size()); ++f)
        facets[f].vertices.for_each([&](int v) { star[v].push_back(f); });
    return star;
}

Real FaceLattice::min_margin() const {
    Real m = facets.empty() ? Real(0) : facets.front().margin;
    for (const auto& f : facets) m = std::min(m, f.margin);
    return m;
}

ConditionReport check_orthant_property(const FaceLattice& lattice) {
    ConditionReport r;
    r.name = "orthant";
    for (std::size_t f = 0; f < lattice.facets.size(); ++f) {
        ++r.checked;
        // Coordinate i of a vertex has the vertex's sign when i is in its set.
        Subset positive, negative;
        lattice.facets[f].vertices.for_each([&](int v) {
            const auto& sv = lattice.vertices[v];
            if (sv.sign > 0) positive = positive | sv.set;
            else negative = negative | sv.set;
        });
        const Subset clash = positive & negative;
        if (!clash.empty())
            r.add({"orthant", {clash}, lattice.facets[f].vertices.indices(),
                   "facet " + std::to_string(f) + " has both signs in coordinates " +
                       clash.to_string()});
    }
    return r;
}

ConditionReport check_antipodal_disjoint(const FaceLattice& lattice) {
    ConditionReport r;
    r.name = "antipodal_disjoint";
    const auto anti = lattice.antipodes();
    const auto star = lattice.facet_star();
    for (int v = 0; v < lattice.vertex_count(); ++v) {
        const int w = anti[v];
        if (w < v) continue;
        for (int g : star[v]) {
            for (int h : star[w]) {
                ++r.checked;
                const VertexSet common = lattice.facets[g].vertices & lattice.facets[h].vertices;
                if (!common.empty()) {
                    std::vector<int> witness = {v, w, g, h, common.first()};
                    r.add({"antipodal_disjoint", {lattice.vertices[v].set}, witness,
                           "facets " + std::to_string(g) + " and " + std::to_string(h) +
                               " at opposite vertices share vertex " +
                               std::to_string(common.first())});
                }
            }
        }
    }
    return r;
}

ConditionReport check_unit_norms(const FaceLattice& lattice) {
    ConditionReport r;
    r.name = "unit_norm";
    const ExactScalar one(Rational(1));
    for (int v = 0; v < lattice.vertex_count(); ++v) {
        ++r.checked;
        const auto& sv = lattice.vertices[v];
        if (inner_vertices(sv, sv) != one)
            r.add({"unit_norm", {sv.set}, {v}, "vertex " + std::to_string(v) + " is not unit"});
    }
    return r;
}

ConditionReport check_central_symmetry(const FaceLattice& lattice) {
    ConditionReport r;
    r.name = "central_symmetry";
    const auto anti = lattice.antipodes();
    std::unordered_set<VertexSet, VertexSetHash> facets;
    for (const auto& f : lattice.facets) facets.insert(f.vertices);
    for (std::size_t f = 0; f < lattice.facets.size(); ++f) {
        ++r.checked;
        VertexSet neg;
        lattice.facets[f].vertices.for_each([&](int v) { neg.insert(anti[v]); });
        if (!facets.contains(neg))
            r.add({"central_symmetry", {}, lattice.facets[f].vertices.indices(),
                   "negation of facet " + std::to_string(f) + " is not a facet"});
    }
    return r;
}

const char* to_string(SupportRoute r) {
    switch (r) {
    case SupportRoute::Exchange: return "exchange";
    case SupportRoute::Singleton: return "singleton";
    case SupportRoute::Shrink: return "shrink";
    case SupportRoute::Grow: return "grow";
    case SupportRoute::Fallback: return "fallback";
    }
    return "?";
}

SupportWitness smaller_support_witness(Subset a, Subset b, const std::vector<Rational>& x,
                                       const SubsetFamily& v, bool exhaustive_fallback) {
    if (static_cast<int>(x.size()) != v.n())
        throw std::invalid_argument("direction has the wrong dimension");
    if (!v.contains(a) || !v.contains(b))
        throw std::invalid_argument("support witness needs members of the family");
    if (!a.disjoint(b)) throw std::invalid_argument("support witness needs disjoint sets");
    if (std::any_of(x.begin(), x.end(), [](const Rational& t) { return t < 0; }))
        throw std::invalid_argument("direction must be nonnegative");
    if (std::all_of(x.begin(), x.end(), [](const Rational& t) { return t == 0; }))
        throw std::invalid_argument("direction must be nonzero");

    const SignedVertex va{a, 1}, vb{b, 1};
    const ExactScalar target = inner_rational(x, va);
    if (target != inner_rational(x, vb))
        throw std::invalid_argument("support witness needs <A,x> = <B,x>");

    auto value = [&](Subset c) { return inner_rational(x, SignedVertex{c, 1}); };
    auto coord = [&](int i) -> const Rational& { return x[i - 1]; };

    std::optional<SupportWitness> result;
    auto accept = [&](Subset c, SupportRoute route) {
        if (!v.contains(c)) return;
        ExactScalar val = value(c);
        if (val > target && (!result || val > result->value))
            result = SupportWitness{c, route, std::move(val)};
    };

    if (auto w = find_exchange_witness(v, a, b)) {
        // Orient the witness so that P + q and Q + p - q are members.
        Subset p_set = a, q_set = b;
        int p = w->i, q = w->j;
        if (w->which == ExchangeCase::A) {
            std::swap(p_set, q_set);
            std::swap(p, q);
        }
        if (coord(p) > coord(q)) {
            accept(q_set.with(p).without(q), SupportRoute::Exchange);
        } else if (target.sign() == 0) {
            for (int k = 1; k <= v.n() && !result; ++k)
                if (coord(k) > 0) accept(Subset::singleton(k), SupportRoute::Singleton);
        } else {
            if (p_set.size() > 1) {
                int argmin = p_set.min_element();
                p_set.for_each([&](int i) {
                    if (coord(i) < coord(argmin)) argmin = i;
                });
                accept(p_set.without(argmin), SupportRoute::Shrink);
            }
            accept(p_set.with(q), SupportRoute::Grow);
        }
    }

    if (!result && exhaustive_fallback) {
        for (Subset c : v.members()) {
            ExactScalar val = value(c);
            if (val > target && (!result || val > result->value))
                result = SupportWitness{c, SupportRoute::Fallback, std::move(val)};
        }
    }
    if (!result)
        throw std::logic_error("no support witness for " + a.to_string() + ", " + b.to_string() +
                               "; the family violates the exchange hypotheses");
    return *result;
}

} // namespace rpforge
