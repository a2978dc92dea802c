#include "rpforge/triangulation.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include <spdlog/spdlog.h>

namespace rpforge {

namespace {

class Puller {
public:
    explicit Puller(std::span<const VertexSet> source) : source_(source) {}

    const std::vector<VertexSet>& pull(const VertexSet& face, int dim) {
        if (auto it = memo_.find(face); it != memo_.end()) return it->second;
        std::vector<VertexSet> out;
        if (face.count() == dim + 1) {
            out.push_back(face);
        } else {
            const int apex = face.first();
            for (const VertexSet& sub : facets_of(face)) {
                if (sub.contains(apex)) continue;
                for (VertexSet simplex : pull(sub, dim - 1)) {
                    simplex.insert(apex);
                    if (simplex.count() != dim + 1)
                        throw std::logic_error("pulling produced a degenerate simplex");
                    out.push_back(simplex);
                }
            }
            if (out.empty()) throw std::logic_error("pulling found no faces avoiding the apex");
        }
        return memo_.emplace(face, std::move(out)).first->second;
    }

private:
    // Maximal proper nonempty sets among face & G.
    std::vector<VertexSet> facets_of(const VertexSet& face) const {
        std::vector<VertexSet> cand;
        for (const VertexSet& g : source_) {
            VertexSet c = face & g;
            if (!c.empty() && !(c == face)) cand.push_back(c);
        }
        std::sort(cand.begin(), cand.end(),
                  [](const VertexSet& x, const VertexSet& y) { return x.lex_less(y); });
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        std::vector<VertexSet> out;
        for (const auto& c : cand) {
            bool maximal = true;
            for (const auto& d : cand)
                if (!(c == d) && c.subset_of(d)) {
                    maximal = false;
                    break;
                }
            if (maximal) out.push_back(c);
        }
        return out;
    }

    std::span<const VertexSet> source_;
    std::unordered_map<VertexSet, std::vector<VertexSet>, VertexSetHash> memo_;
};

std::vector<std::vector<int>> vertex_stars(const SimplicialComplex& s) {
    std::vector<std::vector<int>> star(s.vertex_count());
    for (const auto& face : s.maximal_faces())
        for (int v : face) star[v].insert(star[v].end(), face.begin(), face.end());
    for (auto& st : star) {
        std::sort(st.begin(), st.end());
        st.erase(std::unique(st.begin(), st.end()), st.end());
    }
    return star;
}

void require_matching(const SimplicialComplex& s, const Involution& inv) {
    if (inv.size() != s.vertex_count())
        throw std::invalid_argument("involution size does not match the complex");
}

} // namespace

std::vector<Simplex> pulling_triangulation(std::span<const VertexSet> cells, int cell_dim,
                                           std::span<const VertexSet> face_source) {
    Puller puller(face_source);
    std::vector<Simplex> out;
    for (const auto& cell : cells)
        for (const auto& simplex : puller.pull(cell, cell_dim)) out.push_back(simplex.indices());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

EquivariantTriangulation pull_triangulate(const FaceLattice& lattice) {
    const auto disjoint = check_antipodal_disjoint(lattice);
    if (!disjoint.passed())
        throw std::invalid_argument("pulling needs faces free of opposite vertices: " +
                                    disjoint.violations.front().message);
    std::vector<VertexSet> facets;
    facets.reserve(lattice.facets.size());
    for (const auto& f : lattice.facets) facets.push_back(f.vertices);

    auto simplices = pulling_triangulation(facets, lattice.n - 1, facets);
    std::vector<std::string> labels;
    for (const auto& v : lattice.vertices)
        labels.push_back((v.sign > 0 ? "+" : "-") + v.set.to_string());
    spdlog::debug("pull: {} facets -> {} simplices", facets.size(), simplices.size());
    return {SimplicialComplex(lattice.vertex_count(), std::move(simplices), std::move(labels)),
            Involution(lattice.antipodes())};
}

ConditionReport check_equivariance(const SimplicialComplex& s, const Involution& inv) {
    require_matching(s, inv);
    ConditionReport r;
    r.name = "equivariance";
    const auto& faces = s.maximal_faces();
    for (const auto& face : faces) {
        ++r.checked;
        const Simplex image = inv.apply(face);
        if (image == face) {
            r.add({"equivariance", {}, face, "involution fixes a maximal face"});
        } else if (!std::binary_search(faces.begin(), faces.end(), image)) {
            r.add({"equivariance", {}, face, "image of a maximal face is not a maximal face"});
        }
    }
    return r;
}

ConditionReport check_star_disjointness(const SimplicialComplex& s, const Involution& inv) {
    require_matching(s, inv);
    ConditionReport r;
    r.name = "star_disjointness";
    const auto star = vertex_stars(s);
    for (int v = 0; v < s.vertex_count(); ++v) {
        const int w = inv(v);
        if (w < v) continue;
        ++r.checked;
        std::vector<int> common;
        std::set_intersection(star[v].begin(), star[v].end(), star[w].begin(), star[w].end(),
                              std::back_inserter(common));
        if (!common.empty())
            r.add({"star_disjointness", {}, {v, w, common.front()},
                   "closed stars of " + s.labels()[v] + " and " + s.labels()[w] +
                       " share vertex " + s.labels()[common.front()]});
    }
    return r;
}

SimplicialComplex quotient(const SimplicialComplex& s, const Involution& inv) {
    require_matching(s, inv);
    const auto eq = check_equivariance(s, inv);
    if (!eq.passed()) throw QuotientError("complex is not equivariant: " + eq.violations.front().message);
    const auto stars = check_star_disjointness(s, inv);
    if (!stars.passed())
        throw QuotientError("opposite closed stars meet: " + stars.violations.front().message);

    std::vector<int> id(s.vertex_count(), -1);
    std::vector<std::string> labels;
    for (int v = 0; v < s.vertex_count(); ++v) {
        if (v < inv(v)) {
            id[v] = static_cast<int>(labels.size());
            labels.push_back(s.labels()[v]);
        }
    }
    for (int v = 0; v < s.vertex_count(); ++v)
        if (id[v] < 0) id[v] = id[inv(v)];

    // Each quotient face must come from exactly one orbit {F, inv(F)}.
    std::map<Simplex, const Simplex*> origin;
    for (const auto& face : s.maximal_faces()) {
        Simplex q;
        for (int v : face) q.push_back(id[v]);
        std::sort(q.begin(), q.end());
        if (std::adjacent_find(q.begin(), q.end()) != q.end())
            throw QuotientError("a face contains two opposite vertices");
        auto [it, fresh] = origin.emplace(std::move(q), &face);
        if (!fresh && inv.apply(*it->second) != face)
            throw QuotientError("two faces outside one orbit collapse to the same quotient face");
    }
    std::vector<Simplex> faces;
    faces.reserve(origin.size());
    for (auto& [q, _] : origin) faces.push_back(q);
    const int count = static_cast<int>(labels.size());
    return SimplicialComplex(count, std::move(faces), std::move(labels));
}

} // namespace rpforge
