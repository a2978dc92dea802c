#include "rpforge/homology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include <spdlog/spdlog.h>

namespace rpforge {

namespace {

struct DisjointSets {
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
    std::vector<int> parent;
};

} // namespace

ChainComplexData boundary_matrices(const SimplicialComplex& k) {
    ChainComplexData c;
    const int dim = k.dimension();
    for (int d = 0; d <= dim; ++d) c.faces.push_back(k.faces(d));
    for (int d = 0; d <= dim; ++d) {
        SparseIntMatrix m;
        m.cols = static_cast<int>(c.faces[d].size());
        m.rows = d == 0 ? 0 : static_cast<int>(c.faces[d - 1].size());
        m.columns.resize(m.cols);
        if (d > 0) {
            const auto& lower = c.faces[d - 1];
            for (int col = 0; col < m.cols; ++col) {
                const Simplex& s = c.faces[d][col];
                for (std::size_t p = 0; p < s.size(); ++p) {
                    Simplex facet;
                    facet.reserve(s.size() - 1);
                    for (std::size_t q = 0; q < s.size(); ++q)
                        if (q != p) facet.push_back(s[q]);
                    const auto it = std::lower_bound(lower.begin(), lower.end(), facet);
                    m.columns[col].emplace_back(static_cast<int>(it - lower.begin()),
                                                p % 2 == 0 ? 1 : -1);
                }
                std::sort(m.columns[col].begin(), m.columns[col].end());
            }
        }
        c.boundary.push_back(std::move(m));
    }
    if (!boundary_squares_to_zero(c)) throw std::logic_error("boundary of a boundary is nonzero");
    return c;
}

bool boundary_squares_to_zero(const ChainComplexData& c) {
    for (std::size_t d = 2; d < c.boundary.size(); ++d) {
        const auto& outer = c.boundary[d - 1];
        for (const auto& column : c.boundary[d].columns) {
            std::map<int, long long> acc;
            for (const auto& [mid, v] : column)
                for (const auto& [low, w] : outer.columns[mid]) acc[low] += v * w;
            for (const auto& [_, v] : acc)
                if (v != 0) return false;
        }
    }
    return true;
}

const char* to_string(Coefficients c) { return c == Coefficients::Z ? "Z" : "Z2"; }

HomologyResult homology(const SimplicialComplex& k, Coefficients coefficients) {
    const ChainComplexData chain = boundary_matrices(k);
    const int dim = chain.dimension();
    HomologyResult out;
    out.coefficients = coefficients;
    if (dim < 0) return out;

    // rank[d] = rank of boundary[d], with rank[0] = rank[dim+1] = 0.
    std::vector<long long> rank(dim + 2, 0);
    std::vector<std::vector<BigInt>> torsion(dim + 2);
    for (int d = 1; d <= dim; ++d) {
        if (coefficients == Coefficients::Z) {
            const SmithResult snf = smith_normal_form(chain.boundary[d]);
            rank[d] = static_cast<long long>(snf.rank());
            for (const auto& f : snf.invariants)
                if (f > 1) torsion[d - 1].push_back(f);
        } else {
            rank[d] = static_cast<long long>(rank_mod_prime(chain.boundary[d], 2));
        }
    }
    long long alternating = 0;
    for (int d = 0; d <= dim; ++d) {
        const long long f = static_cast<long long>(chain.faces[d].size());
        HomologyGroup g{d, f - rank[d] - rank[d + 1], torsion[d]};
        alternating += (d % 2 == 0 ? 1 : -1) * g.rank;
        out.euler += (d % 2 == 0 ? 1 : -1) * f;
        out.dims.push_back(std::move(g));
    }
    if (alternating != out.euler)
        throw std::logic_error("Euler-Poincare identity fails: chi=" + std::to_string(out.euler) +
                               " but alternating Betti sum=" + std::to_string(alternating));
    spdlog::debug("homology over {}: dim {} euler {}", to_string(coefficients), dim, out.euler);
    return out;
}

HomologyResult expected_rp_homology(int m, Coefficients coefficients) {
    if (m < 0) throw std::invalid_argument("projective space dimension must be >= 0");
    HomologyResult out;
    out.coefficients = coefficients;
    for (int d = 0; d <= m; ++d) {
        HomologyGroup g{d, 0, {}};
        if (coefficients == Coefficients::Z2 || d == 0) {
            g.rank = 1;
        } else if (d < m) {
            if (d % 2 == 1) g.torsion.push_back(2);
        } else {
            g.rank = m % 2 == 1 ? 1 : 0;
        }
        out.dims.push_back(std::move(g));
    }
    out.euler = m % 2 == 0 ? 1 : 0;
    return out;
}

ConditionReport check_pseudomanifold(const SimplicialComplex& k) {
    if (!k.is_pure()) throw std::invalid_argument("pseudomanifold check needs a pure complex");
    ConditionReport r;
    r.name = "pseudomanifold";
    const auto& faces = k.maximal_faces();
    if (faces.empty()) return r;
    if (k.dimension() == 0) {
        // A connected closed 0-manifold is a single point.
        ++r.checked;
        if (faces.size() != 1)
            r.add({"pseudomanifold", {}, {}, "0-dimensional complex is not a single point"});
        return r;
    }

    std::map<Simplex, std::vector<int>> ridges;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f)
        for (std::size_t p = 0; p < faces[f].size(); ++p) {
            Simplex ridge = faces[f];
            ridge.erase(ridge.begin() + static_cast<std::ptrdiff_t>(p));
            ridges[ridge].push_back(f);
        }
    DisjointSets components(static_cast<int>(faces.size()));
    for (const auto& [ridge, owners] : ridges) {
        ++r.checked;
        if (owners.size() != 2)
            r.add({"pseudomanifold", {}, ridge,
                   "codimension-1 face lies in " + std::to_string(owners.size()) +
                       " maximal faces"});
        for (std::size_t t = 1; t < owners.size(); ++t) components.unite(owners[0], owners[t]);
    }
    const int root = components.find(0);
    for (int f = 1; f < static_cast<int>(faces.size()); ++f)
        if (components.find(f) != root) {
            r.add({"pseudomanifold", {}, faces[f], "facet graph is disconnected"});
            break;
        }
    return r;
}

ConditionReport check_vertex_links(const SimplicialComplex& k) {
    const int dim = k.dimension();
    if (dim > 2) throw std::invalid_argument("vertex link check supports dimension <= 2");
    if (!k.is_pure()) throw std::invalid_argument("vertex link check needs a pure complex");
    ConditionReport r;
    r.name = "vertex_links";
    if (dim <= 0) return r;

    std::vector<std::vector<Simplex>> link(k.vertex_count());
    for (const auto& face : k.maximal_faces())
        for (std::size_t p = 0; p < face.size(); ++p) {
            Simplex rest = face;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
            link[face[p]].push_back(std::move(rest));
        }

    for (int v = 0; v < k.vertex_count(); ++v) {
        ++r.checked;
        const auto& lk = link[v];
        if (dim == 1) {
            if (lk.size() != 2)
                r.add({"vertex_links", {}, {v},
                       "vertex " + k.labels()[v] + " has degree " + std::to_string(lk.size())});
            continue;
        }
        // Link of a vertex in a surface: a single cycle.
        std::map<int, int> degree;
        std::map<int, int> local;
        for (const auto& e : lk)
            for (int u : e) {
                ++degree[u];
                local.emplace(u, static_cast<int>(local.size()));
            }
        bool cycle = !lk.empty() && std::all_of(degree.begin(), degree.end(),
                                                [](const auto& d) { return d.second == 2; });
        if (cycle) {
            DisjointSets ds(static_cast<int>(local.size()));
            for (const auto& e : lk) ds.unite(local[e[0]], local[e[1]]);
            const int root = ds.find(0);
            for (int t = 1; t < static_cast<int>(local.size()); ++t)
                if (ds.find(t) != root) cycle = false;
        }
        if (!cycle)
            r.add({"vertex_links", {}, {v}, "link of vertex " + k.labels()[v] + " is not a circle"});
    }
    return r;
}

} // namespace rpforge
