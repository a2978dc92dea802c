#include <algorithm>
#include <string>

#include <spdlog/spdlog.h>

#include "rpforge/geometry.hpp"

namespace rpforge {

namespace {

// A facet of the partial hull: the hyperplane {y : <a, y> = 1} and the
// processed vertices lying on it. The origin is interior throughout, so
// every facet has offset 1 in this normalization.
struct WorkFacet {
    std::vector<Real> a;
    VertexSet on;
};

class Hull {
public:
    Hull(const SubsetFamily& family, const HullOptions& options)
        : n_(family.n()), eps_(options.eps), vertices_(lattice_vertices(family)) {
        scale_.reserve(vertices_.size());
        for (const auto& v : vertices_)
            scale_.push_back(Real(v.sign) / boost::multiprecision::sqrt(Real(v.set.size())));
    }

    std::vector<WorkFacet> run() {
        std::vector<int> plus(n_ + 1, -1), minus(n_ + 1, -1);
        for (int v = 0; v < static_cast<int>(vertices_.size()); ++v) {
            if (vertices_[v].set.size() != 1) continue;
            const int i = vertices_[v].set.min_element();
            (vertices_[v].sign > 0 ? plus : minus)[i] = v;
        }

        // Start from the cross-polytope on +-e_i: one facet per sign vector.
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n_); ++mask) {
            WorkFacet f;
            f.a.assign(n_, Real(1));
            for (int i = 1; i <= n_; ++i) {
                const bool neg = (mask >> (i - 1)) & 1u;
                if (neg) f.a[i - 1] = Real(-1);
                f.on.insert(neg ? minus[i] : plus[i]);
            }
            facets_.push_back(std::move(f));
        }

        // Remaining vertices: positive ones first, each group in canonical order.
        std::vector<int> order;
        for (int sign : {+1, -1})
            for (int v = 0; v < static_cast<int>(vertices_.size()); ++v)
                if (vertices_[v].sign == sign && vertices_[v].set.size() > 1) order.push_back(v);
        for (int v : order) insert(v);
        return std::move(facets_);
    }

    const std::vector<SignedVertex>& vertices() const { return vertices_; }

private:
    // <a, p> - 1 for vertex p, using that p is constant on its support.
    Real slack(const WorkFacet& f, int p) const {
        Real sum = 0;
        vertices_[p].set.for_each([&](int i) { sum += f.a[i - 1]; });
        return sum * scale_[p] - 1;
    }

    void insert(int p) {
        const std::size_t m = facets_.size();
        std::vector<Real> s(m);
        std::vector<std::size_t> above, below, on;
        for (std::size_t f = 0; f < m; ++f) {
            s[f] = slack(facets_[f], p);
            if (s[f] > eps_) above.push_back(f);
            else if (s[f] < -eps_) below.push_back(f);
            else on.push_back(f);
        }
        if (above.empty())
            throw CertificationError("vertex " + std::to_string(p) +
                                         " is not outside the partial hull",
                                     {p});

        std::vector<WorkFacet> created;
        for (std::size_t fa : above) {
            for (std::size_t fb : below) {
                const VertexSet ridge = facets_[fa].on & facets_[fb].on;
                if (ridge.count() < n_ - 1) continue;
                bool adjacent = true;
                for (std::size_t h = 0; h < m && adjacent; ++h)
                    if (h != fa && h != fb && ridge.subset_of(facets_[h].on)) adjacent = false;
                if (!adjacent) continue;
                // Rotate about the ridge until the hyperplane passes through p.
                const Real wa = -s[fb], wb = s[fa];
                const Real total = wa + wb;
                WorkFacet f;
                f.a.resize(n_);
                for (int i = 0; i < n_; ++i)
                    f.a[i] = (wa * facets_[fa].a[i] + wb * facets_[fb].a[i]) / total;
                f.on = ridge;
                f.on.insert(p);
                created.push_back(std::move(f));
            }
        }

        std::vector<WorkFacet> next;
        next.reserve(below.size() + on.size() + created.size());
        for (std::size_t f = 0; f < m; ++f) {
            if (s[f] > eps_) continue;
            next.push_back(std::move(facets_[f]));
            if (!(s[f] < -eps_)) next.back().on.insert(p);
        }
        for (auto& f : created) next.push_back(std::move(f));
        facets_ = std::move(next);
        spdlog::trace("hull: inserted vertex {} -> {} facets", p, facets_.size());
    }

    int n_;
    Real eps_;
    std::vector<SignedVertex> vertices_;
    std::vector<Real> scale_;
    std::vector<WorkFacet> facets_;
};

// Solves <a, v> = 1 over the facet's vertices and measures how well the
// hyperplane separates them from the rest.
Facet certify(const VertexSet& on, const std::vector<std::vector<Real>>& points, int n,
              const Real& eps) {
    const auto idx = on.indices();
    std::vector<std::vector<Real>> rows;
    rows.reserve(idx.size());
    for (int v : idx) {
        auto r = points[v];
        r.push_back(Real(1));
        rows.push_back(std::move(r));
    }

    std::vector<int> pivot_row(n, -1);
    std::vector<bool> used(rows.size(), false);
    for (int col = 0; col < n; ++col) {
        int best = -1;
        Real best_abs = 0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (used[r]) continue;
            Real t = boost::multiprecision::abs(rows[r][col]);
            if (t > best_abs) {
                best_abs = t;
                best = static_cast<int>(r);
            }
        }
        if (best < 0 || best_abs <= eps)
            throw CertificationError("facet vertices do not span a hyperplane", idx);
        used[best] = true;
        pivot_row[col] = best;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(r) == best || rows[r][col] == 0) continue;
            const Real factor = rows[r][col] / rows[best][col];
            for (int c = col; c <= n; ++c) rows[r][c] -= factor * rows[best][c];
        }
    }
    std::vector<Real> a(n);
    for (int col = 0; col < n; ++col) a[col] = rows[pivot_row[col]][n] / rows[pivot_row[col]][col];

    Real norm2 = 0;
    for (const auto& t : a) norm2 += t * t;
    const Real norm = boost::multiprecision::sqrt(norm2);

    Facet f;
    f.vertices = on;
    f.normal.resize(n);
    for (int i = 0; i < n; ++i) f.normal[i] = a[i] / norm;
    f.offset = 1 / norm;
    f.residual = 0;
    bool have_margin = false;
    for (std::size_t v = 0; v < points.size(); ++v) {
        Real dot = 0;
        for (int i = 0; i < n; ++i) dot += f.normal[i] * points[v][i];
        const Real gap = f.offset - dot;
        if (on.contains(static_cast<int>(v))) {
            f.residual = std::max(f.residual, Real(boost::multiprecision::abs(gap)));
        } else if (!have_margin || gap < f.margin) {
            f.margin = gap;
            have_margin = true;
        }
    }
    if (!have_margin) f.margin = f.offset;
    if (f.residual > eps)
        throw CertificationError("facet vertices are off the hyperplane by " +
                                     f.residual.str(6, std::ios_base::scientific),
                                 idx);
    if (f.margin <= eps)
        throw CertificationError("facet separation margin " +
                                     f.margin.str(6, std::ios_base::scientific) +
                                     " is below tolerance",
                                 idx);
    return f;
}

} // namespace

FaceLattice convex_hull(const SubsetFamily& family, const HullOptions& options) {
    if (options.precision_bits < 64) throw std::invalid_argument("hull precision must be >= 64 bits");
    if (!(options.eps > 0)) throw std::invalid_argument("hull tolerance must be positive");
    if (!check_singletons(family).passed())
        throw std::invalid_argument("hull needs every singleton in the family");
    if (2 * family.size() > static_cast<std::size_t>(VertexSet::kCapacity))
        throw std::invalid_argument("hull supports at most " +
                                    std::to_string(VertexSet::kCapacity) + " vertices");

    PrecisionScope scope(options.precision_bits);
    Hull hull(family, options);
    auto work = hull.run();

    FaceLattice lattice;
    lattice.n = family.n();
    lattice.vertices = hull.vertices();
    lattice.precision_bits = options.precision_bits;
    lattice.eps = options.eps;

    std::vector<std::vector<Real>> points;
    points.reserve(lattice.vertices.size());
    for (const auto& v : lattice.vertices) points.push_back(embed(v, lattice.n));

    // Facets sharing a hyperplane carry the same vertex set once certified,
    // so merging coplanar cells reduces to deduplicating vertex sets.
    std::sort(work.begin(), work.end(),
              [](const WorkFacet& x, const WorkFacet& y) { return x.on.lex_less(y.on); });
    work.erase(std::unique(work.begin(), work.end(),
                           [](const WorkFacet& x, const WorkFacet& y) { return x.on == y.on; }),
               work.end());

    const Real eps(options.eps);
    for (const auto& w : work) lattice.facets.push_back(certify(w.on, points, lattice.n, eps));

    for (std::size_t f = 0; f < lattice.facets.size(); ++f)
        for (std::size_t g = 0; g < lattice.facets.size(); ++g)
            if (f != g && lattice.facets[f].vertices.subset_of(lattice.facets[g].vertices))
                throw CertificationError("facet is contained in another facet",
                                         lattice.facets[f].vertices.indices());

    VertexSet covered;
    for (const auto& f : lattice.facets) covered |= f.vertices;
    for (int v = 0; v < lattice.vertex_count(); ++v)
        if (!covered.contains(v)) throw CertificationError("vertex lies on no facet", {v});
    const auto symmetry = check_central_symmetry(lattice);
    if (!symmetry.passed())
        throw CertificationError("facet list is not centrally symmetric",
                                 symmetry.violations.front().elements);

    spdlog::debug("hull: n={} vertices={} facets={} min margin={}", lattice.n,
                  lattice.vertex_count(), lattice.facets.size(),
                  lattice.min_margin().str(6, std::ios_base::scientific));
    return lattice;
}

} // namespace rpforge
