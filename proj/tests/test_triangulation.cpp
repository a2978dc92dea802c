#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "rpforge/geometry.hpp"
#include "rpforge/triangulation.hpp"

using namespace rpforge;

namespace {

Subset S(std::initializer_list<int> e) { return Subset::from_elements(std::vector<int>(e)); }

EquivariantTriangulation pulled(int n, int k) {
    return pull_triangulate(convex_hull(build_grouped_family(make_partition(n, k))));
}

SimplicialComplex octahedron() {
    std::vector<Simplex> faces;
    for (int a : {0, 1})
        for (int b : {2, 3})
            for (int c : {4, 5}) faces.push_back({a, b, c});
    return SimplicialComplex(6, faces);
}

} // namespace

TEST_CASE("simplicial complex validation") {
    CHECK_THROWS_AS(SimplicialComplex(3, {{0, 0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(SimplicialComplex(3, {{0, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(SimplicialComplex(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(SimplicialComplex(3, {{0, 1}, {0, 1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(SimplicialComplex(3, {{}}), std::invalid_argument);
    CHECK_THROWS_AS(SimplicialComplex(2, {{0, 1}}, {"a"}), std::invalid_argument);
    const SimplicialComplex k(4, {{2, 1, 0}, {3}});
    CHECK_FALSE(k.is_pure());
    CHECK(k.dimension() == 2);
    CHECK(k.maximal_faces().front() == Simplex{0, 1, 2});
    CHECK(k.f_vector() == std::vector<long long>{4, 3, 1});
    CHECK(k.euler_characteristic() == 2);
    CHECK(k.labels()[3] == "3");
}

TEST_CASE("involution validation") {
    CHECK_THROWS_AS(Involution({1, 0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Involution({1, 2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Involution({3, 0}), std::invalid_argument);
    const Involution inv({1, 0, 3, 2});
    CHECK(inv(2) == 3);
    CHECK(inv.apply({0, 2}) == Simplex{1, 3});
}

TEST_CASE("pulling a square cones from its first vertex") {
    // Square a=0, b=1, c=2, d=3 in cyclic order.
    const std::vector<VertexSet> cell{VertexSet::of({0, 1, 2, 3})};
    const std::vector<VertexSet> edges{VertexSet::of({0, 1}), VertexSet::of({1, 2}), VertexSet::of({2, 3}),
                                       VertexSet::of({0, 3})};
    const auto tri = pulling_triangulation(cell, 2, edges);
    CHECK(tri == std::vector<Simplex>{{0, 1, 2}, {0, 2, 3}});
}

TEST_CASE("pulling keeps simplicial facets") {
    const auto t = pulled(2, 2);
    CHECK(t.complex.vertex_count() == 6);
    CHECK(t.complex.f_vector() == std::vector<long long>{6, 6});
    CHECK(check_equivariance(t.complex, t.involution).passed());
    CHECK(check_star_disjointness(t.complex, t.involution).passed());
    CHECK(t.complex.labels()[0] == "+{1}");
    CHECK(t.complex.labels()[1] == "-{1}");
}

TEST_CASE("pulled 2-sphere for n=3 matches a face count of the lattice") {
    const auto lattice = convex_hull(full_family(3));
    const auto t = pull_triangulate(lattice);
    long long triangles = 0;
    for (const auto& f : lattice.facets) triangles += f.vertices.count() - 2;
    const auto f = t.complex.f_vector();
    REQUIRE(f.size() == 3);
    CHECK(f[0] == 14);
    CHECK(f[2] == triangles);
    CHECK(2 * f[1] == 3 * f[2]);
    CHECK(t.complex.euler_characteristic() == 2);
    // Every simplex lies in a facet of the polytope.
    for (const auto& s : t.complex.maximal_faces()) {
        const VertexSet vs = VertexSet::of(s);
        bool inside = false;
        for (const auto& facet : lattice.facets) inside = inside || vs.subset_of(facet.vertices);
        CHECK(inside);
    }
    CHECK(check_equivariance(t.complex, t.involution).passed());
}

TEST_CASE("pulled spheres have the right shape") {
    for (int n = 2; n <= 5; ++n)
        for (int k : {1, default_k(n)}) {
            CAPTURE(n);
            CAPTURE(k);
            const auto t = pulled(n, k);
            CHECK(t.complex.is_pure());
            CHECK(t.complex.dimension() == n - 1);
            CHECK(t.complex.euler_characteristic() == (n % 2 == 1 ? 2 : 0));
            std::vector<char> used(t.complex.vertex_count(), 0);
            for (const auto& s : t.complex.maximal_faces())
                for (int v : s) used[v] = 1;
            CHECK(std::count(used.begin(), used.end(), 1) == t.complex.vertex_count());
        }
}

TEST_CASE("pull_triangulate refuses a lattice with opposite vertices on a face") {
    FaceLattice l;
    l.n = 2;
    l.vertices = {{S({1}), 1}, {S({1}), -1}, {S({2}), 1}, {S({2}), -1}};
    for (auto f : {std::vector<int>{0, 2}, {1, 2}, {1, 3}, {0, 3}}) {
        Facet facet;
        facet.vertices = VertexSet::of(f);
        l.facets.push_back(facet);
    }
    CHECK_THROWS_AS(pull_triangulate(l), std::invalid_argument);
}

TEST_CASE("equivariance check") {
    const SimplicialComplex hexagon(6, {{0, 2}, {2, 4}, {4, 1}, {1, 3}, {3, 5}, {5, 0}});
    CHECK(check_equivariance(hexagon, Involution({1, 0, 3, 2, 5, 4})).passed());
    const SimplicialComplex path(4, {{0, 2}, {2, 1}});
    CHECK_FALSE(check_equivariance(path, Involution({1, 0, 3, 2})).passed());
    // A face mapped to itself.
    const SimplicialComplex edge(2, {{0, 1}});
    CHECK_FALSE(check_equivariance(edge, Involution({1, 0})).passed());
    CHECK_THROWS_AS(check_equivariance(edge, Involution({1, 0, 3, 2})), std::invalid_argument);
}

TEST_CASE("star disjointness") {
    const SimplicialComplex hexagon(6, {{0, 2}, {2, 4}, {4, 1}, {1, 3}, {3, 5}, {5, 0}});
    CHECK(check_star_disjointness(hexagon, Involution({1, 0, 3, 2, 5, 4})).passed());
    // 4-cycle a, b, -a, -b.
    const SimplicialComplex square(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const Involution inv({2, 3, 0, 1});
    CHECK(check_equivariance(square, inv).passed());
    CHECK_FALSE(check_star_disjointness(square, inv).passed());

    const auto t = pulled(4, 2);
    CHECK(check_star_disjointness(t.complex, t.involution).passed());
}

TEST_CASE("quotient of the hexagon is a triangle") {
    const auto t = pulled(2, 2);
    const auto q = quotient(t.complex, t.involution);
    CHECK(q.vertex_count() == 3);
    CHECK(q.f_vector() == std::vector<long long>{3, 3});
    CHECK(q.labels() == std::vector<std::string>{"+{1}", "+{2}", "+{1,2}"});
}

TEST_CASE("quotient of the octahedron fails") {
    const auto oct = octahedron();
    const Involution inv({1, 0, 3, 2, 5, 4});
    CHECK(check_equivariance(oct, inv).passed());
    CHECK_FALSE(check_star_disjointness(oct, inv).passed());
    CHECK_THROWS_AS(quotient(oct, inv), QuotientError);
}

TEST_CASE("quotient halves the f-vector and lifts twice") {
    for (int n = 2; n <= 5; ++n) {
        CAPTURE(n);
        const auto t = pulled(n, default_k(n));
        const auto q = quotient(t.complex, t.involution);
        const auto fs = t.complex.f_vector(), fq = q.f_vector();
        REQUIRE(fs.size() == fq.size());
        for (std::size_t d = 0; d < fs.size(); ++d) CHECK(fs[d] == 2 * fq[d]);
        CHECK(2 * q.vertex_count() == t.complex.vertex_count());

        // Rebuild the orbit map independently: quotient vertex t is the t-th
        // vertex v with v < inv(v).
        std::vector<int> id(t.complex.vertex_count(), -1);
        int next = 0;
        for (int v = 0; v < t.complex.vertex_count(); ++v)
            if (v < t.involution(v)) id[v] = next++;
        for (int v = 0; v < t.complex.vertex_count(); ++v)
            if (id[v] < 0) id[v] = id[t.involution(v)];
        std::map<Simplex, int> lifts;
        for (const auto& s : t.complex.maximal_faces()) {
            Simplex image;
            for (int v : s) image.push_back(id[v]);
            std::sort(image.begin(), image.end());
            ++lifts[image];
        }
        CHECK(lifts.size() == q.maximal_faces().size());
        for (const auto& face : q.maximal_faces()) CHECK(lifts[face] == 2);
    }
}

TEST_CASE("quotient of the pulled n=3 sphere is RP2 by Euler characteristic") {
    const auto t = pulled(3, 1);
    const auto q = quotient(t.complex, t.involution);
    CHECK(q.vertex_count() == 7);
    CHECK(q.euler_characteristic() == 1);
}
