#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <thread>

#include "oracles.hpp"
#include "rpforge/geometry.hpp"
#include "rpforge/pipeline.hpp"
#include "trials.hpp"

using namespace rpforge;

namespace {

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

std::vector<std::uint64_t> masks(const SubsetFamily& v) {
    std::vector<std::uint64_t> out;
    for (Subset s : v.members()) out.push_back(s.bits());
    return out;
}

// Random family on n elements containing every singleton.
SubsetFamily random_family(std::mt19937_64& rng, int n) {
    std::vector<Subset> members;
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
        const Subset s(bits);
        if (s.size() == 1 || rng() % 3 == 0) members.push_back(s);
    }
    return SubsetFamily(n, members);
}

} // namespace

TEST_CASE("exact scalar ordering agrees with 256-bit evaluation") {
    PrecisionScope scope(256);
    std::mt19937_64 rng(2024);
    auto draw = [&] {
        const long num = static_cast<long>(rng() % 2001) - 1000;
        const long den = 1 + static_cast<long>(rng() % 97);
        return ExactScalar(Rational(num, den), 1 + rng() % 200);
    };
    auto value = [](const ExactScalar& e) {
        return Real(e.numerator()) / sqrt(Real(e.radicand()));
    };
    const Real tiny = pow(Real(2), -200);
    int ties = 0;
    for (int trial = 0; trial < 100000; ++trial) {
        const ExactScalar a = draw(), b = draw();
        const Real diff = value(a) - value(b);
        const auto order = a <=> b;
        if (order == 0) {
            ++ties;
            REQUIRE(abs(diff) < tiny);
        } else if (order < 0) {
            REQUIRE(diff < -tiny);
        } else {
            REQUIRE(diff > tiny);
        }
        REQUIRE((b <=> a) == (0 <=> order));
    }
    CHECK(ties > 0);
}

TEST_CASE("grouped families satisfy all three conditions for n <= 16") {
    for (int n = 1; n <= 16; ++n)
        for (int k = 1; k <= n; ++k) {
            CAPTURE(n);
            CAPTURE(k);
            const auto v = build_grouped_family(make_partition(n, k));
            REQUIRE(check_singletons(v).passed());
            REQUIRE(check_downward_closed(v).passed());
            REQUIRE(check_exchange(v, workers()).passed());
            REQUIRE(BigInt(v.size()) < size_bound(k, (n + k - 1) / k));
            if (k == 1) REQUIRE(v.size() == (std::size_t{1} << n) - 1);
        }
}

TEST_CASE("exchange checker agrees with the brute-force oracle") {
    std::mt19937_64 rng(11);
    int failing = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const auto v = random_family(rng, n);
        const bool passed = check_exchange(v).passed();
        CHECK(passed == oracle::exchange_all(masks(v)));
        failing += passed ? 0 : 1;
    }
    CHECK(failing > 0);
}

TEST_CASE("exchange is symmetric in the pair") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const auto v = random_family(rng, 2 + static_cast<int>(rng() % 5));
        for (Subset a : v.members())
            for (Subset b : v.members()) {
                if (!a.disjoint(b)) continue;
                const auto ab = find_exchange_witness(v, a, b);
                const auto ba = find_exchange_witness(v, b, a);
                REQUIRE(ab.has_value() == ba.has_value());
                if (ab) {
                    const ExchangeCase swapped = ab->which == ExchangeCase::A   ? ExchangeCase::B
                                                 : ab->which == ExchangeCase::B ? ExchangeCase::A
                                                                                : ExchangeCase::Both;
                    REQUIRE(exchange_holds(v, b, a, ab->j, ab->i, swapped));
                }
            }
    }
}

TEST_CASE("grouped exchange witnesses validate") {
    for (int n = 2; n <= 9; ++n)
        for (int k = 1; k <= n; ++k) {
            const auto p = make_partition(n, k);
            const auto v = build_grouped_family(p);
            for (Subset a : v.members())
                for (Subset b : v.members()) {
                    if (!a.disjoint(b)) continue;
                    const auto w = exchange_witness_grouped(a, b, p);
                    REQUIRE(a.contains(w.i));
                    REQUIRE(b.contains(w.j));
                    REQUIRE(exchange_holds(v, a, b, w.i, w.j, w.which));
                }
        }
}

TEST_CASE("support witnesses on random instances") {
    std::mt19937_64 rng(99);
    int done = 0, zero_cases = 0;
    while (done < 3000) {
        const auto t = trials::draw(rng, 10);
        if (!t) continue;
        ++done;
        const auto target = inner_rational(t->x, {t->a, 1});
        REQUIRE(target == inner_rational(t->x, {t->b, 1}));
        if (target.sign() == 0) ++zero_cases;
        const auto w = smaller_support_witness(t->a, t->b, t->x, t->family);
        REQUIRE(w.route != SupportRoute::Fallback);
        REQUIRE(t->family.contains(w.c));
        REQUIRE(w.value > target);
        std::vector<oracle::BigRational> x;
        for (const auto& c : t->x)
            x.emplace_back(oracle::BigInt(numerator(c).str()), oracle::BigInt(denominator(c).str()));
        REQUIRE(oracle::exceeds(w.c.bits(), t->a.bits(), x));
        REQUIRE(oracle::witness_exists(masks(t->family), t->a.bits(), x));
    }
    CHECK(zero_cases > 0);
}

TEST_CASE("hull for n=5 grouped matches brute-force facets") {
    const auto l = convex_hull(build_grouped_family(make_partition(5, 3)));
    std::vector<std::vector<double>> pts;
    for (const auto& v : l.vertices) pts.push_back(oracle::point(v.set.bits(), v.sign, l.n));
    std::set<std::vector<int>> got;
    for (const auto& f : l.facets) got.insert(f.vertices.indices());
    CHECK(got == oracle::facets(pts, l.n));
}

TEST_CASE("bound table sanity for every k policy") {
    for (const char* policy : {"sqrt", "single", "2", "5"}) {
        CAPTURE(policy);
        CHECK_NOTHROW(bound_table(40, KPolicy::parse(policy)));
    }
}
