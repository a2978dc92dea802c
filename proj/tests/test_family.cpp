#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rpforge/family.hpp"

using namespace rpforge;

namespace {

Subset S(std::initializer_list<int> e) { return Subset::from_elements(std::vector<int>(e)); }

SubsetFamily fam(int n, std::initializer_list<std::initializer_list<int>> sets) {
    std::vector<Subset> m;
    for (auto s : sets) m.push_back(S(s));
    return SubsetFamily(n, m);
}

std::vector<std::uint64_t> masks(const SubsetFamily& v) {
    std::vector<std::uint64_t> out;
    for (Subset s : v.members()) out.push_back(s.bits());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("subset basics") {
    const Subset a = S({1, 3});
    CHECK(a.size() == 2);
    CHECK(a.contains(3));
    CHECK_FALSE(a.contains(2));
    CHECK(a.to_string() == "{1,3}");
    CHECK(a.with(2) == S({1, 2, 3}));
    CHECK(a.min_element() == 1);
    CHECK(a.max_element() == 3);
    CHECK(Subset::full(3) == S({1, 2, 3}));
    CHECK_THROWS_AS(Subset::from_elements({0}), std::invalid_argument);
    CHECK_THROWS_AS(Subset::from_elements({65}), std::invalid_argument);
}

TEST_CASE("canonical order is size then lexicographic") {
    CHECK(canonical_less(S({3}), S({1, 2})));
    CHECK(canonical_less(S({1, 3}), S({2, 3})));
    CHECK(canonical_less(S({1, 2}), S({1, 3})));
    CHECK_FALSE(canonical_less(S({1, 2}), S({1, 2})));
    const auto v = full_family(3);
    std::vector<std::string> names;
    for (Subset s : v.members()) names.push_back(s.to_string());
    CHECK(names == std::vector<std::string>{"{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"});
}

TEST_CASE("make_partition") {
    auto p = make_partition(3, 1);
    REQUIRE(p.k() == 1);
    CHECK(p.groups[0] == S({1, 2, 3}));
    p = make_partition(4, 2);
    CHECK(p.groups == std::vector<Subset>{S({1, 2}), S({3, 4})});
    p = make_partition(5, 2);
    CHECK(p.groups == std::vector<Subset>{S({1, 2, 3}), S({4, 5})});
    CHECK_THROWS_AS(make_partition(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_partition(3, 4), std::invalid_argument);
    CHECK(partition_sizes(10000, 100).front() == 100);
}

TEST_CASE("partition validation") {
    GroupPartition p{4, {S({1, 2}), S({2, 3, 4})}};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = GroupPartition{4, {S({1}), S({2, 3, 4})}};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = GroupPartition{4, {S({1, 2}), S({3})}};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("default_k") {
    CHECK(default_k(1) == 1);
    CHECK(default_k(4) == 2);
    CHECK(default_k(10) == 4);
    CHECK(default_k(9) == 3);
    CHECK(default_k(10000) == 100);
    CHECK(default_k(10001) == 101);
}

TEST_CASE("build_grouped_family examples") {
    auto v = build_grouped_family(make_partition(3, 1));
    CHECK(v.size() == 7);
    v = build_grouped_family(make_partition(4, 2));
    CHECK(v.size() == 14);
    CHECK_FALSE(v.contains(S({1, 2, 3, 4})));
    CHECK(v.contains(S({1, 2, 3})));
    v = build_grouped_family(make_partition(2, 2));
    CHECK(masks(v) == std::vector<std::uint64_t>{1, 2, 3});
}

TEST_CASE("grouped family matches brute-force filter") {
    for (int n = 1; n <= 12; ++n)
        for (int k = 1; k <= n; ++k) {
            CAPTURE(n);
            CAPTURE(k);
            const auto v = build_grouped_family(make_partition(n, k));
            CHECK(masks(v) == oracle::grouped_family(n, k));
            const auto sizes = partition_sizes(n, k);
            CHECK(grouped_family_count(sizes) == v.size());
        }
}

TEST_CASE("family construction rejects bad input") {
    CHECK_THROWS_AS(SubsetFamily(2, {S({1}), S({1})}), std::invalid_argument);
    CHECK_THROWS_AS(SubsetFamily(2, {S({3})}), std::invalid_argument);
    CHECK_THROWS_AS(SubsetFamily(2, {Subset()}), std::invalid_argument);
    CHECK_THROWS_AS(SubsetFamily(0, {}), std::invalid_argument);
}

TEST_CASE("large-n family uses hash membership") {
    const auto v = build_grouped_family(make_partition(30, 6));
    CHECK(v.size() == grouped_family_count(partition_sizes(30, 6)));
    CHECK(v.contains(S({1, 2, 3, 4, 5, 6})));
    CHECK_FALSE(v.contains(S({1, 2, 7, 8})));
}

TEST_CASE("maximal_group") {
    const auto p = make_partition(4, 2);
    CHECK(maximal_group(S({1, 2, 3}), p) == 0);
    CHECK(maximal_group(S({3}), p) == 1);
    CHECK(maximal_group(S({1, 3}), p) == 0);
    CHECK_THROWS_AS(maximal_group(Subset(), p), std::invalid_argument);
}

TEST_CASE("check_singletons") {
    CHECK(check_singletons(full_family(3)).passed());
    CHECK(check_singletons(fam(2, {{1}, {2}, {1, 2}})).passed());
    const auto r = check_singletons(fam(2, {{1}, {1, 2}}));
    REQUIRE_FALSE(r.passed());
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].elements == std::vector<int>{2});
}

TEST_CASE("check_downward_closed") {
    CHECK(check_downward_closed(full_family(3)).passed());
    CHECK(check_downward_closed(build_grouped_family(make_partition(4, 2))).passed());
    const auto r = check_downward_closed(fam(3, {{1}, {2}, {3}, {1, 2, 3}}));
    REQUIRE_FALSE(r.passed());
    bool found = false;
    for (const auto& v : r.violations)
        if (v.sets == std::vector<Subset>{S({1, 2, 3})} && v.elements == std::vector<int>{3}) found = true;
    CHECK(found);
}

TEST_CASE("check_exchange examples") {
    CHECK(check_exchange(full_family(3)).passed());
    const auto v = build_grouped_family(make_partition(4, 2));
    CHECK(check_exchange(v).passed());
    CHECK(exchange_holds(v, S({1, 2}), S({3, 4}), 1, 3, ExchangeCase::Both));

    const auto pairs = fam(3, {{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}});
    const auto w = find_exchange_witness(pairs, S({1}), S({2, 3}));
    REQUIRE(w);
    CHECK(w->i == 1);
    CHECK(w->j == 2);
    CHECK(w->which == ExchangeCase::B);
}

TEST_CASE("check_exchange reports a violation") {
    // {1,2} and {3} have no valid exchange when {1,3}, {2,3} and {1,2,3} are absent.
    const auto v = fam(3, {{1}, {2}, {3}, {1, 2}});
    const auto r = check_exchange(v);
    CHECK_FALSE(r.passed());
    CHECK_FALSE(oracle::exchange_all(masks(v)));
}

TEST_CASE("check_exchange result is independent of thread count") {
    const auto v = fam(4, {{1}, {2}, {3}, {4}, {1, 2}, {3, 4}});
    const auto one = check_exchange(v, 1);
    const auto many = check_exchange(v, 7);
    CHECK(one.violation_count == many.violation_count);
    CHECK(one.checked == many.checked);
    REQUIRE(one.violations.size() == many.violations.size());
    for (std::size_t t = 0; t < one.violations.size(); ++t) CHECK(one.violations[t].sets == many.violations[t].sets);
}

TEST_CASE("exchange_witness_grouped examples") {
    auto p = make_partition(4, 2);
    auto w = exchange_witness_grouped(S({1, 3}), S({2}), p);
    CHECK(w == ExchangeWitness{1, 2, ExchangeCase::A});
    w = exchange_witness_grouped(S({1, 2}), S({3, 4}), p);
    CHECK(w == ExchangeWitness{1, 3, ExchangeCase::Both});
    p = make_partition(2, 1);
    w = exchange_witness_grouped(S({1}), S({2}), p);
    CHECK(w == ExchangeWitness{1, 2, ExchangeCase::A});
    CHECK_THROWS_AS(exchange_witness_grouped(S({1, 2}), S({2}), make_partition(4, 2)), std::invalid_argument);
    CHECK_THROWS_AS(exchange_witness_grouped(S({1, 2, 4, 5}), S({3}), make_partition(5, 2)),
                    std::invalid_argument);
}

TEST_CASE("size_bound") {
    CHECK(size_bound(2, 2) == 24);
    CHECK(size_bound(1, 3) == 8);
    CHECK(size_bound(3, 3) == 384);
    CHECK_THROWS_AS(size_bound(0, 1), std::invalid_argument);
}

TEST_CASE("closed-form count") {
    CHECK(grouped_family_count(std::vector<int>{3}) == 7);
    CHECK(grouped_family_count(std::vector<int>{2, 2}) == 14);
    CHECK(grouped_family_count(std::vector<int>{1, 1}) == 3);
    for (int n = 13; n <= 20; ++n) {
        const int k = default_k(n);
        CHECK(grouped_family_count(partition_sizes(n, k)) == oracle::grouped_family(n, k).size());
    }
}

TEST_CASE("without removes one member") {
    const auto v = full_family(3).without(S({2}));
    CHECK(v.size() == 6);
    CHECK_FALSE(v.contains(S({2})));
    CHECK_FALSE(check_singletons(v).passed());
}
