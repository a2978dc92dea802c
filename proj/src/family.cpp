#include "rpforge/family.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace rpforge {

namespace {

constexpr int kDenseLookupLimit = 22;

std::string pair_text(Subset a, Subset b) {
    return "(" + a.to_string() + ", " + b.to_string() + ")";
}

} // namespace

int GroupPartition::max_group_size() const {
    int s = 0;
    for (Subset g : groups) s = std::max(s, g.size());
    return s;
}

int GroupPartition::group_of(int i) const {
    for (int g = 0; g < k(); ++g)
        if (groups[g].contains(i)) return g;
    throw std::invalid_argument("element " + std::to_string(i) + " is in no group");
}

void GroupPartition::validate() const {
    if (n < 1 || n > kMaxGroundSize)
        throw std::invalid_argument("partition ground size out of range: " + std::to_string(n));
    if (groups.empty()) throw std::invalid_argument("partition has no groups");
    Subset seen;
    int lo = n, hi = 0;
    for (Subset g : groups) {
        if (g.empty()) throw std::invalid_argument("partition has an empty group");
        if (!seen.disjoint(g)) throw std::invalid_argument("partition groups overlap");
        seen = seen | g;
        lo = std::min(lo, g.size());
        hi = std::max(hi, g.size());
    }
    if (seen != Subset::full(n))
        throw std::invalid_argument("partition groups do not cover {1,...,n}");
    if (hi - lo > 1) throw std::invalid_argument("partition group sizes differ by more than one");
}

SubsetFamily::SubsetFamily(int n, std::vector<Subset> members,
                           std::optional<GroupPartition> partition)
    : n_(n), members_(std::move(members)), partition_(std::move(partition)) {
    if (n < 1 || n > kMaxGroundSize)
        throw std::invalid_argument("family ground size out of range: " + std::to_string(n));
    if (partition_) {
        partition_->validate();
        if (partition_->n != n) throw std::invalid_argument("partition size does not match family");
    }
    const Subset ground = Subset::full(n);
    for (Subset s : members_) {
        if (s.empty()) throw std::invalid_argument("family member is empty");
        if (!s.subset_of(ground))
            throw std::invalid_argument("family member " + s.to_string() + " exceeds {1,...,n}");
    }
    std::sort(members_.begin(), members_.end(), CanonicalLess{});
    auto dup = std::adjacent_find(members_.begin(), members_.end());
    if (dup != members_.end())
        throw std::invalid_argument("duplicate family member " + dup->to_string());

    if (n <= kDenseLookupLimit) {
        dense_.assign(std::size_t{1} << n, 0);
        for (Subset s : members_) dense_[s.bits()] = 1;
    } else {
        sparse_.reserve(members_.size());
        sparse_.insert(members_.begin(), members_.end());
    }
}

SubsetFamily SubsetFamily::without(Subset s) const {
    std::vector<Subset> kept;
    kept.reserve(members_.size());
    for (Subset m : members_)
        if (m != s) kept.push_back(m);
    return SubsetFamily(n_, std::move(kept), partition_);
}

GroupPartition make_partition(int n, int k) {
    if (n < 1 || n > kMaxGroundSize)
        throw std::invalid_argument("n out of range: " + std::to_string(n));
    if (k < 1 || k > n)
        throw std::invalid_argument("k must satisfy 1 <= k <= n, got " + std::to_string(k));
    GroupPartition p;
    p.n = n;
    int next = 1;
    for (int size : partition_sizes(n, k)) {
        Subset g;
        for (int t = 0; t < size; ++t) g = g.with(next++);
        p.groups.push_back(g);
    }
    return p;
}

std::vector<int> partition_sizes(int n, int k) {
    if (n < 1 || k < 1 || k > n)
        throw std::invalid_argument("partition_sizes requires 1 <= k <= n");
    std::vector<int> sizes(k, n / k);
    for (int g = 0; g < n % k; ++g) ++sizes[g];
    return sizes;
}

int default_k(int n) {
    if (n < 1) throw std::invalid_argument("default_k requires n >= 1");
    int k = static_cast<int>(std::sqrt(static_cast<double>(n)));
    while (k * k < n) ++k;
    while (k > 1 && (k - 1) * (k - 1) >= n) --k;
    return k;
}

bool is_grouped_member(Subset a, const GroupPartition& p) {
    if (a.empty() || !a.subset_of(Subset::full(p.n))) return false;
    int big = 0;
    for (Subset g : p.groups)
        if ((a & g).size() > 1) ++big;
    return big <= 1;
}

SubsetFamily build_grouped_family(const GroupPartition& p) {
    p.validate();
    // Per block: the empty choice plus singletons ("small"), or a subset of
    // size >= 2 ("big"). At most one block may be big, so each member is
    // produced exactly once.
    std::vector<std::vector<Subset>> small(p.k()), big(p.k());
    for (int g = 0; g < p.k(); ++g) {
        const std::uint64_t mask = p.groups[g].bits();
        small[g].push_back(Subset());
        p.groups[g].for_each([&](int i) { small[g].push_back(Subset::singleton(i)); });
        for (std::uint64_t sub = mask; sub; sub = (sub - 1) & mask)
            if (std::popcount(sub) > 1) big[g].push_back(Subset(sub));
    }

    std::vector<Subset> members;
    // Cartesian product over blocks, with block `big_block` (or none, -1)
    // drawing from its big options.
    auto product = [&](int big_block) {
        std::vector<std::size_t> idx(p.k(), 0);
        auto options = [&](int g) -> const std::vector<Subset>& {
            return g == big_block ? big[g] : small[g];
        };
        for (int g = 0; g < p.k(); ++g)
            if (options(g).empty()) return;
        while (true) {
            Subset s;
            for (int g = 0; g < p.k(); ++g) s = s | options(g)[idx[g]];
            if (!s.empty()) members.push_back(s);
            int g = 0;
            for (; g < p.k(); ++g) {
                if (++idx[g] < options(g).size()) break;
                idx[g] = 0;
            }
            if (g == p.k()) break;
        }
    };
    product(-1);
    for (int g = 0; g < p.k(); ++g) product(g);
    return SubsetFamily(p.n, std::move(members), p);
}

SubsetFamily full_family(int n) {
    return build_grouped_family(make_partition(n, 1));
}

int maximal_group(Subset a, const GroupPartition& p) {
    if (a.empty()) throw std::invalid_argument("maximal_group of the empty set");
    int best = 0, best_size = -1;
    for (int g = 0; g < p.k(); ++g) {
        int sz = (a & p.groups[g]).size();
        if (sz > best_size) {
            best = g;
            best_size = sz;
        }
    }
    return best;
}

ConditionReport check_singletons(const SubsetFamily& v) {
    ConditionReport r;
    r.name = "singletons";
    for (int i = 1; i <= v.n(); ++i) {
        ++r.checked;
        if (!v.contains(Subset::singleton(i)))
            r.add({"singletons", {}, {i}, "missing singleton {" + std::to_string(i) + "}"});
    }
    return r;
}

ConditionReport check_downward_closed(const SubsetFamily& v) {
    ConditionReport r;
    r.name = "downward_closed";
    for (Subset a : v.members()) {
        if (a.size() < 2) continue;
        a.for_each([&](int i) {
            ++r.checked;
            if (!v.contains(a.without(i)))
                r.add({"downward_closed", {a}, {i},
                       a.to_string() + " minus " + std::to_string(i) + " is not a member"});
        });
    }
    return r;
}

const char* to_string(ExchangeCase c) {
    switch (c) {
    case ExchangeCase::A: return "3a";
    case ExchangeCase::B: return "3b";
    case ExchangeCase::Both: return "both";
    }
    return "?";
}

bool exchange_holds(const SubsetFamily& v, Subset a, Subset b, int i, int j, ExchangeCase which) {
    const bool case_a = v.contains(b.with(i)) && v.contains(a.with(j).without(i));
    const bool case_b = v.contains(a.with(j)) && v.contains(b.with(i).without(j));
    switch (which) {
    case ExchangeCase::A: return case_a;
    case ExchangeCase::B: return case_b;
    case ExchangeCase::Both: return case_a && case_b;
    }
    return false;
}

std::optional<ExchangeWitness> find_exchange_witness(const SubsetFamily& v, Subset a, Subset b) {
    std::optional<ExchangeWitness> found;
    a.for_each([&](int i) {
        if (found) return;
        b.for_each([&](int j) {
            if (found) return;
            const bool case_a = v.contains(b.with(i)) && v.contains(a.with(j).without(i));
            const bool case_b = v.contains(a.with(j)) && v.contains(b.with(i).without(j));
            if (case_a && case_b) found = ExchangeWitness{i, j, ExchangeCase::Both};
            else if (case_a) found = ExchangeWitness{i, j, ExchangeCase::A};
            else if (case_b) found = ExchangeWitness{i, j, ExchangeCase::B};
        });
    });
    return found;
}

ConditionReport check_exchange(const SubsetFamily& v, int jobs) {
    const auto members = v.members();
    const std::uint64_t ground = Subset::full(v.n()).bits();

    auto sweep = [&](std::size_t begin, std::size_t end) {
        ConditionReport r;
        auto visit = [&](Subset a, Subset b) {
            ++r.checked;
            if (!find_exchange_witness(v, a, b))
                r.add({"exchange", {a, b}, {}, "no exchange witness for " + pair_text(a, b)});
        };
        for (std::size_t t = begin; t < end; ++t) {
            const Subset a = members[t];
            const std::uint64_t rest = ground & ~a.bits();
            const int free_bits = v.n() - a.size();
            if (free_bits < 63 && (std::uint64_t{1} << free_bits) <= members.size()) {
                // Few candidates: walk the submasks of the complement.
                std::vector<Subset> partners;
                for (std::uint64_t sub = rest; sub; sub = (sub - 1) & rest)
                    if (v.contains(Subset(sub))) partners.push_back(Subset(sub));
                std::sort(partners.begin(), partners.end(), CanonicalLess{});
                for (Subset b : partners) visit(a, b);
            } else {
                for (Subset b : members)
                    if (a.disjoint(b)) visit(a, b);
            }
        }
        return r;
    };

    ConditionReport report;
    report.name = "exchange";
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(members.size())));
    if (jobs <= 1) {
        report.merge(sweep(0, members.size()));
        return report;
    }
    std::vector<ConditionReport> parts(jobs);
    std::vector<std::thread> workers;
    const std::size_t chunk = (members.size() + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
        const std::size_t begin = std::min(members.size(), w * chunk);
        const std::size_t end = std::min(members.size(), begin + chunk);
        workers.emplace_back([&, w, begin, end] { parts[w] = sweep(begin, end); });
    }
    for (auto& t : workers) t.join();
    for (const auto& part : parts) report.merge(part);
    return report;
}

ExchangeWitness exchange_witness_grouped(Subset a, Subset b, const GroupPartition& p) {
    if (!a.disjoint(b)) throw std::invalid_argument("exchange witness needs disjoint sets");
    if (!is_grouped_member(a, p) || !is_grouped_member(b, p))
        throw std::invalid_argument("exchange witness needs grouped-family members");

    const Subset max_a = p.groups[maximal_group(a, p)];
    const Subset max_b = p.groups[maximal_group(b, p)];
    ExchangeWitness w;
    if (!(a & max_b).empty()) {
        w = {(a & max_b).min_element(), (b & max_b).min_element(), ExchangeCase::A};
    } else if (!(b & max_a).empty()) {
        w = {(a & max_a).min_element(), (b & max_a).min_element(), ExchangeCase::B};
    } else {
        w = {(a & max_a).min_element(), (b & max_b).min_element(), ExchangeCase::Both};
    }

    auto member = [&](Subset s) { return is_grouped_member(s, p); };
    const bool case_a = member(b.with(w.i)) && member(a.with(w.j).without(w.i));
    const bool case_b = member(a.with(w.j)) && member(b.with(w.i).without(w.j));
    const bool ok = w.which == ExchangeCase::A   ? case_a
                    : w.which == ExchangeCase::B ? case_b
                                                 : case_a && case_b;
    if (!ok)
        throw std::logic_error("grouped exchange witness failed validation for " + pair_text(a, b));
    return w;
}

BigInt size_bound(int k, int s) {
    if (k < 1 || s < 1) throw std::invalid_argument("size_bound requires k, s >= 1");
    BigInt r = 1;
    r <<= s;
    r *= boost::multiprecision::pow(BigInt(s + 1), static_cast<unsigned>(k - 1));
    r *= k;
    return r;
}

BigInt grouped_family_count(std::span<const int> group_sizes) {
    // Members split by which block (if any) is met in >= 2 elements; that
    // block is unique, so the cases are disjoint:
    //   prod(g+1) - 1  +  sum_t (2^g_t - 1 - g_t) * prod_{u != t} (g_u + 1).
    // Blocks of equal size contribute identical terms and are grouped.
    std::vector<std::pair<int, int>> by_size;  // (size, multiplicity)
    for (int g : group_sizes) {
        if (g < 1) throw std::invalid_argument("group sizes must be positive");
        auto it = std::find_if(by_size.begin(), by_size.end(),
                               [&](const auto& e) { return e.first == g; });
        if (it == by_size.end()) by_size.emplace_back(g, 1);
        else ++it->second;
    }
    BigInt all_small = 1;
    for (auto [g, m] : by_size)
        all_small *= boost::multiprecision::pow(BigInt(g + 1), static_cast<unsigned>(m));
    BigInt total = all_small - 1;
    for (auto [g, m] : by_size) {
        BigInt big_choices = (BigInt(1) << g) - 1 - g;
        total += m * big_choices * (all_small / (g + 1));
    }
    return total;
}

} // namespace rpforge
