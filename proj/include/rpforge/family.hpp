#pragma once

#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rpforge/report.hpp"
#include "rpforge/subset.hpp"

namespace rpforge {

using BigInt = boost::multiprecision::cpp_int;

// Partition of {1,...,n} into blocks of almost equal size.
struct GroupPartition {
    int n = 0;
    std::vector<Subset> groups;

    int k() const { return static_cast<int>(groups.size()); }
    // Size of the largest block.
    int max_group_size() const;
    // Index of the block holding element i.
    int group_of(int i) const;
    // Throws std::invalid_argument when the blocks are not a partition of
    // {1,...,n} or their sizes differ by more than one.
    void validate() const;
};

// A set of nonempty subsets of {1,...,n}. Members are kept in canonical order
// (size, then lexicographic) and are unique.
class SubsetFamily {
public:
    SubsetFamily() = default;
    SubsetFamily(int n, std::vector<Subset> members,
                 std::optional<GroupPartition> partition = std::nullopt);

    int n() const { return n_; }
    std::size_t size() const { return members_.size(); }
    std::span<const Subset> members() const { return members_; }
    const std::optional<GroupPartition>& partition() const { return partition_; }

    bool contains(Subset s) const {
        if (!dense_.empty()) return s.bits() < dense_.size() && dense_[s.bits()] != 0;
        return sparse_.contains(s);
    }

    SubsetFamily without(Subset s) const;

private:
    int n_ = 0;
    std::vector<Subset> members_;
    std::optional<GroupPartition> partition_;
    // Membership lookup: a bitmap over all 2^n words for small n, a hash set otherwise.
    std::vector<std::uint8_t> dense_;
    std::unordered_set<Subset> sparse_;
};

GroupPartition make_partition(int n, int k);

// ceil(sqrt(n))
int default_k(int n);

// True when at most one block meets `a` in more than one element.
bool is_grouped_member(Subset a, const GroupPartition& p);

SubsetFamily build_grouped_family(const GroupPartition& p);

// All nonempty subsets of {1,...,n}; the single-block grouped family.
SubsetFamily full_family(int n);

// Block meeting `a` in the most elements; ties go to the smallest index.
int maximal_group(Subset a, const GroupPartition& p);

ConditionReport check_singletons(const SubsetFamily& v);
ConditionReport check_downward_closed(const SubsetFamily& v);

enum class ExchangeCase { A, B, Both };

const char* to_string(ExchangeCase c);

struct ExchangeWitness {
    int i = 0;  // element of A
    int j = 0;  // element of B
    ExchangeCase which = ExchangeCase::A;
    bool operator==(const ExchangeWitness&) const = default;
};

// (3a): B+i and A+j-i are members. (3b): A+j and B+i-j are members.
bool exchange_holds(const SubsetFamily& v, Subset a, Subset b, int i, int j, ExchangeCase which);

// First (i, j) in lexicographic order satisfying (3a) or (3b) for the
// disjoint pair (a, b); `which` is Both when the pair satisfies both.
std::optional<ExchangeWitness> find_exchange_witness(const SubsetFamily& v, Subset a, Subset b);

// Runs find_exchange_witness over every ordered disjoint pair. `jobs` splits
// the outer loop across threads; the merged report is independent of it.
ConditionReport check_exchange(const SubsetFamily& v, int jobs = 1);

// Constructive witness for a disjoint pair of grouped-family members,
// following the maximal-group case analysis. Throws std::invalid_argument if
// the sets intersect or are not members, std::logic_error if the witness
// fails validation.
ExchangeWitness exchange_witness_grouped(Subset a, Subset b, const GroupPartition& p);

// 2^s (s+1)^(k-1) k
BigInt size_bound(int k, int s);

// Exact size of the grouped family for blocks of the given sizes.
BigInt grouped_family_count(std::span<const int> group_sizes);

// Block sizes produced by make_partition(n, k), without building subsets
// (n may exceed the 64-element encoding limit).
std::vector<int> partition_sizes(int n, int k);

} // namespace rpforge
