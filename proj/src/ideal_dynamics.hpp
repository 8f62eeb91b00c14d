#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "bitset.hpp"
#include "poset.hpp"

namespace minuscule {

inline constexpr std::uint64_t kDefaultStateCap = 10'000'000;

// Weakly order-reversing heights P -> {0..k}.
struct PlanePartition {
    std::vector<int> heights;
    int k = 0;
    friend bool operator==(const PlanePartition &, const PlanePartition &) = default;
};

// Down-closed subset of a poset, stored as a membership bitset over its elements.
class OrderIdeal {
public:
    OrderIdeal() = default;
    // Throws ValidationError unless `members` is down-closed in `poset`.
    OrderIdeal(const Poset &poset, Bitset members);

    static OrderIdeal empty(const Poset &poset) { return OrderIdeal(Bitset(poset.size()), Unchecked{}); }
    static OrderIdeal full(const Poset &poset);

    const Bitset &members() const { return members_; }
    bool contains(Element x) const { return members_.test(x); }
    std::size_t size() const { return members_.count(); }

    friend bool operator==(const OrderIdeal &, const OrderIdeal &) = default;

private:
    struct Unchecked {};
    OrderIdeal(Bitset members, Unchecked) : members_(std::move(members)) {}
    Bitset members_;

    friend OrderIdeal rowmotion(const Poset &, const OrderIdeal &);
    friend void for_each_ideal(const Poset &, const std::function<void(const OrderIdeal &)> &);
    friend OrderIdeal plane_partition_to_ideal(const Poset &, const PlanePartition &);
};

bool is_down_closed(const Poset &poset, const Bitset &members);

// Down-closure of the minimal elements of the complement.
OrderIdeal rowmotion(const Poset &poset, const OrderIdeal &ideal);

// Visits every ideal exactly once: elements are decided in linear-extension
// order, excluded before included.
void for_each_ideal(const Poset &poset, const std::function<void(const OrderIdeal &)> &visit);

// Throws ResourceError once more than `cap` ideals would be produced.
std::vector<OrderIdeal> enumerate_ideals(const Poset &poset, std::uint64_t cap = kDefaultStateCap);

struct OrbitSummary {
    // One entry per orbit, ordered by the orbit's first state in enumeration order.
    std::vector<std::uint64_t> orbit_sizes;
    std::uint64_t total_states = 0;

    // orbit size -> number of orbits of that size
    std::map<std::uint64_t, std::uint64_t> multiset() const;
    // Number of states fixed by the j-fold power of the action.
    std::uint64_t fixed_by_power(std::uint64_t j) const;
};

// Cycle structure of a permutation of 0..n-1 given as successor indices.
OrbitSummary orbit_summary_of(const std::vector<std::uint32_t> &next);

struct OrbitOptions {
    std::uint64_t state_cap = kDefaultStateCap;
    unsigned threads = 1;
};

// Rowmotion orbits on J(P x k).
OrbitSummary psi_orbits(const Poset &poset, std::size_t k, const OrbitOptions &options = {});

// `ideal` must be an ideal of chain_product(poset, k).
PlanePartition ideal_to_plane_partition(const Poset &poset, std::size_t k, const OrderIdeal &ideal);
// Throws ValidationError unless heights are in range and weakly order-reversing.
OrderIdeal plane_partition_to_ideal(const Poset &poset, const PlanePartition &pp);

} // namespace minuscule
