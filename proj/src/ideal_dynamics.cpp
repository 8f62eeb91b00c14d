#include "ideal_dynamics.hpp"

#include <unordered_map>

#include "errors.hpp"
#include "parallel.hpp"

namespace minuscule {

bool is_down_closed(const Poset &poset, const Bitset &members) {
    if (members.size() != poset.size()) return false;
    bool ok = true;
    members.for_each([&](std::size_t x) {
        if (!poset.lower_cover_mask(static_cast<Element>(x)).is_subset_of(members)) ok = false;
    });
    return ok;
}

OrderIdeal::OrderIdeal(const Poset &poset, Bitset members) : members_(std::move(members)) {
    if (!is_down_closed(poset, members_)) throw ValidationError("set is not an order ideal");
}

OrderIdeal OrderIdeal::full(const Poset &poset) {
    Bitset b(poset.size());
    b.set_all();
    return OrderIdeal(std::move(b), Unchecked{});
}

OrderIdeal rowmotion(const Poset &poset, const OrderIdeal &ideal) {
    const Bitset &in = ideal.members_;
    Bitset out(poset.size());
    for (Element x = 0; x < poset.size(); ++x) {
        if (in.test(x)) continue;
        if (poset.lower_cover_mask(x).is_subset_of(in)) out |= poset.down_set(x);
    }
    return OrderIdeal(std::move(out), OrderIdeal::Unchecked{});
}

void for_each_ideal(const Poset &poset, const std::function<void(const OrderIdeal &)> &visit) {
    const auto order = poset.linear_extension();
    OrderIdeal current(Bitset(poset.size()), OrderIdeal::Unchecked{});
    // Every partial assignment extends (excluding is always allowed), so the
    // search tree has no dead ends.
    auto recurse = [&](auto &&self, std::size_t pos) -> void {
        if (pos == order.size()) {
            visit(current);
            return;
        }
        const Element x = order[pos];
        self(self, pos + 1);
        if (poset.lower_cover_mask(x).is_subset_of(current.members_)) {
            current.members_.set(x);
            self(self, pos + 1);
            current.members_.reset(x);
        }
    };
    recurse(recurse, 0);
}

namespace {
struct CapReached {};
} // namespace

std::vector<OrderIdeal> enumerate_ideals(const Poset &poset, std::uint64_t cap) {
    std::vector<OrderIdeal> out;
    try {
        for_each_ideal(poset, [&](const OrderIdeal &I) {
            if (out.size() >= cap) throw CapReached{};
            out.push_back(I);
        });
    } catch (const CapReached &) {
        throw ResourceError("order ideal enumeration exceeded the state cap", cap);
    }
    return out;
}

std::map<std::uint64_t, std::uint64_t> OrbitSummary::multiset() const {
    std::map<std::uint64_t, std::uint64_t> m;
    for (auto s : orbit_sizes) ++m[s];
    return m;
}

std::uint64_t OrbitSummary::fixed_by_power(std::uint64_t j) const {
    std::uint64_t total = 0;
    for (auto s : orbit_sizes)
        if (j % s == 0) total += s;
    return total;
}

OrbitSummary orbit_summary_of(const std::vector<std::uint32_t> &next) {
    OrbitSummary summary;
    summary.total_states = next.size();
    std::vector<bool> seen(next.size(), false);
    for (std::size_t i = 0; i < next.size(); ++i) {
        if (seen[i]) continue;
        std::uint64_t len = 0;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            ++len;
            j = next[j];
        }
        if (j != i) throw InvariantError("action is not a permutation");
        summary.orbit_sizes.push_back(len);
    }
    return summary;
}

OrbitSummary psi_orbits(const Poset &poset, std::size_t k, const OrbitOptions &options) {
    const Poset product = chain_product(poset, k);
    const auto states = enumerate_ideals(product, options.state_cap);

    std::unordered_map<Bitset, std::uint32_t, BitsetHash> index;
    index.reserve(states.size() * 2);
    for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i].members(), static_cast<std::uint32_t>(i));

    std::vector<std::uint32_t> next(states.size());
    parallel_for(states.size(), options.threads, [&](std::size_t i) {
        next[i] = index.at(rowmotion(product, states[i]).members());
    });
    return orbit_summary_of(next);
}

PlanePartition ideal_to_plane_partition(const Poset &poset, std::size_t k, const OrderIdeal &ideal) {
    if (ideal.members().size() != poset.size() * k)
        throw ValidationError("ideal does not belong to P x k");
    PlanePartition pp;
    pp.k = static_cast<int>(k);
    pp.heights.assign(poset.size(), 0);
    for (std::size_t x = 0; x < poset.size(); ++x)
        for (std::size_t i = 0; i < k; ++i)
            if (ideal.contains(static_cast<Element>(x * k + i))) ++pp.heights[x];
    return pp;
}

OrderIdeal plane_partition_to_ideal(const Poset &poset, const PlanePartition &pp) {
    if (pp.heights.size() != poset.size()) throw ValidationError("height vector has the wrong length");
    if (pp.k < 0) throw ValidationError("negative height bound");
    for (std::size_t x = 0; x < poset.size(); ++x)
        if (pp.heights[x] < 0 || pp.heights[x] > pp.k)
            throw ValidationError("height out of range at element " + std::to_string(x));
    for (const auto &[a, b] : poset.covers())
        if (pp.heights[a] < pp.heights[b])
            throw ValidationError("heights are not weakly order-reversing at cover (" + std::to_string(a) +
                                  "," + std::to_string(b) + ")");
    const std::size_t k = static_cast<std::size_t>(pp.k);
    Bitset b(poset.size() * k);
    for (std::size_t x = 0; x < poset.size(); ++x)
        for (int i = 0; i < pp.heights[x]; ++i) b.set(x * k + static_cast<std::size_t>(i));
    return OrderIdeal(std::move(b), OrderIdeal::Unchecked{});
}

} // namespace minuscule
