#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ideal_dynamics.hpp"
#include "poset.hpp"
#include "qpoly.hpp"
#include "tableau.hpp"

namespace minuscule {

struct EngineOptions {
    unsigned threads = 1;
    std::uint64_t gapless_cap = 50'000'000;
};

// Complete pro-orbit data for the gapless tableaux of one shape, grouped by ceiling.
struct GaplessCensus {
    struct Level {
        int ceiling = 0;
        std::vector<GaplessTableau> tableaux;            // sorted
        std::vector<std::vector<std::uint32_t>> cycles;  // indices into tableaux, each starting at its minimum
    };
    std::vector<Level> levels;
    std::uint64_t total() const;
};

GaplessCensus build_gapless_census(const Poset &poset, const EngineOptions &options = {});

struct GaplessRow {
    int ceiling = 0;           // m_T
    std::uint64_t period = 0;  // tau
    std::uint64_t orbits = 0;  // N
    // Least tableau (in label order) among all orbits of this row.
    std::vector<Label> representative;

    friend bool operator==(const GaplessRow &, const GaplessRow &) = default;
};

struct GaplessOrbitTable {
    std::string poset_name;
    std::uint64_t poset_digest = 0;
    std::vector<GaplessRow> rows;  // sorted by (ceiling, period)

    std::uint64_t total() const;
};

GaplessOrbitTable summarize_census(const Poset &poset, const GaplessCensus &census);
GaplessOrbitTable build_gapless_table(const Poset &poset, const EngineOptions &options = {});

std::string table_to_json(const GaplessOrbitTable &table);
GaplessOrbitTable table_from_json(const std::string &text);

// Reads <cache_dir>/gapless-<digest>.json when present, otherwise builds the
// table and writes it there. An empty cache_dir disables caching.
GaplessOrbitTable load_or_build_table(const Poset &poset, const std::string &cache_dir,
                                      const EngineOptions &options = {});

// Period of pro^m on a tableau whose deflation has pro-period tau and m_T
// labels, and whose content vector has rotation period ell:
// ell * tau / gcd(ell * m_T / m, tau).
std::uint64_t period_formula(std::uint64_t m, std::uint64_t m_t, std::uint64_t tau, std::uint64_t ell);

// Number of length-m binary vectors with n ones whose rotation period is exactly e.
BigInt exact_period_vector_count(std::uint64_t m, std::uint64_t n, std::uint64_t e);

// (pro(S), rotate(v)) if v starts with 1, else (S, rotate(v)).
std::pair<GaplessTableau, ContentVector> k_map(const Poset &poset, const GaplessTableau &s, const ContentVector &v);

// Number of T in Inc^m whose pro^m-period divides j.
BigInt count_fixed(const GaplessOrbitTable &table, std::uint64_t m, std::uint64_t j);

struct PeriodReport {
    std::uint64_t m = 0;
    std::uint64_t period = 1;
    // A tableau whose orbit has exactly `period` elements, when one row attains it.
    std::optional<IncreasingTableau> witness;
};

PeriodReport promotion_order(const Poset &poset, const GaplessOrbitTable &table, std::uint64_t m);

struct CspRecord {
    std::uint64_t d = 0;
    BigInt fixed_count;
    RootOfUnityValue polynomial_value;
    bool match = false;
    std::optional<std::uint64_t> psi_fixed;  // brute-force rowmotion count, when computed
};

struct CspVerdict {
    std::string poset;
    std::size_t k = 0;
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    BigInt state_count;
    std::vector<CspRecord> records;
    bool holds = false;
    // Set when the rowmotion side was recounted by brute force.
    std::optional<bool> psi_recount_agrees;
};

struct CspOptions {
    // Brute-force rowmotion recount runs when |J(P x k)| is at most this.
    std::uint64_t psi_recount_cap = 1'000'000;
    unsigned threads = 1;
};

CspVerdict verify_csp(const Poset &poset, std::size_t k, const GaplessOrbitTable &table, const CspOptions &options = {});

struct FrameReport {
    std::vector<Element> tree_ideal;
    std::vector<Element> dual_tree_filter;
    std::vector<Element> frame;   // union of the two
    std::vector<Element> stable;  // boxes fixed by (pro^{m_T})^{m_T} on every gapless tableau
    bool agree = false;
};

// Largest order ideal in which every element covers at most one element.
std::vector<Element> maximal_tree_ideal(const Poset &poset);
// Largest order filter in which every element is covered by at most one element.
std::vector<Element> maximal_dual_tree_filter(const Poset &poset);

FrameReport frame_check(const Poset &poset, const GaplessCensus &census);

} // namespace minuscule
