#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "poset.hpp"

namespace minuscule {

using Label = std::uint16_t;

// Binary vector of length m; bit i (0-based) records whether label i+1 occurs.
class ContentVector {
public:
    ContentVector() = default;
    explicit ContentVector(std::vector<std::uint8_t> bits);
    // Parses "1101110".
    static ContentVector from_string(const std::string &bits);
    static ContentVector ones(std::size_t m) { return ContentVector(std::vector<std::uint8_t>(m, 1)); }

    std::size_t size() const { return bits_.size(); }
    bool operator[](std::size_t i) const { return bits_[i] != 0; }
    std::size_t popcount() const;
    const std::vector<std::uint8_t> &bits() const { return bits_; }

    // Cyclic left rotation (v1, ..., vm) -> (v2, ..., vm, v1).
    ContentVector rotated() const;
    // Least e >= 1 with rotation^e = identity on this vector; 0 for the empty vector.
    std::size_t period() const;

    std::string to_string() const;
    friend bool operator==(const ContentVector &, const ContentVector &) = default;

private:
    std::vector<std::uint8_t> bits_;
};

// Strictly order-preserving labeling of a poset by labels in [1, ceiling].
// Labels are stored in the poset's element order.
class IncreasingTableau {
public:
    IncreasingTableau() = default;
    // Validates against `poset`; throws ValidationError on failure.
    IncreasingTableau(const Poset &poset, std::vector<Label> labels, int ceiling);
    // For hot paths whose outputs are valid by construction.
    static IncreasingTableau unchecked(std::vector<Label> labels, int ceiling);

    int ceiling() const { return ceiling_; }
    std::size_t size() const { return labels_.size(); }
    std::span<const Label> labels() const { return labels_; }
    Label operator[](Element x) const { return labels_[x]; }

    // m_T, the number of distinct labels.
    int distinct_labels() const;
    bool is_gapless() const { return distinct_labels() == ceiling_; }

    friend bool operator==(const IncreasingTableau &, const IncreasingTableau &) = default;
    friend auto operator<=>(const IncreasingTableau &a, const IncreasingTableau &b) {
        if (auto c = a.ceiling_ <=> b.ceiling_; c != 0) return c;
        return a.labels_ <=> b.labels_;
    }

private:
    std::vector<Label> labels_;
    int ceiling_ = 0;
};

struct TableauHash {
    std::size_t operator()(const IncreasingTableau &t) const;
};

// An increasing tableau whose label set is exactly [ceiling].
class GaplessTableau {
public:
    GaplessTableau() = default;
    // Throws ValidationError unless `t` is gapless.
    explicit GaplessTableau(IncreasingTableau t);

    const IncreasingTableau &tableau() const { return t_; }
    operator const IncreasingTableau &() const { return t_; }
    int ceiling() const { return t_.ceiling(); }
    std::span<const Label> labels() const { return t_.labels(); }

    friend bool operator==(const GaplessTableau &, const GaplessTableau &) = default;
    friend auto operator<=>(const GaplessTableau &a, const GaplessTableau &b) { return a.t_ <=> b.t_; }

private:
    IncreasingTableau t_;
};

bool is_increasing(const Poset &poset, std::span<const Label> labels, int ceiling);

// K-Bender-Knuth operator rho_i, 1 <= i <= ceiling-1. Boxes labeled i or i+1
// that have no cover-neighbor in that set swap labels; all others stay.
IncreasingTableau kbk(const Poset &poset, const IncreasingTableau &t, int i);

// K-promotion: rho_1, then rho_2, ..., then rho_{m-1}.
IncreasingTableau promotion(const Poset &poset, const IncreasingTableau &t);

// In-place variants used by the orbit engine.
void apply_kbk(const Poset &poset, std::span<Label> labels, Label i);
void apply_promotion(const Poset &poset, std::span<Label> labels, int ceiling);

ContentVector content(const IncreasingTableau &t);
GaplessTableau deflate(const IncreasingTableau &t);

// Position (1-based) of the k-th one in v.
std::size_t vector_inflation(const ContentVector &v, std::size_t k);
IncreasingTableau inflate(const GaplessTableau &s, const ContentVector &v);

// Inc^m(P), each exactly once, sorted by label array.
std::vector<IncreasingTableau> enumerate_increasing(const Poset &poset, int ceiling,
                                                    std::uint64_t cap = 10'000'000, unsigned threads = 1);
// Unsorted visitor form of the same search (single-threaded).
void for_each_increasing(const Poset &poset, int ceiling,
                         const std::function<void(std::span<const Label>)> &visit);

// All gapless tableaux of every ceiling, sorted by (ceiling, labels).
std::vector<GaplessTableau> enumerate_gapless(const Poset &poset, std::uint64_t cap = 50'000'000,
                                              unsigned threads = 1);

// Text form for shape posets: one line per row, bottom row first,
// comma-separated labels with '.' for the columns before the row's offset.
std::string format_tableau(const Poset &poset, const IncreasingTableau &t);
IncreasingTableau parse_tableau(const Poset &poset, const std::string &text, int ceiling);

} // namespace minuscule
