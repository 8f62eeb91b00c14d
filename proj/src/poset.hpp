#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bitset.hpp"

namespace minuscule {

using Element = std::uint32_t;

// A box of a diagram, 1-based, rows counted bottom-to-top.
struct Box {
    int row = 0;
    int col = 0;
    friend bool operator==(const Box &, const Box &) = default;
};

struct ShapeRow {
    int offset = 0;  // number of empty columns before the first box
    int length = 0;
    friend bool operator==(const ShapeRow &, const ShapeRow &) = default;
};

// Rows are listed bottom-to-top; row r holds the boxes (r, offset+1) .. (r, offset+length).
struct ShapeDiagram {
    std::vector<ShapeRow> rows;
};

enum class FamilyKind { Propeller, CayleyMoufang, Freudenthal, Rectangle, ShiftedStaircase, Custom };

struct PosetFamily {
    FamilyKind kind = FamilyKind::Custom;
    int a = 0;  // Propeller: p; Rectangle: rows; ShiftedStaircase: n
    int b = 0;  // Rectangle: columns
    std::string file;  // Custom

    static PosetFamily propeller(int p) { return {FamilyKind::Propeller, p, 0, {}}; }
    static PosetFamily cayley_moufang() { return {FamilyKind::CayleyMoufang, 0, 0, {}}; }
    static PosetFamily freudenthal() { return {FamilyKind::Freudenthal, 0, 0, {}}; }
    static PosetFamily rectangle(int rows, int cols) { return {FamilyKind::Rectangle, rows, cols, {}}; }
    static PosetFamily shifted_staircase(int n) { return {FamilyKind::ShiftedStaircase, n, 0, {}}; }
    static PosetFamily custom(std::string path) { return {FamilyKind::Custom, 0, 0, std::move(path)}; }

    // Stable display name, e.g. "propeller(5)", "cayley-moufang".
    std::string name() const;
    bool is_minuscule() const { return kind != FamilyKind::Custom; }
};

// Accepts "cayley-moufang" (or "cm", "e6"), "freudenthal" ("f", "e7"),
// "propeller:P" ("pP"), "rectangle:AxB", "staircase:N". Anything else is
// treated as the path of a poset JSON file.
PosetFamily parse_family(const std::string &text);

ShapeDiagram family_shape(const PosetFamily &family);

// Immutable finite poset on elements 0..n-1 given by its cover relation.
// Element order is a linear extension for every poset built from a shape.
class Poset {
public:
    using Cover = std::pair<Element, Element>;

    // Validates that the covers form an acyclic, transitively reduced relation.
    static Poset from_covers(std::size_t n, std::vector<Cover> covers,
                             PosetFamily family = PosetFamily{});

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    std::span<const Cover> covers() const { return covers_; }
    std::span<const Element> lower_covers(Element x) const { return lower_[x]; }
    std::span<const Element> upper_covers(Element x) const { return upper_[x]; }

    // Length of the longest chain with maximum x.
    int rank(Element x) const { return rank_[x]; }
    // Length of the longest chain with minimum x.
    int corank(Element x) const { return corank_[x]; }
    // Length of the longest chain in the poset; -1 when empty.
    int rank() const { return height_; }
    std::span<const int> ranks() const { return rank_; }

    bool less_equal(Element x, Element y) const { return down_[y].test(x); }
    const Bitset &down_set(Element x) const { return down_[x]; }
    const Bitset &up_set(Element x) const { return up_[x]; }
    const Bitset &lower_cover_mask(Element x) const { return lower_mask_[x]; }

    std::vector<Element> minimal_elements() const;
    std::vector<Element> maximal_elements() const;
    std::span<const Element> linear_extension() const { return linear_extension_; }

    const PosetFamily &family() const { return family_; }
    const std::optional<std::vector<Box>> &boxes() const { return boxes_; }
    const std::optional<ShapeDiagram> &shape() const { return shape_; }
    std::optional<Element> element_at(Box b) const;

    bool is_connected() const;

    // Structural equality: same element count and same cover relation.
    friend bool operator==(const Poset &a, const Poset &b) {
        return a.n_ == b.n_ && a.covers_ == b.covers_;
    }

private:
    Poset() = default;

    std::size_t n_ = 0;
    std::vector<Cover> covers_;
    std::vector<std::vector<Element>> lower_, upper_;
    std::vector<int> rank_, corank_;
    int height_ = -1;
    std::vector<Bitset> down_, up_, lower_mask_;
    std::vector<Element> linear_extension_;
    PosetFamily family_;
    std::optional<std::vector<Box>> boxes_;
    std::optional<ShapeDiagram> shape_;

    friend Poset build_poset_from_shape(const ShapeDiagram &, PosetFamily);
};

Poset build_minuscule_poset(const PosetFamily &family);
Poset build_poset_from_shape(const ShapeDiagram &shape, PosetFamily family = PosetFamily{});
Poset chain_poset(std::size_t k);

// P x k with element (x, i) stored at index x*k + i.
Poset chain_product(const Poset &poset, std::size_t k);

std::vector<int> rank_vector(const Poset &poset);

// Resolves a family, loading Custom families from their JSON file.
Poset load_poset(const PosetFamily &family);

// JSON: {"shape": {"rows": [[offset,len],...]}} or {"n": n, "covers": [[i,j],...]}.
Poset poset_from_json(const std::string &text);
// Canonical form: shape posets keep their rows, everything else is written
// as a sorted cover list.
std::string poset_to_json(const Poset &poset);

// Stable 64-bit digest of the canonical cover list.
std::uint64_t poset_digest(const Poset &poset);

} // namespace minuscule
