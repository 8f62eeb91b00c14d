#include <doctest.h>

#include <algorithm>
#include <set>

#include "errors.hpp"
#include "oracles.hpp"
#include "poset.hpp"

using namespace minuscule;

namespace {

int oracle_longest_chain(const Poset &p) {
    // Longest path by relaxation over the order matrix.
    const auto leq = oracle::order_matrix(p);
    std::vector<int> best(p.size(), 0);
    for (std::size_t round = 0; round < p.size(); ++round)
        for (std::size_t x = 0; x < p.size(); ++x)
            for (std::size_t y = 0; y < p.size(); ++y)
                if (x != y && leq[y][x]) best[x] = std::max(best[x], best[y] + 1);
    return p.empty() ? -1 : *std::max_element(best.begin(), best.end());
}

} // namespace

TEST_CASE("built-in families have the expected size and rank") {
    const Poset cm = build_minuscule_poset(PosetFamily::cayley_moufang());
    CHECK(cm.size() == 16);
    CHECK(cm.rank() == 10);
    const Poset f = build_minuscule_poset(PosetFamily::freudenthal());
    CHECK(f.size() == 27);
    CHECK(f.rank() == 16);
    for (int p = 3; p <= 6; ++p) {
        const Poset prop = build_minuscule_poset(PosetFamily::propeller(p));
        CHECK(prop.size() == static_cast<std::size_t>(2 * p));
        CHECK(prop.rank() == 2 * p - 2);
    }
    for (const auto &fam : {PosetFamily::cayley_moufang(), PosetFamily::freudenthal(), PosetFamily::propeller(4),
                            PosetFamily::rectangle(2, 3), PosetFamily::shifted_staircase(4)}) {
        const Poset p = build_minuscule_poset(fam);
        CHECK(p.minimal_elements().size() == 1);
        CHECK(p.maximal_elements().size() == 1);
        CHECK(p.rank() == oracle_longest_chain(p));
    }
}

TEST_CASE("propeller shape and parameter checks") {
    const Poset p5 = build_minuscule_poset(PosetFamily::propeller(5));
    REQUIRE(p5.shape());
    CHECK(p5.shape()->rows == std::vector<ShapeRow>{{0, 5}, {3, 5}});
    CHECK(build_poset_from_shape(ShapeDiagram{{{0, 5}, {3, 5}}}) == p5);
    CHECK_THROWS_AS(build_minuscule_poset(PosetFamily::propeller(2)), ParameterError);
    CHECK_THROWS_AS(build_minuscule_poset(PosetFamily::rectangle(0, 3)), ParameterError);
}

TEST_CASE("shape posets follow the box cover rule") {
    const Poset sq = build_poset_from_shape(ShapeDiagram{{{0, 2}, {0, 2}}});
    CHECK(sq.size() == 4);
    CHECK(sq.covers().size() == 4);
    CHECK(sq.minimal_elements().size() == 1);
    CHECK(sq.maximal_elements().size() == 1);

    const Poset one = build_poset_from_shape(ShapeDiagram{{{0, 1}}});
    CHECK(one.size() == 1);
    CHECK(one.rank() == 0);

    CHECK_THROWS_AS(build_poset_from_shape(ShapeDiagram{{{0, 1}, {2, 1}}}), ValidationError);
    CHECK_THROWS_AS(build_poset_from_shape(ShapeDiagram{}), Error);

    // Indexing is row-major, bottom-to-top, left-to-right.
    const Poset cm = build_minuscule_poset(PosetFamily::cayley_moufang());
    REQUIRE(cm.boxes());
    CHECK((*cm.boxes())[0] == Box{1, 1});
    CHECK((*cm.boxes())[5] == Box{2, 3});
    CHECK(cm.element_at(Box{4, 8}) == 15u);
    CHECK_FALSE(cm.element_at(Box{2, 1}).has_value());
}

TEST_CASE("ranks of the built-ins") {
    const auto cm = rank_vector(build_minuscule_poset(PosetFamily::cayley_moufang()));
    CHECK(std::set<int>(cm.begin(), cm.end()).size() == 11);
    CHECK(*std::min_element(cm.begin(), cm.end()) == 0);
    CHECK(*std::max_element(cm.begin(), cm.end()) == 10);

    CHECK(rank_vector(chain_poset(4)) == std::vector<int>{0, 1, 2, 3});

    const Poset f = build_minuscule_poset(PosetFamily::freudenthal());
    const auto fr = rank_vector(f);
    CHECK(*std::max_element(fr.begin(), fr.end()) + 1 == 17);
    // Every element lies on a maximal chain of full length.
    for (Element x = 0; x < f.size(); ++x) CHECK(f.rank(x) + f.corank(x) == f.rank());
}

TEST_CASE("chain products") {
    const Poset c3 = chain_product(chain_poset(1), 3);
    CHECK(c3.size() == 3);
    CHECK(c3.rank() == 2);
    CHECK(chain_product(build_minuscule_poset(PosetFamily::propeller(3)), 2).size() == 12);
    CHECK(chain_product(chain_poset(2), 0).empty());

    const Poset cm = build_minuscule_poset(PosetFamily::cayley_moufang());
    const Poset cm1 = chain_product(cm, 1);
    CHECK(cm1.size() == cm.size());
    CHECK(std::vector(cm1.covers().begin(), cm1.covers().end()) == std::vector(cm.covers().begin(), cm.covers().end()));

    for (std::size_t k = 1; k <= 4; ++k) {
        const Poset pk = chain_product(cm, k);
        CHECK(pk.size() == 16 * k);
        CHECK(pk.rank() == 10 + static_cast<int>(k) - 1);
    }
}

TEST_CASE("from_covers validation") {
    CHECK_THROWS_AS(Poset::from_covers(2, {{0, 2}}), ValidationError);
    CHECK_THROWS_AS(Poset::from_covers(2, {{1, 1}}), ValidationError);
    CHECK_THROWS_AS(Poset::from_covers(2, {{0, 1}, {1, 0}}), ValidationError);
    CHECK_THROWS_AS(Poset::from_covers(3, {{0, 1}, {1, 2}, {0, 2}}), ValidationError);
    CHECK_THROWS_AS(Poset::from_covers(2, {{0, 1}, {0, 1}}), ValidationError);
    CHECK(Poset::from_covers(0, {}).rank() == -1);
}

TEST_CASE("property: random posets are transitively reduced and ranked") {
    oracle::Gen gen(0x5eed0001);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + gen.below(12);
        const auto covers = oracle::reduce(n, gen.dag(n, 0.3));
        const Poset p = Poset::from_covers(n, covers);
        const auto leq = oracle::order_matrix(p);
        for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y) CHECK(p.less_equal(x, y) == leq[x][y]);
        CHECK(p.rank() == oracle_longest_chain(p));
        // Covers are exactly the reduced input.
        CHECK(std::vector(p.covers().begin(), p.covers().end()) == covers);
        // Linear extension respects the order.
        const auto ext = p.linear_extension();
        std::vector<std::size_t> pos(n);
        for (std::size_t i = 0; i < n; ++i) pos[ext[i]] = i;
        for (const auto &[a, b] : p.covers()) CHECK(pos[a] < pos[b]);
    }
}

TEST_CASE("property: random shapes serialize canonically") {
    oracle::Gen gen(0x5eed0002);
    for (int trial = 0; trial < 40; ++trial) {
        const auto shape = gen.shape(4, 5);
        const Poset p = build_poset_from_shape(shape);
        const std::string j = poset_to_json(p);
        const Poset q = poset_from_json(j);
        CHECK(q == p);
        CHECK(poset_to_json(q) == j);
        CHECK(poset_digest(q) == poset_digest(p));
        CHECK(p.is_connected());
    }
}

TEST_CASE("poset JSON input") {
    const Poset p = poset_from_json(R"({"n": 3, "covers": [[1, 2], [0, 1]]})");
    CHECK(p.size() == 3);
    CHECK(p.rank() == 2);
    CHECK(poset_to_json(p) == poset_to_json(poset_from_json(poset_to_json(p))));
    CHECK_THROWS_AS(poset_from_json("{"), ValidationError);
    CHECK_THROWS_AS(poset_from_json(R"({"rows": []})"), ValidationError);
    CHECK_THROWS_AS(poset_from_json(R"({"n": 2, "covers": [[0, 5]]})"), ValidationError);
    CHECK_FALSE(p.family().is_minuscule());
}

TEST_CASE("family names parse") {
    CHECK(parse_family("cayley-moufang").kind == FamilyKind::CayleyMoufang);
    CHECK(parse_family("E7").kind == FamilyKind::Freudenthal);
    CHECK(parse_family("propeller:5").a == 5);
    CHECK(parse_family("p4").a == 4);
    const auto r = parse_family("rectangle:2x3");
    CHECK(r.kind == FamilyKind::Rectangle);
    CHECK(r.a == 2);
    CHECK(r.b == 3);
    CHECK(parse_family("some/file.json").kind == FamilyKind::Custom);
    CHECK_THROWS_AS(parse_family("rectangle:23"), ParameterError);
    CHECK_THROWS_AS(load_poset(parse_family("/nonexistent/poset.json")), ValidationError);
}
