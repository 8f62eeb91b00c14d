#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "errors.hpp"
#include "oracles.hpp"
#include "orbit_engine.hpp"

using namespace minuscule;
namespace fs = std::filesystem;

namespace {

nlohmann::json golden(const std::string &name) {
    std::ifstream in(std::string(MINUSCULE_GOLDEN_DIR) + "/" + name);
    REQUIRE(in);
    return nlohmann::json::parse(in);
}

std::vector<std::array<std::uint64_t, 3>> rows_of(const GaplessOrbitTable &t) {
    std::vector<std::array<std::uint64_t, 3>> out;
    for (const auto &r : t.rows) out.push_back({static_cast<std::uint64_t>(r.ceiling), r.period, r.orbits});
    return out;
}

std::vector<std::array<std::uint64_t, 3>> rows_of(const nlohmann::json &j) {
    std::vector<std::array<std::uint64_t, 3>> out;
    for (const auto &r : j.at("rows")) out.push_back({r.at("m_T"), r.at("tau"), r.at("N")});
    return out;
}

Poset family(const std::string &name) { return load_poset(parse_family(name)); }

fs::path temp_dir(const std::string &tag) {
    const auto d = fs::temp_directory_path() / ("minuscule-test-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

} // namespace

TEST_CASE("gapless tables match the golden files") {
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"cayley-moufang", "table_cayley_moufang.json"}, {"propeller:3", "table_propeller_3.json"},
        {"propeller:4", "table_propeller_4.json"},       {"propeller:5", "table_propeller_5.json"},
        {"propeller:6", "table_propeller_6.json"},       {"freudenthal", "table_freudenthal.json"}};
    for (const auto &[name, file] : cases) {
        CAPTURE(name);
        const auto g = golden(file);
        const auto t = build_gapless_table(family(name));
        CHECK(rows_of(t) == rows_of(g));
        CHECK(t.total() == g.at("total").get<std::uint64_t>());
    }
}

TEST_CASE("table rows are consistent with the census") {
    const Poset cm = family("cayley-moufang");
    const auto census = build_gapless_census(cm);
    CHECK(census.total() == 549);
    for (const auto &level : census.levels) {
        std::size_t covered = 0;
        for (const auto &c : level.cycles) {
            REQUIRE(!c.empty());
            CHECK(*std::min_element(c.begin(), c.end()) == c.front());
            // Each cycle really is a promotion cycle.
            for (std::size_t i = 0; i < c.size(); ++i) {
                const auto &t = level.tableaux[c[i]].tableau();
                CHECK(promotion(cm, t) == level.tableaux[c[(i + 1) % c.size()]].tableau());
            }
            covered += c.size();
        }
        CHECK(covered == level.tableaux.size());
    }
    const auto t = summarize_census(cm, census);
    for (const auto &r : t.rows) {
        // Every orbit of a gapless tableau divides m_T by rotation of its content.
        CHECK(static_cast<std::uint64_t>(r.ceiling) % r.period == 0);
        const IncreasingTableau rep(cm, r.representative, r.ceiling);
        auto u = promotion(cm, rep);
        std::uint64_t len = 1;
        for (; u != rep; u = promotion(cm, u)) ++len;
        CHECK(len == r.period);
    }
    CHECK(build_gapless_table(cm, {3, 50'000'000}).rows == t.rows);
    CHECK_THROWS_AS(build_gapless_table(cm, {1, 100}), ResourceError);
}

TEST_CASE("period formula") {
    CHECK(period_formula(8, 7, 1, 8) == 8);
    CHECK(period_formula(12, 12, 4, 1) == 4);
    CHECK(period_formula(9, 6, 2, 3) == 3);
    CHECK(period_formula(22, 17, 3, 22) == 66);
    CHECK_THROWS_AS(period_formula(8, 7, 1, 3), ParameterError);
    CHECK_THROWS_AS(period_formula(8, 7, 1, 4), ParameterError);
    CHECK_THROWS_AS(period_formula(0, 7, 1, 1), ParameterError);
}

TEST_CASE("exact-period vector counts match bit enumeration") {
    for (std::uint64_t m = 1; m <= 12; ++m) {
        std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> want;
        for (std::uint64_t bits = 0; bits < (1ull << m); ++bits)
            ++want[{static_cast<std::uint64_t>(__builtin_popcountll(bits)), oracle::rotation_period(bits, m)}];
        for (std::uint64_t n = 0; n <= m; ++n)
            for (std::uint64_t e = 1; e <= m; ++e) {
                const auto it = want.find({n, e});
                CHECK(exact_period_vector_count(m, n, e) == (it == want.end() ? 0ul : it->second));
            }
    }
}

TEST_CASE("k_map intertwines promotion with inflation") {
    for (const auto &name : {"propeller:3", "rectangle:2x3"}) {
        const Poset p = family(name);
        const int m = p.rank() + 3;
        for (const auto &t : enumerate_increasing(p, m)) {
            const auto s = deflate(t);
            const auto v = content(t);
            const auto [s2, v2] = k_map(p, s, v);
            CHECK(inflate(s2, v2) == promotion(p, t));
            CHECK(v2 == v.rotated());
        }
    }
}

TEST_CASE("count_fixed matches a brute-force promotion census") {
    for (const auto &name : {"propeller:3", "propeller:4"}) {
        const Poset p = family(name);
        const auto table = build_gapless_table(p);
        for (int m = p.rank() + 1; m <= 9; ++m) {
            CAPTURE(name);
            CAPTURE(m);
            const auto periods = oracle::periods(p, m);
            std::uint64_t order = 1;
            for (const auto &[t, e] : periods) order = std::lcm(order, e);
            CHECK(promotion_order(p, table, static_cast<std::uint64_t>(m)).period == order);
            for (std::uint64_t j = 1; j <= order; ++j) {
                if (order % j != 0) continue;
                std::uint64_t want = 0;
                for (const auto &[t, e] : periods) want += j % e == 0;
                CHECK(count_fixed(table, static_cast<std::uint64_t>(m), j) == want);
            }
        }
    }
}

TEST_CASE("property: count_fixed respects divisibility and Burnside") {
    for (const auto &name : {"cayley-moufang", "propeller:5", "freudenthal"}) {
        const Poset p = family(name);
        const auto table = build_gapless_table(p);
        for (std::uint64_t m = static_cast<std::uint64_t>(p.rank()) + 1; m <= static_cast<std::uint64_t>(p.rank()) + 8;
             ++m) {
            CAPTURE(name);
            CAPTURE(m);
            BigInt all = 0;
            for (const auto &r : table.rows)
                all += BigInt(static_cast<unsigned long>(r.period * r.orbits)) *
                       oracle::binomial(m, static_cast<std::uint64_t>(r.ceiling));
            const auto order = promotion_order(p, table, m).period;
            CHECK(count_fixed(table, m, order) == all);
            BigInt sum = 0;
            for (std::uint64_t j = 1; j <= order; ++j) {
                const auto fj = count_fixed(table, m, j);
                sum += fj;
                CHECK(fj <= count_fixed(table, m, 2 * j));
            }
            CHECK(sum % order == 0);
        }
    }
}

TEST_CASE("count_fixed reduces to the restricted sum when rows divide their ceiling") {
    for (const auto &name : {"cayley-moufang", "propeller:3", "propeller:4", "propeller:5"}) {
        const Poset p = family(name);
        const auto table = build_gapless_table(p);
        for (const auto &r : table.rows) REQUIRE(static_cast<std::uint64_t>(r.ceiling) % r.period == 0);
        for (std::uint64_t m = static_cast<std::uint64_t>(p.rank()) + 1; m <= 40; ++m)
            for (std::uint64_t d = 1; d <= m; ++d)
                if (m % d == 0) CHECK(count_fixed(table, m, m / d) == oracle::restricted_fixed_sum(table, m, d));
    }
}

TEST_CASE("closed forms for fixed points") {
    const Poset cm = family("cayley-moufang");
    const auto cmt = build_gapless_table(cm);
    for (std::uint64_t m = 16; m <= 60; m += 8) CHECK(count_fixed(cmt, m, m / 8) == BigInt(m * (m - 8) / 64));
    for (std::uint64_t p = 3; p <= 5; ++p) {
        const Poset prop = family("propeller:" + std::to_string(p));
        const auto t = build_gapless_table(prop);
        for (std::uint64_t m = 2 * p - 1; m <= 60; ++m)
            for (std::uint64_t d = 2; d <= m; ++d) {
                if (m % d != 0) continue;
                BigInt want = 0;
                if (p % d == 0) want = 2 * oracle::binomial(m / d, 2 * p / d);
                else if ((2 * p - 1) % d == 0) want = oracle::binomial(m / d, (2 * p - 1) / d);
                CHECK(count_fixed(t, m, m / d) == want);
            }
    }
    const auto ft = build_gapless_table(family("freudenthal"));
    CHECK(count_fixed(ft, 22, 1) == 0);
}

TEST_CASE("promotion order and witnesses") {
    for (const auto &c : golden("periods.json").at("cases")) {
        const std::string name = c.at("poset");
        const std::uint64_t m = c.at("m");
        CAPTURE(name);
        CAPTURE(m);
        const Poset p = family(name);
        const auto table = build_gapless_table(p);
        const auto rep = promotion_order(p, table, m);
        CHECK(rep.period == c.at("period").get<std::uint64_t>());
        REQUIRE(rep.witness);
        CHECK(rep.witness->ceiling() == static_cast<int>(m));
        auto u = promotion(p, *rep.witness);
        std::uint64_t len = 1;
        for (; u != *rep.witness && len <= rep.period; u = promotion(p, u)) ++len;
        CHECK(len == rep.period);
    }
    const Poset cm = family("cayley-moufang");
    CHECK(promotion_order(cm, build_gapless_table(cm), 5).period == 1);
}

TEST_CASE("Freudenthal orbits of period 2m and 3m coexist from m = 24") {
    const Poset f = family("freudenthal");
    const auto table = build_gapless_table(f);
    auto orbit = [&](int ceiling, std::uint64_t period) {
        for (const auto &r : table.rows)
            if (r.ceiling == ceiling && r.period == period) {
                std::vector<Label> u = oracle::promotion(f, r.representative, ceiling);
                std::uint64_t len = 1;
                for (; u != r.representative; u = oracle::promotion(f, u, ceiling)) ++len;
                return len;
            }
        return std::uint64_t{0};
    };
    CHECK(orbit(24, 48) == 48);
    CHECK(orbit(24, 72) == 72);
    CHECK(orbit(25, 50) == 50);
    CHECK(orbit(25, 75) == 75);
    CHECK(promotion_order(f, table, 22).period == 66);
    CHECK(promotion_order(f, table, 23).period == 69);
    for (std::uint64_t m = 24; m <= 30; ++m) CHECK(promotion_order(f, table, m).period == 6 * m);
}

TEST_CASE("CSP verification on small cases") {
    const Poset p3 = family("propeller:3");
    const auto t3 = build_gapless_table(p3);
    for (std::size_t k = 1; k <= 4; ++k) {
        const auto v = verify_csp(p3, k, t3);
        CHECK(v.holds);
        CHECK(v.m == k + 5);
        CHECK(v.n == v.m);
        REQUIRE(v.psi_recount_agrees);
        CHECK(*v.psi_recount_agrees);
        for (const auto &r : v.records) {
            CHECK(r.match);
            REQUIRE(r.psi_fixed);
            CHECK(BigInt(static_cast<unsigned long>(*r.psi_fixed)) == r.fixed_count);
        }
        CHECK(v.state_count == gaussian_f(p3, k).at_one());
    }
    const Poset cm = family("cayley-moufang");
    const auto v = verify_csp(cm, 2, build_gapless_table(cm), {0, 1});
    CHECK(v.holds);
    CHECK_FALSE(v.psi_recount_agrees.has_value());
}

TEST_CASE("CSP failure on the Freudenthal poset at k = 5") {
    const Poset f = family("freudenthal");
    const auto t = build_gapless_table(f);
    CHECK(verify_csp(f, 4, t).holds);
    const auto v = verify_csp(f, 5, t);
    CHECK_FALSE(v.holds);
    CHECK(v.m == 22);
    CHECK(v.n == 66);
    CHECK(v.records.size() == 66);
    const auto d1 = std::find_if(v.records.begin(), v.records.end(), [](const CspRecord &r) { return r.d == 1; });
    REQUIRE(d1 != v.records.end());
    CHECK(d1->fixed_count == 0);
    CHECK_FALSE(d1->match);
    CHECK_FALSE(is_zero_at_primitive_root(gaussian_f(f, 5), 66));
}

TEST_CASE("frame check") {
    const Poset f = family("freudenthal");
    const auto rf = frame_check(f, build_gapless_census(f));
    CHECK(rf.agree == golden("frame_freudenthal.json").at("agree").get<bool>());
    CHECK(rf.frame == rf.stable);
    CHECK(rf.tree_ideal.size() == 7);

    const Poset cm = family("cayley-moufang");
    const auto rc = frame_check(cm, build_gapless_census(cm));
    CHECK_FALSE(rc.agree);
    CHECK(rc.frame.size() == 12);
    CHECK(rc.stable.size() == 16);

    // On a chain every element is in the tree ideal.
    CHECK(maximal_tree_ideal(chain_poset(4)).size() == 4);
    CHECK(maximal_dual_tree_filter(chain_poset(4)).size() == 4);
    // A square has a tree ideal of three elements.
    CHECK(maximal_tree_ideal(family("rectangle:2x2")).size() == 3);
}

TEST_CASE("table JSON round trip and caching") {
    const Poset p = family("propeller:5");
    const auto t = build_gapless_table(p);
    const auto j = table_to_json(t);
    const auto back = table_from_json(j);
    CHECK(back.rows == t.rows);
    CHECK(back.poset_digest == t.poset_digest);
    CHECK(table_to_json(back) == j);
    CHECK_THROWS_AS(table_from_json("{}"), ValidationError);
    CHECK_THROWS_AS(table_from_json("[1"), ValidationError);

    const auto dir = temp_dir("cache");
    const auto first = load_or_build_table(p, dir.string());
    std::size_t files = 0;
    for (const auto &e : fs::directory_iterator(dir)) {
        ++files;
        CHECK(e.path().filename().string().rfind("gapless-", 0) == 0);
    }
    CHECK(files == 1);
    const auto second = load_or_build_table(p, dir.string());
    CHECK(second.rows == first.rows);
    CHECK(load_or_build_table(p, "").rows == t.rows);
    fs::remove_all(dir);
}
