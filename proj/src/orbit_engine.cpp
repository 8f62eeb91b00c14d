#include "orbit_engine.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "errors.hpp"
#include "parallel.hpp"

namespace minuscule {

namespace {

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

int mobius(std::uint64_t n) {
    int result = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

} // namespace

std::uint64_t GaplessCensus::total() const {
    std::uint64_t t = 0;
    for (const auto &l : levels) t += l.tableaux.size();
    return t;
}

GaplessCensus build_gapless_census(const Poset &poset, const EngineOptions &options) {
    auto all = enumerate_gapless(poset, options.gapless_cap, options.threads);

    GaplessCensus census;
    for (auto &t : all) {
        if (census.levels.empty() || census.levels.back().ceiling != t.ceiling())
            census.levels.push_back({t.ceiling(), {}, {}});
        census.levels.back().tableaux.push_back(std::move(t));
    }

    for (auto &level : census.levels) {
        const auto &tabs = level.tableaux;
        std::unordered_map<IncreasingTableau, std::uint32_t, TableauHash> index;
        index.reserve(tabs.size() * 2);
        for (std::size_t i = 0; i < tabs.size(); ++i) index.emplace(tabs[i].tableau(), static_cast<std::uint32_t>(i));

        std::vector<std::uint32_t> next(tabs.size());
        // Chunked so each work item amortizes the scheduling lock.
        const std::size_t chunk = 256;
        parallel_for((tabs.size() + chunk - 1) / chunk, options.threads, [&](std::size_t c) {
            std::vector<Label> labels;
            for (std::size_t i = c * chunk; i < std::min(tabs.size(), (c + 1) * chunk); ++i) {
                labels.assign(tabs[i].labels().begin(), tabs[i].labels().end());
                apply_promotion(poset, labels, level.ceiling);
                auto it = index.find(IncreasingTableau::unchecked(labels, level.ceiling));
                if (it == index.end()) throw InvariantError("promotion left the gapless set");
                next[i] = it->second;
            }
        });

        std::vector<bool> seen(tabs.size(), false);
        for (std::size_t i = 0; i < tabs.size(); ++i) {
            if (seen[i]) continue;
            std::vector<std::uint32_t> cycle;
            std::size_t j = i;
            while (!seen[j]) {
                seen[j] = true;
                cycle.push_back(static_cast<std::uint32_t>(j));
                j = next[j];
            }
            if (j != i) throw InvariantError("promotion is not a permutation of the gapless tableaux");
            level.cycles.push_back(std::move(cycle));
        }
    }
    return census;
}

std::uint64_t GaplessOrbitTable::total() const {
    std::uint64_t t = 0;
    for (const auto &r : rows) t += r.period * r.orbits;
    return t;
}

GaplessOrbitTable summarize_census(const Poset &poset, const GaplessCensus &census) {
    GaplessOrbitTable table;
    table.poset_name = poset.family().name();
    table.poset_digest = poset_digest(poset);
    for (const auto &level : census.levels) {
        std::map<std::uint64_t, GaplessRow> by_period;
        for (const auto &cycle : level.cycles) {
            auto &row = by_period[cycle.size()];
            if (row.orbits++ == 0) {
                row.ceiling = level.ceiling;
                row.period = cycle.size();
                const auto &rep = level.tableaux[cycle.front()];
                row.representative.assign(rep.labels().begin(), rep.labels().end());
            }
        }
        for (auto &[p, row] : by_period) table.rows.push_back(std::move(row));
    }
    return table;
}

GaplessOrbitTable build_gapless_table(const Poset &poset, const EngineOptions &options) {
    return summarize_census(poset, build_gapless_census(poset, options));
}

std::string table_to_json(const GaplessOrbitTable &table) {
    nlohmann::json j;
    j["schema"] = "gapless-table/1";
    j["poset"] = table.poset_name;
    std::ostringstream digest;
    digest << std::hex << std::setw(16) << std::setfill('0') << table.poset_digest;
    j["poset_digest"] = digest.str();
    j["total"] = table.total();
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &r : table.rows)
        rows.push_back({{"m_T", r.ceiling}, {"tau", r.period}, {"N", r.orbits}, {"representative", r.representative}});
    j["rows"] = rows;
    return j.dump() + "\n";
}

GaplessOrbitTable table_from_json(const std::string &text) {
    try {
        auto j = nlohmann::json::parse(text);
        GaplessOrbitTable t;
        t.poset_name = j.value("poset", "");
        t.poset_digest = std::stoull(j.value("poset_digest", "0"), nullptr, 16);
        for (const auto &r : j.at("rows")) {
            GaplessRow row;
            row.ceiling = r.at("m_T").get<int>();
            row.period = r.at("tau").get<std::uint64_t>();
            row.orbits = r.at("N").get<std::uint64_t>();
            if (r.contains("representative")) row.representative = r.at("representative").get<std::vector<Label>>();
            t.rows.push_back(std::move(row));
        }
        return t;
    } catch (const std::exception &e) {
        throw ValidationError(std::string("gapless table JSON: ") + e.what());
    }
}

GaplessOrbitTable load_or_build_table(const Poset &poset, const std::string &cache_dir, const EngineOptions &options) {
    if (cache_dir.empty()) return build_gapless_table(poset, options);
    std::ostringstream name;
    name << "gapless-" << std::hex << std::setw(16) << std::setfill('0') << poset_digest(poset) << ".json";
    const std::filesystem::path path = std::filesystem::path(cache_dir) / name.str();
    if (std::ifstream in(path); in) {
        std::stringstream ss;
        ss << in.rdbuf();
        auto table = table_from_json(ss.str());
        if (table.poset_digest == poset_digest(poset)) {
            table.poset_name = poset.family().name();
            return table;
        }
    }
    auto table = build_gapless_table(poset, options);
    std::filesystem::create_directories(cache_dir);
    std::ofstream out(path);
    out << table_to_json(table);
    return table;
}

std::uint64_t period_formula(std::uint64_t m, std::uint64_t m_t, std::uint64_t tau, std::uint64_t ell) {
    if (m == 0 || ell == 0 || tau == 0) throw ParameterError("period formula needs positive m, tau, ell");
    if (m % ell != 0) throw ParameterError("content period must divide m");
    if ((ell * m_t) % m != 0) throw ParameterError("no content vector of period ell has m_T ones (m does not divide ell*m_T)");
    const std::uint64_t ones_per_block = ell * m_t / m;
    return ell * tau / std::gcd(ones_per_block, tau);
}

BigInt exact_period_vector_count(std::uint64_t m, std::uint64_t n, std::uint64_t e) {
    if (m == 0 || e == 0 || m % e != 0 || n > m) return 0;
    BigInt total = 0;
    for (std::uint64_t sub : divisors(e)) {
        const int mu = mobius(e / sub);
        if (mu == 0 || (n * sub) % m != 0) continue;
        // Vectors fixed by rotation through `sub` are determined by their first `sub` entries.
        BigInt at_most = binomial(sub, n * sub / m);
        total += mu > 0 ? at_most : BigInt(-at_most);
    }
    return total;
}

std::pair<GaplessTableau, ContentVector> k_map(const Poset &poset, const GaplessTableau &s, const ContentVector &v) {
    if (v.popcount() != static_cast<std::size_t>(s.ceiling()))
        throw ParameterError("content vector popcount does not match the gapless ceiling");
    if (v.size() > 0 && v[0]) return {GaplessTableau(promotion(poset, s)), v.rotated()};
    return {s, v.rotated()};
}

BigInt count_fixed(const GaplessOrbitTable &table, std::uint64_t m, std::uint64_t j) {
    if (m == 0 || j == 0) throw ParameterError("count_fixed needs m >= 1 and j >= 1");
    BigInt total = 0;
    for (const auto &row : table.rows) {
        const auto m_t = static_cast<std::uint64_t>(row.ceiling);
        if (m_t > m) continue;
        BigInt per_tableau = 0;
        for (std::uint64_t e : divisors(m)) {
            if ((e * m_t) % m != 0) continue;
            if (j % period_formula(m, m_t, row.period, e) != 0) continue;
            per_tableau += exact_period_vector_count(m, m_t, e);
        }
        total += per_tableau * BigInt(static_cast<unsigned long>(row.period * row.orbits));
    }
    return total;
}

PeriodReport promotion_order(const Poset &poset, const GaplessOrbitTable &table, std::uint64_t m) {
    PeriodReport report;
    report.m = m;
    if (m == 0) return report;
    std::uint64_t best = 0;
    const GaplessRow *best_row = nullptr;
    std::uint64_t best_e = 0;
    for (const auto &row : table.rows) {
        const auto m_t = static_cast<std::uint64_t>(row.ceiling);
        if (m_t > m) continue;
        for (std::uint64_t e : divisors(m)) {
            if ((e * m_t) % m != 0 || exact_period_vector_count(m, m_t, e) == 0) continue;
            const std::uint64_t h = period_formula(m, m_t, row.period, e);
            report.period = std::lcm(report.period, h);
            if (h > best) {
                best = h;
                best_row = &row;
                best_e = e;
            }
        }
    }
    if (best_row && best == report.period && !best_row->representative.empty()) {
        // Block 1^b 0^(e-b) has exact period e whenever 0 < b < e; b = e forces e = 1.
        const std::uint64_t b = best_e * static_cast<std::uint64_t>(best_row->ceiling) / m;
        std::vector<std::uint8_t> bits;
        for (std::uint64_t rep = 0; rep < m / best_e; ++rep)
            for (std::uint64_t i = 0; i < best_e; ++i) bits.push_back(i < b ? 1 : 0);
        GaplessTableau s(IncreasingTableau(poset, best_row->representative, best_row->ceiling));
        report.witness = inflate(s, ContentVector(std::move(bits)));
    }
    return report;
}

CspVerdict verify_csp(const Poset &poset, std::size_t k, const GaplessOrbitTable &table, const CspOptions &options) {
    if (!poset.family().is_minuscule()) throw UnsupportedError("cyclic sieving check needs a built-in minuscule poset");
    if (table.poset_digest != 0 && table.poset_digest != poset_digest(poset))
        throw ParameterError("gapless table was built for a different poset");

    CspVerdict v;
    v.poset = poset.family().name();
    v.k = k;
    v.m = k + static_cast<std::uint64_t>(poset.rank()) + 1;
    v.n = promotion_order(poset, table, v.m).period;
    const QPolynomial f = gaussian_f(poset, k);
    v.state_count = f.at_one();

    std::optional<OrbitSummary> psi;
    if (v.state_count <= BigInt(static_cast<unsigned long>(options.psi_recount_cap)))
        psi = psi_orbits(poset, k, {options.psi_recount_cap, options.threads});

    v.holds = true;
    for (std::uint64_t d = 1; d <= v.n; ++d) {
        CspRecord r;
        r.d = d;
        r.fixed_count = count_fixed(table, v.m, std::gcd(d, v.n));
        r.polynomial_value = eval_at_root(f, v.n, d);
        r.match = equals_at_root(f, v.n, d, r.fixed_count);
        if (psi) r.psi_fixed = psi->fixed_by_power(d);
        v.holds = v.holds && r.match;
        v.records.push_back(std::move(r));
    }
    if (psi) {
        bool agrees = BigInt(static_cast<unsigned long>(psi->total_states)) == v.state_count;
        for (const auto &r : v.records) agrees = agrees && BigInt(static_cast<unsigned long>(*r.psi_fixed)) == r.fixed_count;
        v.psi_recount_agrees = agrees;
    }
    return v;
}

std::vector<Element> maximal_tree_ideal(const Poset &poset) {
    // x belongs iff every element of its principal ideal has at most one lower cover.
    std::vector<bool> ok(poset.size(), false);
    for (Element x : poset.linear_extension()) {
        bool good = poset.lower_covers(x).size() <= 1;
        for (Element y : poset.lower_covers(x)) good = good && ok[y];
        ok[x] = good;
    }
    std::vector<Element> out;
    for (Element x = 0; x < poset.size(); ++x)
        if (ok[x]) out.push_back(x);
    return out;
}

std::vector<Element> maximal_dual_tree_filter(const Poset &poset) {
    std::vector<bool> ok(poset.size(), false);
    const auto order = poset.linear_extension();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        bool good = poset.upper_covers(*it).size() <= 1;
        for (Element y : poset.upper_covers(*it)) good = good && ok[y];
        ok[*it] = good;
    }
    std::vector<Element> out;
    for (Element x = 0; x < poset.size(); ++x)
        if (ok[x]) out.push_back(x);
    return out;
}

FrameReport frame_check(const Poset &poset, const GaplessCensus &census) {
    FrameReport report;
    report.tree_ideal = maximal_tree_ideal(poset);
    report.dual_tree_filter = maximal_dual_tree_filter(poset);
    std::set_union(report.tree_ideal.begin(), report.tree_ideal.end(), report.dual_tree_filter.begin(),
                   report.dual_tree_filter.end(), std::back_inserter(report.frame));

    std::vector<bool> stable(poset.size(), true);
    for (const auto &level : census.levels) {
        const auto shift = static_cast<std::size_t>(level.ceiling);
        for (const auto &cycle : level.cycles) {
            const std::size_t tau = cycle.size();
            if (shift % tau == 0) continue;
            for (std::size_t i = 0; i < tau; ++i) {
                const auto &u = level.tableaux[cycle[i]];
                const auto &w = level.tableaux[cycle[(i + shift) % tau]];
                for (Element x = 0; x < poset.size(); ++x)
                    if (u.labels()[x] != w.labels()[x]) stable[x] = false;
            }
        }
    }
    for (Element x = 0; x < poset.size(); ++x)
        if (stable[x]) report.stable.push_back(x);
    report.agree = report.stable == report.frame;
    return report;
}

} // namespace minuscule
