#include "minuscule/minuscule.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <string>

#include <json.hpp>

#include "errors.hpp"
#include "report.hpp"

#ifndef MINUSCULE_GOLDEN_DIR
#define MINUSCULE_GOLDEN_DIR "tests/fixtures/golden"
#endif

struct mn_poset {
    minuscule::Poset poset;
};

struct mn_table {
    minuscule::GaplessOrbitTable table;
};

namespace {

thread_local std::string g_last_error;

char *dup(const std::string &s) {
    char *p = static_cast<char *>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

minuscule::Format to_format(mn_format f) {
    switch (f) {
    case MN_FORMAT_JSON: return minuscule::Format::Json;
    case MN_FORMAT_CSV: return minuscule::Format::Csv;
    default: return minuscule::Format::Text;
    }
}

template <class F> mn_status guard(F &&f) {
    try {
        f();
        g_last_error.clear();
        return MN_OK;
    } catch (const minuscule::ParameterError &e) {
        g_last_error = e.what();
        return MN_ERR_PARAMETER;
    } catch (const minuscule::ValidationError &e) {
        g_last_error = e.what();
        return MN_ERR_VALIDATION;
    } catch (const minuscule::UnsupportedError &e) {
        g_last_error = e.what();
        return MN_ERR_UNSUPPORTED;
    } catch (const minuscule::ResourceError &e) {
        g_last_error = e.what();
        return MN_ERR_RESOURCE;
    } catch (const minuscule::InvariantError &e) {
        g_last_error = e.what();
        return MN_ERR_INVARIANT;
    } catch (const std::filesystem::filesystem_error &e) {
        g_last_error = e.what();
        return MN_ERR_IO;
    } catch (const nlohmann::json::exception &e) {
        g_last_error = e.what();
        return MN_ERR_VALIDATION;
    } catch (const std::bad_alloc &) {
        g_last_error = "out of memory";
        return MN_ERR_RESOURCE;
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return MN_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return MN_ERR_INTERNAL;
    }
}

void require(const void *p, const char *what) {
    if (!p) throw minuscule::ParameterError(std::string(what) + " must not be NULL");
}

} // namespace

extern "C" {

const char *mn_version(void) { return "1.0.0"; }

const char *mn_last_error_message(void) { return g_last_error.c_str(); }

void mn_string_free(char *s) { std::free(s); }

mn_status mn_format_parse(const char *text, mn_format *out) {
    return guard([&] {
        require(text, "text");
        require(out, "out");
        switch (minuscule::parse_format(text)) {
        case minuscule::Format::Json: *out = MN_FORMAT_JSON; break;
        case minuscule::Format::Csv: *out = MN_FORMAT_CSV; break;
        case minuscule::Format::Text: *out = MN_FORMAT_TEXT; break;
        }
    });
}

mn_status mn_poset_load(const char *family, mn_poset **out) {
    return guard([&] {
        require(family, "family");
        require(out, "out");
        *out = new mn_poset{minuscule::load_poset(minuscule::parse_family(family))};
    });
}

void mn_poset_free(mn_poset *poset) { delete poset; }

size_t mn_poset_size(const mn_poset *poset) { return poset ? poset->poset.size() : 0; }

int mn_poset_rank(const mn_poset *poset) { return poset ? poset->poset.rank() : -1; }

mn_status mn_poset_name(const mn_poset *poset, char **out) {
    return guard([&] {
        require(poset, "poset");
        require(out, "out");
        *out = dup(poset->poset.family().name());
    });
}

mn_status mn_poset_to_json(const mn_poset *poset, char **out) {
    return guard([&] {
        require(poset, "poset");
        require(out, "out");
        *out = dup(minuscule::poset_to_json(poset->poset));
    });
}

mn_status mn_rowmotion_orbits(const mn_poset *poset, size_t k, uint64_t state_cap, unsigned threads, mn_format format,
                              uint64_t *states, char **out) {
    return guard([&] {
        require(poset, "poset");
        require(out, "out");
        const auto s = minuscule::psi_orbits(poset->poset, k, {state_cap, threads});
        if (states) *states = s.total_states;
        *out = dup(minuscule::emit_orbits(poset->poset.family().name(), k, s, to_format(format)));
    });
}

mn_status mn_qpoly(const mn_poset *poset, size_t k, mn_format format, char **out) {
    return guard([&] {
        require(poset, "poset");
        require(out, "out");
        const auto f = minuscule::gaussian_f(poset->poset, k);
        *out = dup(minuscule::emit_polynomial(poset->poset.family().name(), k, f, to_format(format)));
    });
}

mn_status mn_gapless_table_build(const mn_poset *poset, const char *cache_dir, uint64_t gapless_cap, unsigned threads,
                                 mn_table **out) {
    return guard([&] {
        require(poset, "poset");
        require(out, "out");
        *out = new mn_table{
            minuscule::load_or_build_table(poset->poset, cache_dir ? cache_dir : "", {threads, gapless_cap})};
    });
}

mn_status mn_gapless_table_from_json(const char *json, mn_table **out) {
    return guard([&] {
        require(json, "json");
        require(out, "out");
        *out = new mn_table{minuscule::table_from_json(json)};
    });
}

void mn_table_free(mn_table *table) { delete table; }

size_t mn_table_row_count(const mn_table *table) { return table ? table->table.rows.size() : 0; }

mn_status mn_table_row(const mn_table *table, size_t index, int *ceiling, uint64_t *period, uint64_t *orbits) {
    return guard([&] {
        require(table, "table");
        if (index >= table->table.rows.size()) throw minuscule::ParameterError("table row index out of range");
        const auto &r = table->table.rows[index];
        if (ceiling) *ceiling = r.ceiling;
        if (period) *period = r.period;
        if (orbits) *orbits = r.orbits;
    });
}

uint64_t mn_table_total(const mn_table *table) { return table ? table->table.total() : 0; }

mn_status mn_table_render(const mn_table *table, mn_format format, char **out) {
    return guard([&] {
        require(table, "table");
        require(out, "out");
        *out = dup(minuscule::emit_table(table->table, to_format(format)));
    });
}

mn_status mn_count_fixed(const mn_table *table, uint64_t m, uint64_t j, char **out) {
    return guard([&] {
        require(table, "table");
        require(out, "out");
        *out = dup(minuscule::count_fixed(table->table, m, j).get_str());
    });
}

mn_status mn_verify_csp(const mn_poset *poset, const mn_table *table, size_t k, uint64_t psi_recount_cap,
                        unsigned threads, mn_format format, int *holds, char **out) {
    return guard([&] {
        require(poset, "poset");
        require(table, "table");
        require(out, "out");
        const auto v = minuscule::verify_csp(poset->poset, k, table->table, {psi_recount_cap, threads});
        if (holds) *holds = v.holds ? 1 : 0;
        *out = dup(minuscule::emit_verdict(v, to_format(format)));
    });
}

mn_status mn_promotion_order(const mn_poset *poset, const mn_table *table, uint64_t m, mn_format format,
                             uint64_t *period, char **out) {
    return guard([&] {
        require(poset, "poset");
        require(table, "table");
        require(out, "out");
        const auto r = minuscule::promotion_order(poset->poset, table->table, m);
        if (period) *period = r.period;
        *out = dup(minuscule::emit_period(poset->poset.family().name(), poset->poset, r, to_format(format)));
    });
}

mn_status mn_frame_check(const mn_poset *poset, uint64_t gapless_cap, unsigned threads, mn_format format, int *agree,
                         char **out) {
    return guard([&] {
        require(poset, "poset");
        require(out, "out");
        const auto census = minuscule::build_gapless_census(poset->poset, {threads, gapless_cap});
        const auto r = minuscule::frame_check(poset->poset, census);
        if (agree) *agree = r.agree ? 1 : 0;
        *out = dup(minuscule::emit_frame(poset->poset, r, to_format(format)));
    });
}

mn_status mn_reproduce(const char *golden_dir, const char *cache_dir, unsigned threads, mn_format format,
                       int *all_pass, char **out) {
    return guard([&] {
        require(out, "out");
        minuscule::ReproduceOptions o;
        o.golden_dir = golden_dir && *golden_dir ? golden_dir : MINUSCULE_GOLDEN_DIR;
        o.cache_dir = cache_dir ? cache_dir : "";
        o.threads = threads;
        const auto r = minuscule::run_reproduction(o);
        if (all_pass) *all_pass = r.all_pass() ? 1 : 0;
        *out = dup(minuscule::emit_reproduce(r, to_format(format)));
    });
}

mn_status mn_manifest(const char *subcommand, const char *parameters_json, double wall_seconds, uint64_t states,
                      uint64_t state_cap, const char *output, char **out) {
    return guard([&] {
        require(subcommand, "subcommand");
        require(out, "out");
        minuscule::RunManifest m;
        m.subcommand = subcommand;
        if (parameters_json && *parameters_json) {
            const auto j = nlohmann::json::parse(parameters_json);
            if (!j.is_object()) throw minuscule::ParameterError("manifest parameters must be a JSON object");
            for (const auto &[key, value] : j.items())
                m.parameters[key] = value.is_string() ? value.get<std::string>() : value.dump();
        }
        m.wall_seconds = wall_seconds;
        if (states) m.state_counts["states"] = states;
        m.caps["state_cap"] = state_cap;
        m.output_digest = minuscule::fnv1a64(output ? output : "");
        *out = dup(minuscule::manifest_to_json(m));
    });
}

} // extern "C"
