// Command-line front end; talks to the library only through the C API.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "minuscule/minuscule.h"

namespace {

enum Exit { kPass = 0, kMismatch = 1, kResource = 2, kBadInput = 3 };

struct Settings {
    std::string poset = "cayley-moufang";
    std::size_t k = 1;
    std::uint64_t m = 0;
    std::string format = "text";
    bool json = false;
    unsigned threads = 0;
    std::string cache_dir;
    std::string golden_dir;
    std::string manifest;
    std::uint64_t state_cap = 10'000'000;
    std::uint64_t gapless_cap = 50'000'000;
    std::uint64_t psi_cap = 1'000'000;
};

struct Failure {
    int code;
};

int exit_code(mn_status s) {
    switch (s) {
    case MN_OK: return kPass;
    case MN_ERR_RESOURCE: return kResource;
    case MN_ERR_PARAMETER:
    case MN_ERR_VALIDATION:
    case MN_ERR_UNSUPPORTED:
    case MN_ERR_IO: return kBadInput;
    default: return kMismatch;
    }
}

void check(mn_status s) {
    if (s == MN_OK) return;
    std::cerr << "error: " << mn_last_error_message() << '\n';
    throw Failure{exit_code(s)};
}

using PosetPtr = std::unique_ptr<mn_poset, decltype(&mn_poset_free)>;
using TablePtr = std::unique_ptr<mn_table, decltype(&mn_table_free)>;

struct Text {
    char *p = nullptr;
    ~Text() { mn_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

PosetPtr load(const Settings &s) {
    mn_poset *p = nullptr;
    check(mn_poset_load(s.poset.c_str(), &p));
    return PosetPtr(p, mn_poset_free);
}

TablePtr table_for(const Settings &s, const mn_poset *p) {
    mn_table *t = nullptr;
    check(mn_gapless_table_build(p, s.cache_dir.c_str(), s.gapless_cap, s.threads, &t));
    return TablePtr(t, mn_table_free);
}

mn_format format_of(const Settings &s) {
    mn_format f = MN_FORMAT_TEXT;
    check(mn_format_parse(s.json ? "json" : s.format.c_str(), &f));
    return f;
}

class Run {
public:
    Run(const Settings &s, std::string name) : s_(s), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}

    int finish(const std::string &output, bool pass, std::uint64_t states = 0) {
        std::cout << output;
        std::cout.flush();
        if (!s_.manifest.empty()) {
            nlohmann::json params = {{"poset", s_.poset}, {"k", s_.k}, {"m", s_.m}, {"format", s_.json ? "json" : s_.format}};
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
            Text m;
            check(mn_manifest(name_.c_str(), params.dump().c_str(), secs, states, s_.state_cap, output.c_str(), &m.p));
            std::ofstream out(s_.manifest);
            if (!out) {
                std::cerr << "error: cannot write manifest " << s_.manifest << '\n';
                return kBadInput;
            }
            out << m.str();
        }
        return pass ? kPass : kMismatch;
    }

private:
    const Settings &s_;
    std::string name_;
    std::chrono::steady_clock::time_point start_;
};

int rowmotion_orbits(const Settings &s) {
    Run run(s, "rowmotion-orbits");
    auto p = load(s);
    Text out;
    std::uint64_t states = 0;
    check(mn_rowmotion_orbits(p.get(), s.k, s.state_cap, s.threads, format_of(s), &states, &out.p));
    return run.finish(out.str(), true, states);
}

int qpoly(const Settings &s) {
    Run run(s, "qpoly");
    auto p = load(s);
    Text out;
    check(mn_qpoly(p.get(), s.k, format_of(s), &out.p));
    return run.finish(out.str(), true);
}

int gapless_table(const Settings &s) {
    Run run(s, "gapless-table");
    auto p = load(s);
    auto t = table_for(s, p.get());
    Text out;
    check(mn_table_render(t.get(), format_of(s), &out.p));
    return run.finish(out.str(), true, mn_table_total(t.get()));
}

int verify_csp(const Settings &s) {
    Run run(s, "verify-csp");
    auto p = load(s);
    auto t = table_for(s, p.get());
    Text out;
    int holds = 0;
    check(mn_verify_csp(p.get(), t.get(), s.k, s.psi_cap, s.threads, format_of(s), &holds, &out.p));
    return run.finish(out.str(), holds != 0);
}

int period(const Settings &s) {
    Run run(s, "period");
    auto p = load(s);
    auto t = table_for(s, p.get());
    Text out;
    std::uint64_t n = 0;
    check(mn_promotion_order(p.get(), t.get(), s.m, format_of(s), &n, &out.p));
    return run.finish(out.str(), true);
}

int frame_check(const Settings &s) {
    Run run(s, "frame-check");
    auto p = load(s);
    Text out;
    int agree = 0;
    check(mn_frame_check(p.get(), s.gapless_cap, s.threads, format_of(s), &agree, &out.p));
    return run.finish(out.str(), agree != 0);
}

int reproduce(const Settings &s) {
    Run run(s, "reproduce");
    Text out;
    int pass = 0;
    check(mn_reproduce(s.golden_dir.empty() ? nullptr : s.golden_dir.c_str(), s.cache_dir.c_str(), s.threads,
                       format_of(s), &pass, &out.p));
    return run.finish(out.str(), pass != 0);
}

} // namespace

int main(int argc, char **argv) {
    Settings s;
    CLI::App app{"Rowmotion, K-promotion and cyclic sieving on minuscule posets"};
    app.set_version_flag("--version", std::string(mn_version()));
    app.require_subcommand(1);

    app.add_option("--threads", s.threads, "Worker threads (0 = all cores)");
    app.add_option("--cache-dir", s.cache_dir, "Directory for cached gapless tables");
    app.add_option("--state-cap", s.state_cap, "Maximum number of states to enumerate")->envname("MINUSCULE_STATE_CAP");
    app.add_option("--gapless-cap", s.gapless_cap, "Maximum number of gapless tableaux to enumerate");
    app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--manifest", s.manifest, "Write a JSON run manifest to this file");

    const std::string poset_help =
        "cayley-moufang | freudenthal | propeller:N | rectangle:AxB | staircase:N | path to poset JSON";
    auto format_opt = [&](CLI::App *sub) {
        sub->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    };

    auto *orbits = app.add_subcommand("rowmotion-orbits", "Rowmotion orbit multiset on plane partitions of height <= k");
    orbits->add_option("--poset", s.poset, poset_help);
    orbits->add_option("--k", s.k, "Height bound")->check(CLI::NonNegativeNumber);
    format_opt(orbits);

    auto *q = app.add_subcommand("qpoly", "Generating polynomial of plane partitions of height <= k");
    q->add_option("--poset", s.poset, poset_help);
    q->add_option("--k", s.k, "Height bound")->check(CLI::NonNegativeNumber);
    format_opt(q);

    auto *table = app.add_subcommand("gapless-table", "Promotion orbit table of gapless tableaux (m_T, tau, N)");
    table->add_option("--poset", s.poset, poset_help);
    format_opt(table);

    auto *csp = app.add_subcommand("verify-csp", "Check the cyclic sieving phenomenon for rowmotion at height k");
    csp->add_option("--poset", s.poset, poset_help);
    csp->add_option("--k", s.k, "Height bound")->check(CLI::NonNegativeNumber);
    csp->add_option("--psi-cap", s.psi_cap, "Brute-force rowmotion recount when the state count is at most this");
    csp->add_flag("--json", s.json, "Emit JSON");
    format_opt(csp);

    auto *per = app.add_subcommand("period", "Order of promotion on increasing tableaux with ceiling m");
    per->add_option("--poset", s.poset, poset_help);
    per->add_option("--m", s.m, "Label ceiling")->required()->check(CLI::PositiveNumber);
    format_opt(per);

    auto *frame = app.add_subcommand("frame-check", "Compare the frame with the boxes fixed by promotion");
    auto *frame_poset = frame->add_option("--poset", s.poset, poset_help + " (default freudenthal)");
    format_opt(frame);

    auto *repro = app.add_subcommand("reproduce", "Run every reproduction item against the golden files");
    repro->add_option("--golden-dir", s.golden_dir, "Directory holding the golden files");
    format_opt(repro);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kBadInput;
    }

    try {
        if (*orbits) return rowmotion_orbits(s);
        if (*q) return qpoly(s);
        if (*table) return gapless_table(s);
        if (*csp) return verify_csp(s);
        if (*per) return period(s);
        if (*frame) {
            if (frame_poset->count() == 0) s.poset = "freudenthal";
            return frame_check(s);
        }
        if (*repro) return reproduce(s);
    } catch (const Failure &f) {
        return f.code;
    }
    return kBadInput;
}
