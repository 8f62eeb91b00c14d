#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ideal_dynamics.hpp"
#include "orbit_engine.hpp"

namespace minuscule {

enum class Format { Text, Json, Csv };

Format parse_format(const std::string &text);

// All emitters produce canonical, newline-terminated output.
std::string emit_table(const GaplessOrbitTable &table, Format format);
std::string emit_verdict(const CspVerdict &verdict, Format format);
std::string emit_period(const std::string &poset, const Poset &shape, const PeriodReport &report, Format format);
std::string emit_frame(const Poset &poset, const FrameReport &report, Format format);
std::string emit_orbits(const std::string &poset, std::size_t k, const OrbitSummary &summary, Format format);
std::string emit_polynomial(const std::string &poset, std::size_t k, const QPolynomial &f, Format format);

std::uint64_t fnv1a64(const std::string &bytes);

struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> parameters;
    double wall_seconds = 0;
    std::map<std::string, std::uint64_t> state_counts;
    std::map<std::string, std::uint64_t> caps;
    std::uint64_t output_digest = 0;
};

std::string manifest_to_json(const RunManifest &manifest);

struct ReproduceOptions {
    std::string golden_dir;
    std::string cache_dir;
    unsigned threads = 1;
};

struct ReproduceItem {
    std::string name;
    bool pass = false;
    std::string detail;  // diff or summary
    std::vector<std::string> operations;
};

struct ReproduceReport {
    std::vector<ReproduceItem> items;
    bool all_pass() const;
    std::vector<std::string> operations() const;  // sorted union over items
};

// Public operations of every module, in the spelling used by ReproduceItem::operations.
const std::vector<std::string> &public_operations();

ReproduceReport run_reproduction(const ReproduceOptions &options);
std::string emit_reproduce(const ReproduceReport &report, Format format);

} // namespace minuscule
