#pragma once

// Multi-run experiments: every configured algorithm runs `run_count` times on
// one problem with seeds base_seed, base_seed + 1, ...; the first algorithm is
// then compared against each of the others.
//
// Config document:
//   {
//     "problem": "tf1" | ... | "tf9" | "acs",
//     "instance": "path/to/instance.json",     // acs only, relative to the config
//     "coverage": "global" | "per-student",     // acs only, default global
//     "priority_limits": false,                 // acs only
//     "algorithms": [{"name": "MWO", "variant": "mwo" | "wo",
//                     "population": 30, "iterations": 500,
//                     "composition": "exclusive" | "sequential"}],
//     "run_count": 30,
//     "base_seed": 1,
//     "out": "results/tf1"
//   }
// MWO_OUT_DIR, when set, replaces "out".

#include "mwo/acs.hpp"
#include "mwo/benchmarks.hpp"
#include "mwo/io.hpp"
#include "mwo/optimizer.hpp"
#include "mwo/stats.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mwo {

struct AlgorithmSpec {
    std::string name;
    std::string variant = "mwo"; // "mwo" or "wo"
    int population = 30;
    int iterations = 500;
    UpdateComposition composition = UpdateComposition::Exclusive;
};

struct Campaign {
    std::string problem; // "tf1".."tf9" or "acs"
    std::filesystem::path instance_path;
    AcsSolveOptions acs;
    std::vector<AlgorithmSpec> algorithms;
    int run_count = 30;
    std::uint64_t base_seed = 1;
    std::filesystem::path out_dir = "results";
};

/// Parses and checks a config. Relative instance paths resolve against
/// `base_dir`. Throws std::runtime_error on a malformed or invalid config.
Campaign campaign_from_json(const Json& doc, const std::filesystem::path& base_dir = {});
Campaign load_campaign(const std::filesystem::path& path);
Json to_json(const Campaign& campaign);

/// Optimizer config of one run.
OptimizerConfig make_config(const AlgorithmSpec& spec, std::uint64_t seed);

struct AlgorithmRuns {
    std::string name;
    std::vector<RunRecord> records; // in seed order
};

struct CampaignResult {
    std::string problem;
    std::vector<AlgorithmRuns> groups; // in config order
};

/// Runs every algorithm `run_count` times. Throws on an invalid config or an
/// unloadable instance.
CampaignResult run_campaign(const Campaign& campaign);

struct ComparisonRow {
    std::string problem;
    std::string algorithm_a;
    std::string algorithm_b;
    Summary a;
    Summary b;
    RankSumResult test;
};

std::vector<double> final_fitness(const AlgorithmRuns& runs);

/// Summary of each group, in group order.
std::vector<Summary> summarize(const CampaignResult& result);

/// First group against each later group.
std::vector<ComparisonRow> compare(const CampaignResult& result);

/// "3.02E-11"; NaN prints as "NaN".
std::string format_p_value(double p);

std::string results_csv(const CampaignResult& result);
std::string summary_csv(const CampaignResult& result);
std::string wilcoxon_csv(const std::vector<ComparisonRow>& rows);
std::string trace_csv(const RunRecord& record);

/// Writes results.csv, summary.csv, wilcoxon.csv and traces/<algorithm>_<seed>.csv.
void export_results(const CampaignResult& result, const std::vector<ComparisonRow>& rows,
                    const std::filesystem::path& out_dir);

/// Writes each group's records to runs/<algorithm>.json.
void persist_runs(const CampaignResult& result, const std::filesystem::path& out_dir);

/// Output directory after the MWO_OUT_DIR override.
std::filesystem::path resolve_out_dir(const Campaign& campaign);

/// Run, persist, compare and export. Returns the comparisons.
std::vector<ComparisonRow> execute_campaign(const Campaign& campaign);

/// Rebuilds groups (final fitness and run metadata only, no traces) from a
/// results.csv written by export_results.
CampaignResult parse_results_csv(const std::string& text, const std::string& problem = {});

/// Re-reads DIR/results.csv, rewrites summary.csv and wilcoxon.csv there and
/// returns the comparisons.
std::vector<ComparisonRow> compare_directory(const std::filesystem::path& dir);

} // namespace mwo
