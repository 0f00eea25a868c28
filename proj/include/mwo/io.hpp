#pragma once

// JSON and CSV persistence.
//
// Instance document (all ids zero-based):
//   {
//     "students":  [{"id", "required_concepts": [..], "ability",
//                    "time_lower", "time_upper", "style": [4 reals]}],
//     "materials": [{"id", "concepts": [..], "difficulty", "duration",
//                    "style": [4 reals]}],
//     "graph": {"concept_count", "prerequisites": [{"from", "to", "strength"}],
//               "importance": {"<material id>": weight}},
//     "penalties": {"redundant", "missing", "time"},
//     "weights": {"coverage", "time", "style"},
//     "priority_limits": {"high", "medium", "challenging"}
//   }
// "penalties", "weights" and "priority_limits" may be omitted and then take
// their defaults.

#include "mwo/core_model.hpp"
#include "mwo/objective.hpp"
#include "mwo/optimizer.hpp"
#include "mwo/sequencer.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace mwo {

using Json = nlohmann::json;

Json to_json(const AcsInstance& instance);

/// Throws std::runtime_error naming the offending field on malformed input.
AcsInstance instance_from_json(const Json& doc);

void save_instance(const std::filesystem::path& path, const AcsInstance& instance);
AcsInstance load_instance(const std::filesystem::path& path);

const char* to_string(UpdateComposition c);

Json to_json(const OptimizerConfig& config);
OptimizerConfig config_from_json(const Json& doc);

/// `problem` names what was optimized ("tf1", "acs", ...); `breakdown` is
/// attached for ACS runs.
Json to_json(const RunRecord& record, const std::string& problem = {},
             const std::optional<FitnessBreakdown>& breakdown = std::nullopt);
RunRecord run_record_from_json(const Json& doc);

void save_run(const std::filesystem::path& path, const RunRecord& record, const std::string& problem = {},
              const std::optional<FitnessBreakdown>& breakdown = std::nullopt);
RunRecord load_run(const std::filesystem::path& path);

/// {"students": [{"student", "sequence": [...], "metrics": {...}}]}
Json sequence_report(const std::vector<LearningSequence>& sequences, const std::vector<SequenceMetrics>& metrics);

/// student,position,material,difficulty rows for plotting.
std::string sequence_csv(const std::vector<LearningSequence>& sequences, const AcsInstance& instance);

/// Shortest round-trip formatting ("%.17g").
std::string format_double(double value);

/// Creates missing parent directories. Throws std::runtime_error on failure.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

Json read_json(const std::filesystem::path& path);

} // namespace mwo
