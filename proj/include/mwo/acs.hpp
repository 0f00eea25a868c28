#pragma once

// Runs the optimizer on an ACS instance.
//
// With global coverage the objective couples every student through the
// shared concept union, so one run searches the whole Ts x Tm position.
// With per-student coverage the objective is a sum of independent row terms;
// the solver then runs one optimizer per student row (dimension Tm) and
// concatenates the row optima, which minimises the sum exactly as well as
// each row run does. A joint run over 30 rows rarely survives the missing
// concept penalty on every row at once, so the split matters in practice.

#include "mwo/objective.hpp"
#include "mwo/optimizer.hpp"

#include <cstdint>

namespace mwo {

enum class AcsStrategy {
    Auto,  // split by row when coverage is per student
    Joint, // always one run over the full matrix
    Rows,  // always one run per student row (requires per-student coverage)
};

struct AcsSolveOptions {
    ObjectiveOptions objective;
    AcsStrategy strategy = AcsStrategy::Auto;
};

/// Seed of the run for `row` when a solve is split by row.
std::uint64_t row_seed(std::uint64_t seed, int row);

/// Optimizes the selection for `instance`. The config's bounds are replaced
/// by the unit box. In a split solve the trace is the per-iteration sum of the
/// row traces, the evaluation count sums row evaluations and the last
/// improvement is the latest among rows. Throws std::invalid_argument for the
/// row strategy with global coverage.
RunRecord optimize_acs(const AcsInstance& instance, OptimizerConfig config, const AcsSolveOptions& options = {});

} // namespace mwo
