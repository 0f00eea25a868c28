#pragma once

// Penalty-based fitness of a material selection:
//   F = w1 * O1 + w2 * O2 + w3 * O3
// O1 penalises redundant and missing concepts, O2 counts students whose
// selected study time falls outside their window (optionally also those over
// a class cap), O3 sums learning-style
// distances between each student and the materials selected for them.

#include "mwo/core_model.hpp"

#include <span>

namespace mwo {

enum class CoverageMode {
    Global,     // R is the union over every student's selection, E over every requirement
    PerStudent, // each student's row is charged against that student's own requirements
};

struct ObjectiveOptions {
    CoverageMode coverage = CoverageMode::Global;
    /// When set, a student whose selection holds more high, medium or
    /// challenging materials than the instance caps allow is charged the time
    /// penalty as well, so O2 counts both kinds of per-student violation.
    bool enforce_priority_limits = false;
};

struct FitnessBreakdown {
    double o1 = 0.0; // coverage
    double o2 = 0.0; // time windows
    double o3 = 0.0; // style mismatch
    double total = 0.0;
};

/// Concepts carried by any selected material (R). Throws on dimension mismatch.
ConceptSet covered_concepts(const SelectionMatrix& selection, const AcsInstance& instance);

/// Union of every student's required concepts (E).
ConceptSet required_concepts(const AcsInstance& instance);

double coverage_penalty(const SelectionMatrix& selection, const AcsInstance& instance,
                        const ObjectiveOptions& options = {});
double time_penalty(const SelectionMatrix& selection, const AcsInstance& instance,
                    const ObjectiveOptions& options = {});

/// True if the student's row exceeds any of the per-class caps.
bool exceeds_priority_limits(const SelectionMatrix& selection, const AcsInstance& instance, int student);
double style_penalty(const SelectionMatrix& selection, const AcsInstance& instance);

FitnessBreakdown evaluate_selection(const SelectionMatrix& selection, const AcsInstance& instance,
                                    const ObjectiveOptions& options = {});

/// Binarizes `position` (threshold 0.5, student-major) and evaluates it.
FitnessBreakdown fitness(std::span<const double> position, const AcsInstance& instance,
                         const ObjectiveOptions& options = {});

} // namespace mwo
