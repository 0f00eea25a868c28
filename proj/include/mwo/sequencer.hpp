#pragma once

// Turns a selection into one ordered learning sequence per student.
//
// Each selected material gets three scores: a priority score from its
// importance and incoming prerequisite strengths, a medium score from its
// difficulty and study time, and a challenge score that shifts from
// difficulty towards prerequisite load as the sequence advances. Their
// weighted sum S ranks the materials. Per-class caps from the instance bound
// how many high, medium and challenging materials a sequence keeps, and the
// final order never places a material ahead of one of its prerequisites.

#include "mwo/core_model.hpp"

#include <array>
#include <vector>

namespace mwo {

/// What |N| means in the challenge score's prerequisite ratio.
enum class ChallengeNorm {
    Catalog,  // number of materials in the instance
    Selected, // number of materials in the sequence being scored
};

struct SequenceParams {
    double lambda = 0.5;                        // difficulty vs time in the medium score
    std::array<double, 3> alpha{0.5, 0.3, 0.2}; // priority, medium, challenge weights
    double progression_tolerance = 0.05;
    double alignment_margin = 0.0;
    ChallengeNorm challenge_norm = ChallengeNorm::Catalog;
};

/// Throws std::invalid_argument if alpha does not sum to 1 (within 1e-9),
/// lambda is outside [0, 1] or the tolerance is negative.
void validate_params(const SequenceParams& params);

/// w_i times the summed strength of the prerequisites of `material`; a
/// material without prerequisites uses a factor of 1. Throws
/// std::out_of_range if the material has no importance entry.
double priority_score(int material, const ConceptGraph& graph);

/// lambda * difficulty + (1 - lambda) * duration / time_scale.
/// Throws std::invalid_argument if time_scale <= 0.
double medium_score(double difficulty, double duration, double lambda, double time_scale);

/// exp(-k / K). Throws std::invalid_argument unless 1 <= k <= K.
double challenge_weight(int k, int K);

/// beta * difficulty + (1 - beta) * prerequisite_ratio.
double challenge_score(double difficulty, double prerequisite_ratio, double beta);

/// alpha . (P, M, C). Throws std::invalid_argument if alpha does not sum to 1.
double combined_score(double p, double m, double c, const std::array<double, 3>& alpha);

struct ScoredMaterial {
    int material = 0;
    PriorityClass priority = PriorityClass::High;
    double p = 0.0;
    double m = 0.0;
    double c = 0.0;
    double s = 0.0;
};

struct LearningSequence {
    int student = 0;
    std::vector<ScoredMaterial> items; // in study order

    std::vector<int> materials() const;
};

/// Builds the sequence of one student from their row of `selection`.
///
/// Scores use k = the material's difficulty rank (1-based, ties by id) among
/// the materials being scored and K = their count. Materials are first
/// scored over the whole selected row, each class is cut down to its cap by
/// keeping the highest S (ties to the smaller id), then the survivors are
/// rescored among themselves. The order is a topological sort of the
/// prerequisite edges between survivors that always emits the available
/// material with the highest S, ties to the smaller id.
LearningSequence build_sequence(const SelectionMatrix& selection, const AcsInstance& instance,
                                const SequenceParams& params, int student_index);

std::vector<LearningSequence> build_all_sequences(const SelectionMatrix& selection, const AcsInstance& instance,
                                                  const SequenceParams& params);

struct SequenceMetrics {
    double coverage_rate = 0.0;           // % of required concepts covered
    double difficulty_progression = 0.0;  // % of adjacent pairs not dropping by more than tau
    double difficulty_alignment = 0.0;    // % of materials with difficulty <= ability + margin
    bool time_satisfaction = false;       // total duration inside the student's window
    double prerequisite_compliance = 0.0; // % of in-sequence prerequisite edges in order
};

/// Percentages with nothing to check (no adjacent pairs, no materials, no
/// in-sequence edges) are 100.
SequenceMetrics evaluate_sequence(const std::vector<int>& sequence, const AcsInstance& instance,
                                  const SequenceParams& params, int student_index);

} // namespace mwo
