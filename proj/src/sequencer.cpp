#include "mwo/sequencer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace mwo {

namespace {

constexpr double kAlphaTolerance = 1e-9;

void check_alpha(const std::array<double, 3>& alpha)
{
    if (std::abs(alpha[0] + alpha[1] + alpha[2] - 1.0) > kAlphaTolerance)
        throw std::invalid_argument("score weights alpha must sum to 1");
}

double max_duration(const AcsInstance& instance)
{
    double out = 0.0;
    for (const auto& m : instance.materials)
        out = std::max(out, m.duration);
    return out;
}

// 1-based difficulty rank of every entry of `ids` (ties by id).
std::map<int, int> difficulty_ranks(std::vector<int> ids, const AcsInstance& instance)
{
    std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
        const double da = instance.materials[static_cast<std::size_t>(a)].difficulty;
        const double db = instance.materials[static_cast<std::size_t>(b)].difficulty;
        return da < db || (da == db && a < b);
    });
    std::map<int, int> out;
    for (std::size_t r = 0; r < ids.size(); ++r)
        out[ids[r]] = static_cast<int>(r) + 1;
    return out;
}

std::vector<ScoredMaterial> score_group(const std::vector<int>& ids, const AcsInstance& instance,
                                        const SequenceParams& params, int student_index, double time_scale)
{
    const auto& student = instance.students[static_cast<std::size_t>(student_index)];
    const auto ranks = difficulty_ranks(ids, instance);
    const int K = static_cast<int>(ids.size());
    const double norm = params.challenge_norm == ChallengeNorm::Catalog ? instance.material_count() : K;

    std::vector<ScoredMaterial> out;
    out.reserve(ids.size());
    for (int id : ids) {
        const auto& mat = instance.materials[static_cast<std::size_t>(id)];
        ScoredMaterial sm;
        sm.material = id;
        sm.priority = classify(student, mat).priority;
        sm.p = priority_score(id, instance.graph);
        sm.m = medium_score(mat.difficulty, mat.duration, params.lambda, time_scale);
        const double ratio = static_cast<double>(instance.graph.prerequisites_of(id).size()) / norm;
        sm.c = challenge_score(mat.difficulty, ratio, challenge_weight(ranks.at(id), K));
        sm.s = combined_score(sm.p, sm.m, sm.c, params.alpha);
        out.push_back(sm);
    }
    return out;
}

int cap_for(PriorityClass c, const PriorityLimits& limits)
{
    switch (c) {
    case PriorityClass::High: return limits.high;
    case PriorityClass::Medium: return limits.medium;
    case PriorityClass::Challenging: return limits.challenging;
    }
    return 0;
}

bool higher_score(const ScoredMaterial& a, const ScoredMaterial& b)
{
    return a.s > b.s || (a.s == b.s && a.material < b.material);
}

} // namespace

void validate_params(const SequenceParams& params)
{
    check_alpha(params.alpha);
    if (!(params.lambda >= 0.0 && params.lambda <= 1.0))
        throw std::invalid_argument("lambda must lie in [0, 1]");
    if (!(params.progression_tolerance >= 0.0))
        throw std::invalid_argument("progression tolerance must be nonnegative");
}

double priority_score(int material, const ConceptGraph& graph)
{
    const auto it = graph.importance.find(material);
    if (it == graph.importance.end())
        throw std::out_of_range("no importance weight for material " + std::to_string(material));
    const auto pre = graph.prerequisites_of(material);
    if (pre.empty())
        return it->second;
    double strength = 0.0;
    for (const auto& e : pre)
        strength += e.strength;
    return it->second * strength;
}

double medium_score(double difficulty, double duration, double lambda, double time_scale)
{
    if (!(time_scale > 0.0))
        throw std::invalid_argument("time scale must be positive");
    return lambda * difficulty + (1.0 - lambda) * duration / time_scale;
}

double challenge_weight(int k, int K)
{
    if (K < 1 || k < 1 || k > K)
        throw std::invalid_argument("challenge position requires 1 <= k <= K");
    return std::exp(-static_cast<double>(k) / static_cast<double>(K));
}

double challenge_score(double difficulty, double prerequisite_ratio, double beta)
{
    return beta * difficulty + (1.0 - beta) * prerequisite_ratio;
}

double combined_score(double p, double m, double c, const std::array<double, 3>& alpha)
{
    check_alpha(alpha);
    return alpha[0] * p + alpha[1] * m + alpha[2] * c;
}

std::vector<int> LearningSequence::materials() const
{
    std::vector<int> out;
    out.reserve(items.size());
    for (const auto& it : items)
        out.push_back(it.material);
    return out;
}

LearningSequence build_sequence(const SelectionMatrix& selection, const AcsInstance& instance,
                                const SequenceParams& params, int student_index)
{
    validate_params(params);
    if (selection.students() != instance.student_count() || selection.materials() != instance.material_count())
        throw std::invalid_argument("selection matrix does not match instance dimensions");
    if (student_index < 0 || student_index >= instance.student_count())
        throw std::out_of_range("student index out of range");

    LearningSequence seq;
    seq.student = student_index;

    std::vector<int> selected;
    const auto row = selection.row(student_index);
    for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j])
            selected.push_back(static_cast<int>(j));
    if (selected.empty())
        return seq;

    const double time_scale = max_duration(instance);
    auto first = score_group(selected, instance, params, student_index, time_scale);
    std::sort(first.begin(), first.end(), higher_score);

    std::map<PriorityClass, int> taken;
    std::vector<int> kept;
    for (const auto& sm : first) {
        if (taken[sm.priority] >= cap_for(sm.priority, instance.limits))
            continue;
        ++taken[sm.priority];
        kept.push_back(sm.material);
    }
    std::sort(kept.begin(), kept.end());
    const auto scored = score_group(kept, instance, params, student_index, time_scale);

    // Kahn's algorithm restricted to the kept materials.
    std::map<int, std::size_t> slot;
    for (std::size_t i = 0; i < kept.size(); ++i)
        slot[kept[i]] = i;
    std::vector<int> indegree(kept.size(), 0);
    std::vector<std::vector<std::size_t>> successors(kept.size());
    for (const auto& e : instance.graph.prerequisites) {
        const auto from = slot.find(e.from);
        const auto to = slot.find(e.to);
        if (from == slot.end() || to == slot.end())
            continue;
        successors[from->second].push_back(to->second);
        ++indegree[to->second];
    }

    std::vector<char> done(kept.size(), 0);
    for (std::size_t emitted = 0; emitted < kept.size(); ++emitted) {
        std::size_t pick = kept.size();
        for (std::size_t i = 0; i < kept.size(); ++i) {
            if (done[i] || indegree[i] > 0)
                continue;
            if (pick == kept.size() || higher_score(scored[i], scored[pick]))
                pick = i;
        }
        if (pick == kept.size())
            throw std::logic_error("prerequisite cycle among selected materials");
        done[pick] = 1;
        for (std::size_t s : successors[pick])
            --indegree[s];
        seq.items.push_back(scored[pick]);
    }
    return seq;
}

std::vector<LearningSequence> build_all_sequences(const SelectionMatrix& selection, const AcsInstance& instance,
                                                  const SequenceParams& params)
{
    std::vector<LearningSequence> out;
    for (int i = 0; i < instance.student_count(); ++i)
        out.push_back(build_sequence(selection, instance, params, i));
    return out;
}

SequenceMetrics evaluate_sequence(const std::vector<int>& sequence, const AcsInstance& instance,
                                  const SequenceParams& params, int student_index)
{
    if (student_index < 0 || student_index >= instance.student_count())
        throw std::out_of_range("student index out of range");
    const auto& student = instance.students[static_cast<std::size_t>(student_index)];
    auto mat = [&](int id) -> const LearningMaterial& {
        return instance.materials.at(static_cast<std::size_t>(id));
    };

    SequenceMetrics out;

    ConceptSet covered;
    double hours = 0.0;
    int aligned = 0;
    for (int id : sequence) {
        covered.insert(mat(id).concepts.begin(), mat(id).concepts.end());
        hours += mat(id).duration;
        if (mat(id).difficulty <= student.ability + params.alignment_margin)
            ++aligned;
    }
    int hit = 0;
    for (int c : student.required_concepts)
        hit += covered.count(c) ? 1 : 0;
    out.coverage_rate = student.required_concepts.empty()
                            ? 100.0
                            : 100.0 * hit / static_cast<double>(student.required_concepts.size());
    out.difficulty_alignment = sequence.empty() ? 100.0 : 100.0 * aligned / static_cast<double>(sequence.size());
    out.time_satisfaction = hours >= student.time_lower && hours <= student.time_upper;

    int smooth = 0;
    for (std::size_t k = 1; k < sequence.size(); ++k)
        if (mat(sequence[k]).difficulty >= mat(sequence[k - 1]).difficulty - params.progression_tolerance)
            ++smooth;
    out.difficulty_progression =
        sequence.size() < 2 ? 100.0 : 100.0 * smooth / static_cast<double>(sequence.size() - 1);

    std::map<int, std::size_t> position;
    for (std::size_t k = 0; k < sequence.size(); ++k)
        position[sequence[k]] = k;
    int pairs = 0;
    int ordered = 0;
    for (const auto& e : instance.graph.prerequisites) {
        const auto a = position.find(e.from);
        const auto b = position.find(e.to);
        if (a == position.end() || b == position.end())
            continue;
        ++pairs;
        if (a->second < b->second)
            ++ordered;
    }
    out.prerequisite_compliance = pairs == 0 ? 100.0 : 100.0 * ordered / static_cast<double>(pairs);
    return out;
}

} // namespace mwo
