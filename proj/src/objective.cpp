#include "mwo/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mwo {

namespace {

void check_shape(const SelectionMatrix& selection, const AcsInstance& instance)
{
    if (selection.students() != instance.student_count() ||
        selection.materials() != instance.material_count())
        throw std::invalid_argument("selection matrix does not match instance dimensions");
}

// |R| - |R n E| and |E| - |R n E| given concept membership flags.
struct CoverageCounts {
    int redundant = 0;
    int missing = 0;
};

CoverageCounts count_coverage(const std::vector<char>& covered, const std::vector<char>& required)
{
    CoverageCounts out;
    for (std::size_t c = 0; c < covered.size(); ++c) {
        if (covered[c] && !required[c])
            ++out.redundant;
        if (required[c] && !covered[c])
            ++out.missing;
    }
    return out;
}

void mark_row(const SelectionMatrix& selection, const AcsInstance& instance, int student,
              std::vector<char>& covered)
{
    const auto row = selection.row(student);
    for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j])
            for (int c : instance.materials[j].concepts)
                covered[static_cast<std::size_t>(c)] = 1;
}

} // namespace

ConceptSet covered_concepts(const SelectionMatrix& selection, const AcsInstance& instance)
{
    check_shape(selection, instance);
    ConceptSet out;
    for (int i = 0; i < selection.students(); ++i) {
        const auto row = selection.row(i);
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j])
                out.insert(instance.materials[j].concepts.begin(), instance.materials[j].concepts.end());
    }
    return out;
}

ConceptSet required_concepts(const AcsInstance& instance)
{
    ConceptSet out;
    for (const auto& s : instance.students)
        out.insert(s.required_concepts.begin(), s.required_concepts.end());
    return out;
}

double coverage_penalty(const SelectionMatrix& selection, const AcsInstance& instance,
                        const ObjectiveOptions& options)
{
    check_shape(selection, instance);
    const auto& eps = instance.penalties;
    const std::size_t t_c = static_cast<std::size_t>(instance.graph.concept_count);

    if (options.coverage == CoverageMode::Global) {
        std::vector<char> covered(t_c, 0), required(t_c, 0);
        for (int i = 0; i < selection.students(); ++i)
            mark_row(selection, instance, i, covered);
        for (const auto& s : instance.students)
            for (int c : s.required_concepts)
                required[static_cast<std::size_t>(c)] = 1;
        const auto counts = count_coverage(covered, required);
        return eps.redundant * counts.redundant + eps.missing * counts.missing;
    }

    double total = 0.0;
    std::vector<char> covered(t_c), required(t_c);
    for (int i = 0; i < selection.students(); ++i) {
        std::fill(covered.begin(), covered.end(), 0);
        std::fill(required.begin(), required.end(), 0);
        mark_row(selection, instance, i, covered);
        for (int c : instance.students[static_cast<std::size_t>(i)].required_concepts)
            required[static_cast<std::size_t>(c)] = 1;
        const auto counts = count_coverage(covered, required);
        total += eps.redundant * counts.redundant + eps.missing * counts.missing;
    }
    return total;
}

bool exceeds_priority_limits(const SelectionMatrix& selection, const AcsInstance& instance, int student)
{
    check_shape(selection, instance);
    const auto& s = instance.students.at(static_cast<std::size_t>(student));
    int counts[3] = {0, 0, 0};
    const auto row = selection.row(student);
    for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j])
            ++counts[static_cast<int>(classify(s, instance.materials[j]).priority)];
    const auto& cap = instance.limits;
    return counts[0] > cap.high || counts[1] > cap.medium || counts[2] > cap.challenging;
}

double time_penalty(const SelectionMatrix& selection, const AcsInstance& instance, const ObjectiveOptions& options)
{
    check_shape(selection, instance);
    int violations = 0;
    for (int i = 0; i < selection.students(); ++i) {
        const auto row = selection.row(i);
        double hours = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j])
                hours += instance.materials[j].duration;
        const auto& s = instance.students[static_cast<std::size_t>(i)];
        if (hours < s.time_lower || hours > s.time_upper)
            ++violations;
        if (options.enforce_priority_limits && exceeds_priority_limits(selection, instance, i))
            ++violations;
    }
    return instance.penalties.time * violations;
}

double style_penalty(const SelectionMatrix& selection, const AcsInstance& instance)
{
    check_shape(selection, instance);
    double total = 0.0;
    for (int i = 0; i < selection.students(); ++i) {
        const auto& p = instance.students[static_cast<std::size_t>(i)].style;
        const auto row = selection.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!row[j])
                continue;
            const auto& pm = instance.materials[j].style;
            for (std::size_t k = 0; k < p.size(); ++k)
                total += std::abs(p[k] - pm[k]);
        }
    }
    return total;
}

FitnessBreakdown evaluate_selection(const SelectionMatrix& selection, const AcsInstance& instance,
                                    const ObjectiveOptions& options)
{
    FitnessBreakdown out;
    out.o1 = coverage_penalty(selection, instance, options);
    out.o2 = time_penalty(selection, instance, options);
    out.o3 = style_penalty(selection, instance);
    const auto& w = instance.weights;
    out.total = w.coverage * out.o1 + w.time * out.o2 + w.style * out.o3;
    return out;
}

FitnessBreakdown fitness(std::span<const double> position, const AcsInstance& instance,
                         const ObjectiveOptions& options)
{
    return evaluate_selection(binarize(position, instance.student_count(), instance.material_count()),
                              instance, options);
}

} // namespace mwo
