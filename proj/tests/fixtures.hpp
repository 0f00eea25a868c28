#pragma once

#include "mwo/core_model.hpp"

#include <vector>

namespace fixtures {

// Two students, three materials, four concepts; small enough to reason about by hand.
inline mwo::AcsInstance tiny_instance()
{
    mwo::AcsInstance inst;
    inst.graph.concept_count = 4;
    inst.students = {
        {0, {0, 1}, 0.5, 1.0, 3.0, {0.2, 0.4, 0.6, 0.8}},
        {1, {2}, 0.9, 0.5, 2.0, {1.0, 0.0, 1.0, 0.0}},
    };
    inst.materials = {
        {0, {0, 1}, 0.3, 1.5, {0.2, 0.4, 0.6, 0.8}},
        {1, {1, 2}, 0.4, 1.0, {0.0, 1.0, 1.0, 0.0}},
        {2, {2, 3}, 0.7, 2.0, {0.5, 0.5, 0.5, 0.5}},
    };
    inst.graph.prerequisites = {{0, 1, 0.5}, {1, 2, 0.25}};
    inst.graph.importance = {{0, 1.0}, {1, 2.0}, {2, 0.5}};
    return inst;
}

inline mwo::SelectionMatrix select(const mwo::AcsInstance& inst, const std::vector<std::vector<int>>& rows)
{
    mwo::SelectionMatrix x(inst.student_count(), inst.material_count());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j : rows[i])
            x.set(static_cast<int>(i), j, true);
    return x;
}

} // namespace fixtures
