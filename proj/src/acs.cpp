#include "mwo/acs.hpp"

#include <algorithm>
#include <stdexcept>

namespace mwo {

std::uint64_t row_seed(std::uint64_t seed, int row)
{
    // splitmix64 step so neighbouring rows get unrelated streams
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(row) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RunRecord optimize_acs(const AcsInstance& instance, OptimizerConfig config, const AcsSolveOptions& options)
{
    const bool per_student = options.objective.coverage == CoverageMode::PerStudent;
    if (options.strategy == AcsStrategy::Rows && !per_student)
        throw std::invalid_argument("row-wise solving needs per-student coverage");
    const bool split = options.strategy == AcsStrategy::Rows ||
                       (options.strategy == AcsStrategy::Auto && per_student);

    if (!split) {
        config.bounds = Bounds::box(instance.dim(), 0.0, 1.0);
        return optimize([&](std::span<const double> x) { return fitness(x, instance, options.objective).total; },
                        instance.dim(), config);
    }

    const auto t_m = static_cast<std::size_t>(instance.material_count());
    RunRecord out;
    out.seed = config.seed;
    out.config = config;
    out.config.bounds = Bounds::box(instance.dim(), 0.0, 1.0);
    out.convergence_trace.assign(static_cast<std::size_t>(config.max_iterations), 0.0);
    out.best_position.reserve(instance.dim());
    out.best_fitness = 0.0;

    AcsInstance single = instance;
    for (int i = 0; i < instance.student_count(); ++i) {
        single.students = {instance.students[static_cast<std::size_t>(i)]};
        OptimizerConfig row = config;
        row.seed = row_seed(config.seed, i);
        row.bounds = Bounds::box(t_m, 0.0, 1.0);
        const auto rec = optimize(
            [&](std::span<const double> x) { return fitness(x, single, options.objective).total; }, t_m, row);
        for (std::size_t k = 0; k < rec.convergence_trace.size(); ++k)
            out.convergence_trace[k] += rec.convergence_trace[k];
        out.best_fitness += rec.best_fitness;
        out.best_position.insert(out.best_position.end(), rec.best_position.begin(), rec.best_position.end());
        out.evaluation_count += rec.evaluation_count;
        out.iteration_of_last_improvement =
            std::max(out.iteration_of_last_improvement, rec.iteration_of_last_improvement);
    }
    // Recompute on the assembled matrix so the reported value is exactly F.
    out.best_fitness = fitness(out.best_position, instance, options.objective).total;
    return out;
}

} // namespace mwo
