#pragma once

// Memetic Walrus Optimizer (MWO).
//
// A population of walruses moves in a box [lb, ub]^dim. Each iteration:
//
//   1. Ages advance by one; individuals that set a new best or second-best in
//      the previous evaluation restart at age 0. Influence weight is
//      exp(-lambda * age), or 0 once age exceeds max_age_fraction * T_max.
//   2. Danger E = E1(t) * E0 with E0 ~ U(-1, 1). If |E| >= 0.5 the whole
//      population migrates along differences of random pairs; otherwise each
//      individual is pulled by an expert drawn from strictly fitter
//      individuals in proportion to their weights.
//   3. Safety S = beta(t) * r2. S >= 0.5 triggers the role-based update
//      (males resample Halton points, females move between their paired male
//      and the best, children overshoot past the best). Otherwise each
//      individual flees (|E| >= 0.5) or contracts on the best and second-best
//      anchors (|E| < 0.5). Under the default exclusive composition an
//      individual that followed an expert in step 2 sits this step out.
//   4. Every coordinate that left the box is resampled uniformly inside it and
//      the population is re-evaluated.
//
// Random draws happen in exactly this order within one iteration:
//   E0; then per individual in index order either (migration) partner a,
//   partner b (redrawn until distinct), r3, or (expert) the roulette draw
//   when a weighted expert exists followed by rand and the I coin; then r2;
//   then the branch draws, skipping individuals that sit the step out: per
//   female none, per child r, per individual of the fleeing branch r1, r4,
//   per individual of the anchor branch r, r',
//   then theta1, theta2 per coordinate. Every update finishes with the
//   boundary resampling draws of its out-of-box coordinates in coordinate
//   order. One seed therefore fixes the entire run.
//
// With expert guidance and the nonlinear danger decay both disabled the
// optimizer reduces to the plain walrus baseline used for ablation.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mwo/rng.hpp"

namespace mwo {

struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    static Bounds box(std::size_t dim, double lo, double hi);

    std::size_t size() const { return lower.size(); }
    bool contains(std::span<const double> x) const;
};

enum class UpdateComposition {
    Exclusive,  // an individual moved by its expert skips the role step that iteration
    Sequential, // every individual takes the role step after the migration/expert step
};

struct OptimizerConfig {
    int population_size = 30;
    int max_iterations = 500;
    double aging_rate = 0.1;
    double max_age_fraction = 0.2;
    double male_fraction = 0.45;
    double female_fraction = 0.45;
    double child_fraction = 0.10;
    bool expert_guidance_enabled = true;
    bool nonlinear_danger_enabled = true;
    UpdateComposition composition = UpdateComposition::Exclusive;
    std::uint64_t seed = 0;
    Bounds bounds;
};

/// Same mechanics with expert guidance off and a linear danger decay.
OptimizerConfig wo_ablation(OptimizerConfig config);

/// Throws std::invalid_argument describing the first broken invariant.
void validate_config(const OptimizerConfig& config, std::size_t dim);

struct RoleCounts {
    int males = 0;
    int females = 0;
    int children = 0;
};

RoleCounts role_counts(const OptimizerConfig& config);

struct Population {
    std::vector<std::vector<double>> positions;
    std::vector<double> fitness;
    std::vector<int> ages;
    std::vector<double> weights;
    std::vector<char> improved; // set best or second-best in the last evaluation

    std::vector<double> best_position;
    double best_fitness;
    int best_owner = -1;
    std::vector<double> second_position;
    double second_fitness;
    int second_owner = -1;

    std::vector<std::uint64_t> halton_index; // one private counter per male slot

    Population();
    std::size_t size() const { return positions.size(); }
};

/// Uniform positions inside the bounds, ages 0, weights 1, fitness +inf.
/// Consumes draws from `rng` in row-major order.
Population initialize_population(const OptimizerConfig& config, std::size_t dim, Rng& rng);

/// Entries inside [lb, ub] are kept; others (including non-finite values)
/// are redrawn uniformly inside their bound.
void clamp_to_bounds(std::vector<double>& position, const Bounds& bounds, Rng& rng);

/// E1(t) = 2 (1 - t/T)^(pi t / T), or 2 (1 - t/T) when `nonlinear` is false.
double danger_amplitude(int t, int t_max, bool nonlinear = true);

/// E = E1(t) * E0 with E0 ~ U(-1, 1).
double danger_signal(int t, int t_max, Rng& rng, bool nonlinear = true);

/// beta(t) = 1 - 1 / (1 + exp(10 (T/2 - t) / T)).
double safety_signal(int t, int t_max);

/// Influence weight of one individual.
double influence_weight(int age, double aging_rate, double max_age);

/// Advances every age by one, resets those flagged in `improved` to 0 and
/// recomputes weights.
void update_expert_weights(Population& population, const OptimizerConfig& config, int t_max);

/// Roulette choice over strictly fitter individuals, weighted by influence.
/// Returns nullopt when no fitter individual carries positive weight.
std::optional<std::size_t> select_expert(const Population& population, std::size_t i, Rng& rng);

/// x + r * w * (expert - I * x), before any boundary handling.
std::vector<double> expert_step(std::span<const double> x, std::span<const double> expert, double weight,
                                double r, int I);

std::vector<double> expert_guided_update(std::span<const double> x, std::span<const double> expert,
                                         double weight, const Bounds& bounds, Rng& rng);

/// (beta * r3^2) * (a - b).
std::vector<double> migration_displacement(std::span<const double> a, std::span<const double> b,
                                           double beta, double r3);

/// One displacement per individual, each from a distinct random pair.
std::vector<std::vector<double>> migration_step(const Population& population, double beta, Rng& rng);

/// Male/female/child update of the S >= 0.5 branch, ranked by current fitness.
/// Individuals flagged in `frozen` keep their position.
void roles_update(Population& population, const OptimizerConfig& config, int t, int t_max, Rng& rng,
                  std::span<const char> frozen = {});

/// x * R - |best - x| * r4^2 with R = 2 r1 - 1.
std::vector<double> fleeing_step(std::span<const double> x, std::span<const double> best, double r1,
                                 double r4);

std::vector<double> fleeing_update(std::span<const double> x, std::span<const double> best,
                                   const Bounds& bounds, Rng& rng);

/// Mean of the two anchor points with explicit coefficients and angles.
std::vector<double> dual_anchor_step(std::span<const double> x, std::span<const double> best,
                                     std::span<const double> second, double a1, double a2,
                                     std::span<const double> theta1, std::span<const double> theta2);

std::vector<double> dual_anchor_update(std::span<const double> x, std::span<const double> best,
                                       std::span<const double> second, double beta, const Bounds& bounds,
                                       Rng& rng);

/// Updates best/second-best from the current fitness values, flags improvers.
/// Returns true when the best fitness decreased.
bool record_elites(Population& population);

using Objective = std::function<double(std::span<const double>)>;

struct RunRecord {
    std::uint64_t seed = 0;
    OptimizerConfig config;
    std::vector<double> convergence_trace; // best-so-far after each iteration
    double best_fitness = 0.0;
    std::vector<double> best_position;
    std::size_t evaluation_count = 0;
    int iteration_of_last_improvement = 0;
};

/// Called after every iteration with the iteration number and the state the
/// next iteration will start from.
using IterationObserver = std::function<void(int t, const Population&)>;

RunRecord optimize(const Objective& objective, std::size_t dim, const OptimizerConfig& config,
                   const IterationObserver& observer = {});

} // namespace mwo
