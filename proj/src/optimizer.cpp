#include "mwo/optimizer.hpp"

#include "mwo/halton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace mwo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSignalThreshold = 0.5;
constexpr double kTanGuard = 1e-6;

// Primes are reused across calls; the table only grows.
const std::vector<unsigned>& halton_bases(std::size_t dim)
{
    thread_local std::vector<unsigned> bases;
    if (bases.size() < dim)
        bases = first_primes(dim);
    return bases;
}

double draw_angle(Rng& rng)
{
    double theta = rng.uniform();
    while (std::abs(theta - 0.5) < kTanGuard)
        theta = rng.uniform();
    return theta;
}

std::vector<std::size_t> rank_by_fitness(const Population& population)
{
    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return population.fitness[a] < population.fitness[b];
    });
    return order;
}

} // namespace

Bounds Bounds::box(std::size_t dim, double lo, double hi)
{
    return {std::vector<double>(dim, lo), std::vector<double>(dim, hi)};
}

bool Bounds::contains(std::span<const double> x) const
{
    if (x.size() != size())
        return false;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (!(x[j] >= lower[j] && x[j] <= upper[j]))
            return false;
    return true;
}

OptimizerConfig wo_ablation(OptimizerConfig config)
{
    config.expert_guidance_enabled = false;
    config.nonlinear_danger_enabled = false;
    return config;
}

void validate_config(const OptimizerConfig& config, std::size_t dim)
{
    if (dim < 1)
        throw std::invalid_argument("dimension must be at least 1");
    if (config.population_size < 4)
        throw std::invalid_argument("population size must be at least 4");
    if (config.max_iterations < 1)
        throw std::invalid_argument("max iterations must be at least 1");
    if (!(config.aging_rate > 0.0))
        throw std::invalid_argument("aging rate must be positive");
    if (!(config.max_age_fraction >= 0.0))
        throw std::invalid_argument("max age fraction must be nonnegative");
    for (double f : {config.male_fraction, config.female_fraction, config.child_fraction})
        if (!(f >= 0.0 && f <= 1.0))
            throw std::invalid_argument("role fractions must lie in [0,1]");
    if (std::abs(config.male_fraction + config.female_fraction + config.child_fraction - 1.0) > 1e-9)
        throw std::invalid_argument("role fractions must sum to 1");
    if (config.bounds.lower.size() != dim || config.bounds.upper.size() != dim)
        throw std::invalid_argument("bounds do not match the dimension");
    for (std::size_t j = 0; j < dim; ++j)
        if (!(config.bounds.lower[j] <= config.bounds.upper[j]))
            throw std::invalid_argument("lower bound exceeds upper bound");
}

RoleCounts role_counts(const OptimizerConfig& config)
{
    const int n = config.population_size;
    RoleCounts out;
    out.males = static_cast<int>(std::floor(config.male_fraction * n + 1e-9));
    out.females = static_cast<int>(std::floor(config.female_fraction * n + 1e-9));
    out.females = std::min(out.females, n - out.males);
    out.children = n - out.males - out.females;
    return out;
}

Population::Population() : best_fitness(kInf), second_fitness(kInf) {}

Population initialize_population(const OptimizerConfig& config, std::size_t dim, Rng& rng)
{
    if (dim < 1)
        throw std::invalid_argument("dimension must be at least 1");
    if (config.bounds.size() != dim || config.bounds.upper.size() != dim)
        throw std::invalid_argument("bounds do not match the dimension");
    for (std::size_t j = 0; j < dim; ++j)
        if (!(config.bounds.lower[j] <= config.bounds.upper[j]))
            throw std::invalid_argument("lower bound exceeds upper bound");

    const auto n = static_cast<std::size_t>(config.population_size);
    Population pop;
    pop.positions.assign(n, std::vector<double>(dim));
    for (auto& x : pop.positions)
        for (std::size_t j = 0; j < dim; ++j)
            x[j] = config.bounds.lower[j] + rng.uniform() * (config.bounds.upper[j] - config.bounds.lower[j]);
    pop.fitness.assign(n, kInf);
    pop.ages.assign(n, 0);
    pop.weights.assign(n, 1.0);
    pop.improved.assign(n, 0);

    const int males = role_counts(config).males;
    pop.halton_index.resize(static_cast<std::size_t>(males));
    for (int m = 0; m < males; ++m)
        pop.halton_index[static_cast<std::size_t>(m)] = static_cast<std::uint64_t>(m) + 1;
    return pop;
}

void clamp_to_bounds(std::vector<double>& position, const Bounds& bounds, Rng& rng)
{
    for (std::size_t j = 0; j < position.size(); ++j) {
        const double lo = bounds.lower[j];
        const double hi = bounds.upper[j];
        if (!(position[j] >= lo && position[j] <= hi))
            position[j] = lo + (hi - lo) * rng.uniform();
    }
}

double danger_amplitude(int t, int t_max, bool nonlinear)
{
    const double progress = static_cast<double>(t) / t_max;
    if (!nonlinear)
        return 2.0 * (1.0 - progress);
    return 2.0 * std::pow(1.0 - progress, std::numbers::pi * progress);
}

double danger_signal(int t, int t_max, Rng& rng, bool nonlinear)
{
    return danger_amplitude(t, t_max, nonlinear) * rng.uniform(-1.0, 1.0);
}

double safety_signal(int t, int t_max)
{
    const double exponent = (0.5 * t_max - t) / t_max * 10.0;
    return 1.0 - 1.0 / (1.0 + std::exp(exponent));
}

double influence_weight(int age, double aging_rate, double max_age)
{
    if (age > max_age)
        return 0.0;
    return std::exp(-aging_rate * age);
}

void update_expert_weights(Population& population, const OptimizerConfig& config, int t_max)
{
    const double max_age = config.max_age_fraction * t_max;
    for (std::size_t i = 0; i < population.size(); ++i) {
        population.ages[i] = population.improved[i] ? 0 : population.ages[i] + 1;
        population.weights[i] = influence_weight(population.ages[i], config.aging_rate, max_age);
    }
}

std::optional<std::size_t> select_expert(const Population& population, std::size_t i, Rng& rng)
{
    const double own = population.fitness[i];
    double total = 0.0;
    for (std::size_t k = 0; k < population.size(); ++k)
        if (population.fitness[k] < own)
            total += population.weights[k];
    if (!(total > 0.0))
        return std::nullopt;

    const double target = rng.uniform() * total;
    double acc = 0.0;
    std::optional<std::size_t> last;
    for (std::size_t k = 0; k < population.size(); ++k) {
        if (!(population.fitness[k] < own) || population.weights[k] <= 0.0)
            continue;
        acc += population.weights[k];
        last = k;
        if (target < acc)
            return k;
    }
    return last; // rounding left target at the very top
}

std::vector<double> expert_step(std::span<const double> x, std::span<const double> expert, double weight,
                                double r, int I)
{
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = x[j] + r * weight * (expert[j] - I * x[j]);
    return out;
}

std::vector<double> expert_guided_update(std::span<const double> x, std::span<const double> expert,
                                         double weight, const Bounds& bounds, Rng& rng)
{
    const double r = rng.uniform();
    const int I = rng.uniform() < 0.5 ? 1 : 2;
    auto out = expert_step(x, expert, weight, r, I);
    clamp_to_bounds(out, bounds, rng);
    return out;
}

std::vector<double> migration_displacement(std::span<const double> a, std::span<const double> b,
                                           double beta, double r3)
{
    std::vector<double> out(a.size());
    const double scale = beta * r3 * r3;
    for (std::size_t j = 0; j < a.size(); ++j)
        out[j] = scale * (a[j] - b[j]);
    return out;
}

std::vector<std::vector<double>> migration_step(const Population& population, double beta, Rng& rng)
{
    const std::size_t n = population.size();
    if (n < 2)
        throw std::invalid_argument("migration needs at least two individuals");
    std::vector<std::vector<double>> steps;
    steps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t a = rng.index(n);
        std::size_t b = rng.index(n);
        while (b == a)
            b = rng.index(n);
        const double r3 = rng.uniform();
        steps.push_back(migration_displacement(population.positions[a], population.positions[b], beta, r3));
    }
    return steps;
}

void roles_update(Population& population, const OptimizerConfig& config, int t, int t_max, Rng& rng,
                  std::span<const char> frozen)
{
    auto skip = [&](std::size_t idx) { return idx < frozen.size() && frozen[idx]; };
    const auto roles = role_counts(config);
    const auto order = rank_by_fitness(population);
    const auto snapshot = population.positions;
    const auto& bounds = config.bounds;
    const auto& best = population.best_position;
    const std::size_t dim = bounds.size();
    const double alpha = 1.0 - static_cast<double>(t) / t_max;

    const auto& bases = halton_bases(dim);
    for (int m = 0; m < roles.males; ++m) {
        const std::size_t idx = order[static_cast<std::size_t>(m)];
        if (skip(idx))
            continue;
        auto& x = population.positions[idx];
        auto& counter = population.halton_index[static_cast<std::size_t>(m)];
        for (std::size_t j = 0; j < dim; ++j)
            x[j] = bounds.lower[j] + radical_inverse(counter, bases[j]) * (bounds.upper[j] - bounds.lower[j]);
        counter += static_cast<std::uint64_t>(roles.males);
    }

    for (int f = 0; f < roles.females; ++f) {
        const std::size_t idx = order[static_cast<std::size_t>(roles.males + f)];
        if (skip(idx))
            continue;
        const auto& mate = roles.males > 0 ? snapshot[order[static_cast<std::size_t>(f % roles.males)]] : best;
        auto& x = population.positions[idx];
        for (std::size_t j = 0; j < dim; ++j)
            x[j] = snapshot[idx][j] + alpha * (mate[j] - snapshot[idx][j]) +
                   (1.0 - alpha) * (best[j] - snapshot[idx][j]);
        clamp_to_bounds(x, bounds, rng);
    }

    for (int c = 0; c < roles.children; ++c) {
        const std::size_t idx = order[static_cast<std::size_t>(roles.males + roles.females + c)];
        if (skip(idx))
            continue;
        auto& x = population.positions[idx];
        const double r = rng.uniform();
        for (std::size_t j = 0; j < dim; ++j)
            x[j] = best[j] + r * (best[j] - snapshot[idx][j]);
        clamp_to_bounds(x, bounds, rng);
    }
}

std::vector<double> fleeing_step(std::span<const double> x, std::span<const double> best, double r1,
                                 double r4)
{
    const double R = 2.0 * r1 - 1.0;
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = x[j] * R - std::abs(best[j] - x[j]) * r4 * r4;
    return out;
}

std::vector<double> fleeing_update(std::span<const double> x, std::span<const double> best,
                                   const Bounds& bounds, Rng& rng)
{
    const double r1 = rng.uniform();
    const double r4 = rng.uniform();
    auto out = fleeing_step(x, best, r1, r4);
    clamp_to_bounds(out, bounds, rng);
    return out;
}

std::vector<double> dual_anchor_step(std::span<const double> x, std::span<const double> best,
                                     std::span<const double> second, double a1, double a2,
                                     std::span<const double> theta1, std::span<const double> theta2)
{
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double x1 = best[j] - a1 * std::tan(theta1[j] * std::numbers::pi) * std::abs(best[j] - x[j]);
        const double x2 = second[j] - a2 * std::tan(theta2[j] * std::numbers::pi) * std::abs(second[j] - x[j]);
        out[j] = 0.5 * (x1 + x2);
    }
    return out;
}

std::vector<double> dual_anchor_update(std::span<const double> x, std::span<const double> best,
                                       std::span<const double> second, double beta, const Bounds& bounds,
                                       Rng& rng)
{
    const double a1 = beta * rng.uniform();
    const double a2 = beta * rng.uniform();
    std::vector<double> theta1(x.size()), theta2(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        theta1[j] = draw_angle(rng);
        theta2[j] = draw_angle(rng);
    }
    auto out = dual_anchor_step(x, best, second, a1, a2, theta1, theta2);
    clamp_to_bounds(out, bounds, rng);
    return out;
}

bool record_elites(Population& population)
{
    bool best_improved = false;
    for (std::size_t i = 0; i < population.size(); ++i) {
        population.improved[i] = 0;
        const double f = population.fitness[i];
        const int owner = static_cast<int>(i);
        if (f < population.best_fitness) {
            if (population.best_owner != owner && population.best_owner >= 0) {
                population.second_fitness = population.best_fitness;
                population.second_position = population.best_position;
                population.second_owner = population.best_owner;
            }
            population.best_fitness = f;
            population.best_position = population.positions[i];
            population.best_owner = owner;
            population.improved[i] = 1;
            best_improved = true;
        } else if (f < population.second_fitness && owner != population.best_owner) {
            population.second_fitness = f;
            population.second_position = population.positions[i];
            population.second_owner = owner;
            population.improved[i] = 1;
        }
    }
    return best_improved;
}

RunRecord optimize(const Objective& objective, std::size_t dim, const OptimizerConfig& config,
                   const IterationObserver& observer)
{
    validate_config(config, dim);
    Rng rng(config.seed);
    Population pop = initialize_population(config, dim, rng);
    const int t_max = config.max_iterations;
    const auto& bounds = config.bounds;
    const bool exclusive = config.composition == UpdateComposition::Exclusive;

    RunRecord record;
    record.seed = config.seed;
    record.config = config;
    record.convergence_trace.reserve(static_cast<std::size_t>(t_max));

    auto evaluate_all = [&] {
        for (std::size_t i = 0; i < pop.size(); ++i)
            pop.fitness[i] = objective(pop.positions[i]);
        record.evaluation_count += pop.size();
        return record_elites(pop);
    };
    evaluate_all();

    std::vector<char> guided(pop.size());
    for (int t = 1; t <= t_max; ++t) {
        update_expert_weights(pop, config, t_max);
        const double danger = danger_signal(t, t_max, rng, config.nonlinear_danger_enabled);
        const double beta = safety_signal(t, t_max);
        const bool migrating = std::abs(danger) >= kSignalThreshold;
        std::fill(guided.begin(), guided.end(), 0);

        if (migrating) {
            const auto steps = migration_step(pop, beta, rng);
            for (std::size_t i = 0; i < pop.size(); ++i) {
                auto& x = pop.positions[i];
                for (std::size_t j = 0; j < dim; ++j)
                    x[j] += steps[i][j];
                clamp_to_bounds(x, bounds, rng);
            }
        } else if (config.expert_guidance_enabled) {
            const auto snapshot = pop.positions;
            for (std::size_t i = 0; i < pop.size(); ++i) {
                const auto expert = select_expert(pop, i, rng);
                if (!expert)
                    continue;
                pop.positions[i] =
                    expert_guided_update(snapshot[i], snapshot[*expert], pop.weights[*expert], bounds, rng);
                guided[i] = exclusive ? 1 : 0;
            }
        }

        const double safety = beta * rng.uniform();
        if (safety >= kSignalThreshold) {
            roles_update(pop, config, t, t_max, rng, guided);
        } else if (migrating) {
            for (std::size_t i = 0; i < pop.size(); ++i)
                if (!guided[i])
                    pop.positions[i] = fleeing_update(pop.positions[i], pop.best_position, bounds, rng);
        } else {
            const auto& second = pop.second_owner >= 0 ? pop.second_position : pop.best_position;
            for (std::size_t i = 0; i < pop.size(); ++i)
                if (!guided[i])
                    pop.positions[i] =
                        dual_anchor_update(pop.positions[i], pop.best_position, second, beta, bounds, rng);
        }

        if (evaluate_all())
            record.iteration_of_last_improvement = t;
        record.convergence_trace.push_back(pop.best_fitness);
        if (observer)
            observer(t, pop);
    }

    record.best_fitness = pop.best_fitness;
    record.best_position = pop.best_position;
    return record;
}

} // namespace mwo
