#include "doctest.h"

#include <stdexcept>

#include "fixtures.hpp"
#include "mwo/acs.hpp"
#include "mwo/rng.hpp"
#include "mwo/sequencer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace mwo;

namespace {

// One student with ability 1 requiring concept 0 and `n` materials that all
// carry it, so every material is high priority.
AcsInstance all_high(int n)
{
    AcsInstance inst;
    inst.graph.concept_count = 1;
    inst.students = {{0, {0}, 1.0, 0.0, 100.0, {}}};
    for (int j = 0; j < n; ++j) {
        inst.materials.push_back({j, {0}, 0.05 + 0.09 * ((j * 7) % n), 0.5 + 0.2 * j, {}});
        inst.graph.importance[j] = 0.1 * ((j * 3) % n);
    }
    return inst;
}

SelectionMatrix everything(const AcsInstance& inst)
{
    SelectionMatrix x(inst.student_count(), inst.material_count());
    for (int i = 0; i < inst.student_count(); ++i)
        for (int j = 0; j < inst.material_count(); ++j)
            x.set(i, j, true);
    return x;
}

} // namespace

TEST_CASE("priority score combines importance with prerequisite strength")
{
    ConceptGraph g;
    g.importance = {{0, 1.0}, {1, 1.0}, {2, 2.0}, {3, 0.0}, {4, 3.0}};
    g.prerequisites = {{0, 2, 0.5}, {1, 2, 0.25}, {0, 3, 1.0}};
    CHECK(priority_score(2, g) == doctest::Approx(1.5));
    CHECK(priority_score(3, g) == 0.0);
    CHECK(priority_score(4, g) == 3.0);
    CHECK_THROWS_AS(priority_score(9, g), std::out_of_range);
}

TEST_CASE("medium score blends difficulty and relative time")
{
    CHECK(medium_score(0.6, 2.0, 1.0, 10.0) == doctest::Approx(0.6));
    CHECK(medium_score(0.6, 2.0, 0.0, 10.0) == doctest::Approx(0.2));
    CHECK(medium_score(0.6, 2.0, 0.5, 10.0) == doctest::Approx(0.4));
    CHECK_THROWS_AS(medium_score(0.6, 2.0, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("challenge weight and score")
{
    CHECK(challenge_weight(1, 1000000) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(challenge_weight(4, 4) == doctest::Approx(std::exp(-1.0)));
    CHECK(challenge_weight(4, 4) == doctest::Approx(0.3679).epsilon(1e-4));
    CHECK(challenge_score(0.8, 0.0, 0.5) == doctest::Approx(0.4));
    CHECK(challenge_score(0.8, 0.3, 1.0) == doctest::Approx(0.8));
    CHECK_THROWS_AS(challenge_weight(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(challenge_weight(5, 4), std::invalid_argument);
}

TEST_CASE("combined score is the alpha-weighted sum")
{
    CHECK(combined_score(1, 2, 3, {1, 0, 0}) == 1.0);
    CHECK(combined_score(1, 2, 3, {0, 0, 1}) == 3.0);
    CHECK(combined_score(1, 2, 3, {0.5, 0.3, 0.2}) == doctest::Approx(1.7));
    CHECK(combined_score(2, 4, 6, {0.5, 0.3, 0.2}) == doctest::Approx(2 * 1.7));
    CHECK_THROWS_AS(combined_score(1, 2, 3, {0.5, 0.3, 0.3}), std::invalid_argument);
    CHECK_NOTHROW(combined_score(1, 2, 3, {0.5, 0.3, 0.2 + 1e-12}));
}

TEST_CASE("a single selected material gives a one-element sequence")
{
    const auto inst = fixtures::tiny_instance();
    const auto seq = build_sequence(fixtures::select(inst, {{1}}), inst, {}, 0);
    REQUIRE(seq.items.size() == 1);
    CHECK(seq.items[0].material == 1);
    CHECK(build_sequence(fixtures::select(inst, {{1}}), inst, {}, 1).items.empty());
}

TEST_CASE("prerequisites come first even against the score")
{
    auto inst = fixtures::tiny_instance();
    inst.graph.importance[1] = 50.0; // material 1 now far outscores its prerequisite 0
    const auto seq = build_sequence(fixtures::select(inst, {{0, 1}}), inst, {}, 0);
    REQUIRE(seq.items.size() == 2);
    CHECK(seq.items[1].s > seq.items[0].s);
    CHECK(seq.materials() == std::vector<int>{0, 1});
}

TEST_CASE("the high-priority cap keeps the three best scores")
{
    const auto inst = all_high(10);
    const SequenceParams params;
    const auto seq = build_sequence(everything(inst), inst, params, 0);
    REQUIRE(seq.items.size() == 3);

    // Sort-and-truncate oracle over first-pass scores.
    double tmax = 0.0;
    for (const auto& m : inst.materials)
        tmax = std::max(tmax, m.duration);
    std::vector<int> by_difficulty(10);
    for (int j = 0; j < 10; ++j)
        by_difficulty[static_cast<std::size_t>(j)] = j;
    std::sort(by_difficulty.begin(), by_difficulty.end(), [&](int a, int b) {
        return inst.materials[static_cast<std::size_t>(a)].difficulty <
               inst.materials[static_cast<std::size_t>(b)].difficulty;
    });
    std::vector<std::pair<double, int>> scored;
    for (int pos = 0; pos < 10; ++pos) {
        const int j = by_difficulty[static_cast<std::size_t>(pos)];
        const auto& m = inst.materials[static_cast<std::size_t>(j)];
        const double p = inst.graph.importance.at(j);
        const double med = 0.5 * m.difficulty + 0.5 * m.duration / tmax;
        const double beta = std::exp(-(pos + 1) / 10.0);
        const double c = beta * m.difficulty;
        scored.push_back({-(0.5 * p + 0.3 * med + 0.2 * c), j});
    }
    std::sort(scored.begin(), scored.end());
    const std::set<int> want{scored[0].second, scored[1].second, scored[2].second};
    const auto got = seq.materials();
    CHECK(std::set<int>(got.begin(), got.end()) == want);
}

TEST_CASE("built sequences obey caps and prerequisite order on generated instances")
{
    const SequenceParams params;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto inst = generate_synthetic_instance(seed, 6, 40, 10);
        Rng rng(seed);
        SelectionMatrix x(6, 40);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 40; ++j)
                x.set(i, j, rng.uniform() < 0.5);
        for (int i = 0; i < 6; ++i) {
            const auto seq = build_sequence(x, inst, params, i);
            int counts[3] = {0, 0, 0};
            std::set<int> unique;
            for (const auto& it : seq.items) {
                CHECK(x.at(i, it.material));
                ++counts[static_cast<int>(it.priority)];
                unique.insert(it.material);
            }
            CHECK(unique.size() == seq.items.size());
            CHECK(counts[0] <= inst.limits.high);
            CHECK(counts[1] <= inst.limits.medium);
            CHECK(counts[2] <= inst.limits.challenging);
            CHECK(evaluate_sequence(seq.materials(), inst, params, i).prerequisite_compliance == 100.0);

            const auto again = build_sequence(x, inst, params, i);
            CHECK(again.materials() == seq.materials());
        }
    }
}

TEST_CASE("sequence metrics")
{
    const auto inst = fixtures::tiny_instance();
    const SequenceParams params;
    // student 0: ability 0.5, requires {0,1}, window [1,3]
    auto m = evaluate_sequence({0, 1}, inst, params, 0);
    CHECK(m.coverage_rate == 100.0);
    CHECK(m.difficulty_progression == 100.0);
    CHECK(m.difficulty_alignment == 100.0);
    CHECK(m.time_satisfaction);
    CHECK(m.prerequisite_compliance == 100.0);

    m = evaluate_sequence({1, 0}, inst, params, 0);
    CHECK(m.prerequisite_compliance == 0.0);
    CHECK(m.coverage_rate == 100.0);
    CHECK(m.difficulty_progression == 0.0); // 0.4 -> 0.3 drops more than 0.05

    m = evaluate_sequence({2}, inst, params, 0);
    CHECK(m.coverage_rate == 0.0);
    CHECK(m.difficulty_alignment == 0.0);
    CHECK(m.time_satisfaction);

    m = evaluate_sequence({1, 2}, inst, params, 0);
    CHECK(m.coverage_rate == 50.0);
    CHECK(m.difficulty_alignment == 50.0);
    CHECK(m.time_satisfaction); // 3.0 hours sits on the inclusive upper bound

    m = evaluate_sequence({0, 2}, inst, params, 0);
    CHECK_FALSE(m.time_satisfaction);

    m = evaluate_sequence({}, inst, params, 0);
    CHECK(m.coverage_rate == 0.0);
    CHECK(m.prerequisite_compliance == 100.0);
    CHECK(m.difficulty_progression == 100.0);
}

TEST_CASE("coverage does not depend on order")
{
    const auto inst = generate_synthetic_instance(3, 4, 20, 8);
    Rng rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        auto ids = rng.sample(20, 5);
        const double base = evaluate_sequence(ids, inst, {}, trial % 4).coverage_rate;
        rng.shuffle(ids);
        CHECK(evaluate_sequence(ids, inst, {}, trial % 4).coverage_rate == base);
    }
}

TEST_CASE("the selected-set norm changes only the challenge score")
{
    auto inst = fixtures::tiny_instance();
    SequenceParams params;
    const auto x = fixtures::select(inst, {{0, 1, 2}});
    const auto catalog = build_sequence(x, inst, params, 0);
    params.challenge_norm = ChallengeNorm::Selected;
    const auto selected = build_sequence(x, inst, params, 0);
    REQUIRE(catalog.items.size() == selected.items.size());
    for (std::size_t k = 0; k < catalog.items.size(); ++k) {
        CHECK(catalog.items[k].p == selected.items[k].p);
        CHECK(catalog.items[k].m == selected.items[k].m);
    }
}

TEST_CASE("parameter validation")
{
    SequenceParams p;
    CHECK_NOTHROW(validate_params(p));
    p.alpha = {0.6, 0.3, 0.2};
    CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
    p = {};
    p.lambda = 1.5;
    CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
    p = {};
    p.progression_tolerance = -0.1;
    CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
}

TEST_CASE("row-wise ACS solving matches the per-student objective")
{
    const auto inst = generate_synthetic_instance(8, 3, 12, 6);
    AcsSolveOptions opts;
    opts.objective.coverage = CoverageMode::PerStudent;
    OptimizerConfig c;
    c.population_size = 10;
    c.max_iterations = 30;
    c.seed = 4;
    const auto rec = optimize_acs(inst, c, opts);
    CHECK(rec.best_position.size() == inst.dim());
    CHECK(rec.best_fitness == fitness(rec.best_position, inst, opts.objective).total);
    CHECK(rec.convergence_trace.size() == 30);
    for (std::size_t t = 1; t < rec.convergence_trace.size(); ++t)
        CHECK(rec.convergence_trace[t] <= rec.convergence_trace[t - 1]);
    CHECK(rec.convergence_trace.back() == doctest::Approx(rec.best_fitness));

    const auto again = optimize_acs(inst, c, opts);
    CHECK(again.best_position == rec.best_position);

    AcsSolveOptions bad;
    bad.strategy = AcsStrategy::Rows;
    CHECK_THROWS_AS(optimize_acs(inst, c, bad), std::invalid_argument);
}
