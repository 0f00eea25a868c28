#include "doctest.h"

#include <stdexcept>

#include "mwo/campaign.hpp"
#include "mwo/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <sstream>

using namespace mwo;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("mwo_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

Campaign small_campaign(const fs::path& out, int runs = 3)
{
    Campaign c;
    c.problem = "tf1";
    c.algorithms = {{"MWO", "mwo", 8, 20, UpdateComposition::Exclusive},
                    {"WO", "wo", 8, 20, UpdateComposition::Exclusive}};
    c.run_count = runs;
    c.base_seed = 100;
    c.out_dir = out;
    return c;
}

int count_lines(const std::string& text)
{
    int n = 0;
    for (char ch : text)
        n += ch == '\n' ? 1 : 0;
    return n;
}

} // namespace

TEST_CASE("campaign config parsing")
{
    const auto doc = Json::parse(R"({
        "problem": "TF5",
        "algorithms": [{"name": "MWO"}, {"name": "WO", "variant": "wo", "population": 10, "iterations": 7}],
        "run_count": 4, "base_seed": 9, "out": "somewhere"})");
    const auto c = campaign_from_json(doc);
    CHECK(c.problem == "tf5");
    REQUIRE(c.algorithms.size() == 2);
    CHECK(c.algorithms[0].variant == "mwo");
    CHECK(c.algorithms[0].iterations == 500);
    CHECK(c.algorithms[1].population == 10);
    CHECK(c.run_count == 4);
    CHECK(c.base_seed == 9);

    const auto acs = campaign_from_json(
        Json::parse(R"({"problem": "acs", "instance": "inst.json", "coverage": "per-student",
                        "algorithms": [{"name": "A"}]})"),
        "/data");
    CHECK(acs.instance_path == fs::path("/data/inst.json"));
    CHECK(acs.acs.objective.coverage == CoverageMode::PerStudent);
    CHECK(acs.run_count == 30);

    CHECK_THROWS_AS(campaign_from_json(Json::parse(R"({"problem": "tf12", "algorithms": [{"name": "A"}]})")),
                    std::runtime_error);
    CHECK_THROWS_AS(campaign_from_json(Json::parse(R"({"problem": "tf1", "algorithms": []})")),
                    std::runtime_error);
    CHECK_THROWS_AS(
        campaign_from_json(Json::parse(R"({"problem": "tf1", "run_count": 0, "algorithms": [{"name": "A"}]})")),
        std::runtime_error);
    CHECK_THROWS_AS(campaign_from_json(Json::parse(
                        R"({"problem": "tf1", "algorithms": [{"name": "A", "variant": "soa"}]})")),
                    std::runtime_error);
    CHECK_THROWS_AS(campaign_from_json(Json::parse(R"({"problem": "tf1", "algorithms": [{"name": "A"}, {"name": "A"}]})")),
                    std::runtime_error);
}

TEST_CASE("run_campaign yields one group per algorithm with seeded runs")
{
    auto c = small_campaign(scratch("groups"), 2);
    c.algorithms.pop_back();
    auto result = run_campaign(c);
    REQUIRE(result.groups.size() == 1);
    REQUIRE(result.groups[0].records.size() == 2);
    CHECK(result.groups[0].records[0].seed == 100);
    CHECK(result.groups[0].records[1].seed == 101);

    result = run_campaign(small_campaign(c.out_dir, 2));
    CHECK(result.groups.size() == 2);
    CHECK(result.groups[1].records[0].config.expert_guidance_enabled == false);
}

TEST_CASE("export writes the expected files and row counts")
{
    const auto dir = scratch("export");
    const auto c = small_campaign(dir, 3);
    const auto result = run_campaign(c);
    const auto rows = compare(result);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].algorithm_a == "MWO");
    CHECK(rows[0].algorithm_b == "WO");
    export_results(result, rows, dir);

    CHECK(count_lines(read_text(dir / "results.csv")) == 1 + 6);
    CHECK(count_lines(read_text(dir / "summary.csv")) == 1 + 2);
    CHECK(count_lines(read_text(dir / "wilcoxon.csv")) == 1 + 1);
    const auto trace = read_text(dir / "traces" / "MWO_100.csv");
    CHECK(count_lines(trace) - 1 <= 20);
    CHECK(trace.rfind("iteration,best_fitness\n", 0) == 0);

    // re-export is byte identical
    const auto first = read_text(dir / "results.csv");
    const auto wil = read_text(dir / "wilcoxon.csv");
    export_results(result, rows, dir);
    CHECK(read_text(dir / "results.csv") == first);
    CHECK(read_text(dir / "wilcoxon.csv") == wil);
}

TEST_CASE("results.csv round-trips final fitness exactly")
{
    const auto result = run_campaign(small_campaign(scratch("roundtrip"), 3));
    const auto parsed = parse_results_csv(results_csv(result), "tf1");
    REQUIRE(parsed.groups.size() == 2);
    for (std::size_t g = 0; g < 2; ++g) {
        REQUIRE(parsed.groups[g].records.size() == result.groups[g].records.size());
        for (std::size_t r = 0; r < parsed.groups[g].records.size(); ++r) {
            CHECK(parsed.groups[g].records[r].best_fitness == result.groups[g].records[r].best_fitness);
            CHECK(parsed.groups[g].records[r].seed == result.groups[g].records[r].seed);
        }
    }
    CHECK(wilcoxon_csv(compare(parsed)) == wilcoxon_csv(compare(result)));
    CHECK_THROWS_AS(parse_results_csv("nope\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_results_csv("algorithm,seed,final_fitness,iterations,evaluations,last_improvement\nA,1\n"),
                    std::runtime_error);
}

TEST_CASE("execute_campaign is reproducible and honours MWO_OUT_DIR")
{
    const auto a = scratch("repro_a");
    const auto b = scratch("repro_b");
    auto c = small_campaign(a, 2);
    execute_campaign(c);
    c.out_dir = b;
    execute_campaign(c);
    for (const char* f : {"results.csv", "wilcoxon.csv", "summary.csv"})
        CHECK(read_text(a / f) == read_text(b / f));
    CHECK(fs::exists(a / "runs" / "MWO.json"));
    CHECK(fs::exists(a / "campaign.json"));

    const auto env = scratch("repro_env");
    setenv("MWO_OUT_DIR", env.c_str(), 1);
    CHECK(resolve_out_dir(c) == env);
    execute_campaign(c);
    unsetenv("MWO_OUT_DIR");
    CHECK(read_text(env / "results.csv") == read_text(a / "results.csv"));
    CHECK(resolve_out_dir(c) == b);

    const auto rows = compare_directory(a);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].problem == "tf1");
    CHECK(read_text(a / "wilcoxon.csv") == read_text(b / "wilcoxon.csv"));
}

TEST_CASE("ACS campaigns load their instance")
{
    const auto dir = scratch("acs");
    save_instance(dir / "inst.json", generate_synthetic_instance(3, 2, 5, 3));
    std::ostringstream cfg;
    cfg << R"({"problem": "acs", "instance": "inst.json", "run_count": 2, "base_seed": 1, "out": ")"
        << (dir / "out").string() << R"(", "algorithms": [{"name": "MWO", "population": 6, "iterations": 5}]})";
    write_text(dir / "campaign.json", cfg.str());
    const auto c = load_campaign(dir / "campaign.json");
    const auto result = run_campaign(c);
    REQUIRE(result.groups.size() == 1);
    CHECK(result.groups[0].records.size() == 2);
    CHECK(result.groups[0].records[0].best_position.size() == 10);

    auto missing = c;
    missing.instance_path = dir / "absent.json";
    CHECK_THROWS_AS(run_campaign(missing), std::runtime_error);
}

TEST_CASE("instance JSON round trip")
{
    const auto inst = generate_synthetic_instance(17, 4, 9, 7);
    const auto back = instance_from_json(Json::parse(to_json(inst).dump()));
    CHECK(to_json(back) == to_json(inst));
    CHECK(validate_instance(back).empty());
    REQUIRE(back.materials.size() == 9);
    CHECK(back.materials[4].difficulty == inst.materials[4].difficulty);
    CHECK(back.students[2].time_upper == inst.students[2].time_upper);

    auto doc = to_json(inst);
    doc.erase("penalties");
    CHECK(instance_from_json(doc).penalties.missing == 1e8);
    doc["students"][0].erase("ability");
    CHECK_THROWS_WITH_AS(instance_from_json(doc), "students[0]: missing field 'ability'", std::runtime_error);
    doc = to_json(inst);
    doc["materials"][1]["style"] = Json::array({0.1, 0.2});
    CHECK_THROWS_AS(instance_from_json(doc), std::runtime_error);
}

TEST_CASE("run record JSON round trip")
{
    OptimizerConfig c;
    c.population_size = 6;
    c.max_iterations = 5;
    c.seed = 12345678901234ULL;
    c.bounds = Bounds::box(3, -1, 1);
    const auto rec = optimize([](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2]; }, 3,
                              c);
    FitnessBreakdown fb{1, 2, 3, 1.5};
    const auto doc = to_json(rec, "tf1", fb);
    CHECK(doc["breakdown"]["o2"] == 2.0);
    const auto back = run_record_from_json(Json::parse(doc.dump()));
    CHECK(back.seed == rec.seed);
    CHECK(back.best_position == rec.best_position);
    CHECK(back.convergence_trace == rec.convergence_trace);
    CHECK(back.evaluation_count == rec.evaluation_count);
    CHECK(back.config.bounds.lower == rec.config.bounds.lower);
    CHECK(back.config.composition == rec.config.composition);
}

TEST_CASE("sequence report and plot CSV")
{
    const auto inst = generate_synthetic_instance(2, 3, 8, 5);
    SelectionMatrix x(3, 8);
    x.set(0, 1, true);
    x.set(0, 4, true);
    x.set(2, 7, true);
    const auto seqs = build_all_sequences(x, inst, {});
    std::vector<SequenceMetrics> metrics;
    for (const auto& s : seqs)
        metrics.push_back(evaluate_sequence(s.materials(), inst, {}, s.student));
    const auto report = sequence_report(seqs, metrics);
    REQUIRE(report["students"].size() == 3);
    CHECK(report["students"][1]["sequence"].empty());
    CHECK(report["students"][0]["metrics"].contains("coverage_rate"));
    const auto csv = sequence_csv(seqs, inst);
    std::size_t items = 0;
    for (const auto& s : seqs)
        items += s.items.size();
    CHECK(items >= 1);
    CHECK(count_lines(csv) == 1 + static_cast<int>(items));
}
