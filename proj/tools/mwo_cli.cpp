// Command-line front end: instance generation and validation, single
// optimizer runs, benchmark evaluation, sequence building and campaigns.

#include "mwo/acs.hpp"
#include "mwo/benchmarks.hpp"
#include "mwo/campaign.hpp"
#include "mwo/io.hpp"
#include "mwo/sequencer.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

namespace {

using namespace mwo;

std::vector<double> read_point(const std::string& path)
{
    const auto text = read_text(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[')
        return Json::parse(text).get<std::vector<double>>();
    std::vector<double> out;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        for (char& ch : token)
            if (ch == ',')
                ch = ' ';
        std::istringstream cell(token);
        double v;
        while (cell >> v)
            out.push_back(v);
    }
    return out;
}

CoverageMode parse_coverage(const std::string& text)
{
    if (text == "per-student")
        return CoverageMode::PerStudent;
    if (text == "global")
        return CoverageMode::Global;
    throw std::runtime_error("coverage must be 'global' or 'per-student'");
}

void print_rows(const std::vector<ComparisonRow>& rows)
{
    for (const auto& r : rows)
        std::printf("%s: %s vs %s  mean %.4e vs %.4e  p=%s (%s)\n", r.problem.c_str(), r.algorithm_a.c_str(),
                    r.algorithm_b.c_str(), r.a.mean, r.b.mean, format_p_value(r.test.p_value).c_str(),
                    symbol(r.test.verdict));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Memetic walrus optimizer: curriculum sequencing and benchmark runs"};
    app.require_subcommand(1);

    // instance
    auto* instance_cmd = app.add_subcommand("instance", "Generate or validate ACS instances");
    instance_cmd->require_subcommand(1);
    auto* gen = instance_cmd->add_subcommand("gen", "Generate a synthetic instance");
    std::uint64_t gen_seed = 42;
    int students = 30, materials = 150, concepts = 20;
    std::string gen_out;
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--students", students, "Number of students");
    gen->add_option("--materials", materials, "Number of materials");
    gen->add_option("--concepts", concepts, "Number of concepts");
    gen->add_option("--out", gen_out, "Output JSON file")->required();

    auto* validate = instance_cmd->add_subcommand("validate", "Check an instance file");
    std::string validate_path;
    validate->add_option("file", validate_path, "Instance JSON")->required();

    // optimize
    auto* opt_cmd = app.add_subcommand("optimize", "Run the optimizer once");
    std::string problem;
    std::uint64_t seed = 1;
    int iters = 500, pop = 30;
    std::string ablation, instance_path, run_out, coverage = "global", composition = "exclusive";
    bool priority_limits = false;
    opt_cmd->add_option("--problem", problem, "acs or tf1..tf9")->required();
    opt_cmd->add_option("--seed", seed, "Run seed");
    opt_cmd->add_option("--iters", iters, "Maximum iterations");
    opt_cmd->add_option("--pop", pop, "Population size");
    opt_cmd->add_option("--ablation", ablation, "'wo' runs the plain walrus baseline")
        ->check(CLI::IsMember({"wo"}));
    opt_cmd->add_option("--instance", instance_path, "Instance JSON (acs)");
    opt_cmd->add_option("--coverage", coverage, "global or per-student (acs)")
        ->check(CLI::IsMember({"global", "per-student"}));
    opt_cmd->add_flag("--priority-limits", priority_limits, "Penalise class-cap overruns (acs)");
    opt_cmd->add_option("--composition", composition, "exclusive or sequential")
        ->check(CLI::IsMember({"exclusive", "sequential"}));
    opt_cmd->add_option("--out", run_out, "Write the run record JSON here");

    // benchmark
    auto* bench_cmd = app.add_subcommand("benchmark", "Benchmark functions");
    bench_cmd->require_subcommand(1);
    auto* list = bench_cmd->add_subcommand("list", "List the benchmark functions");
    auto* eval = bench_cmd->add_subcommand("eval", "Evaluate a function at a point");
    std::string fn, point_path;
    eval->add_option("--fn", fn, "Function id, e.g. tf5")->required();
    eval->add_option("--point", point_path, "File with the point (JSON array or numbers)")->required();

    // sequence
    auto* seq_cmd = app.add_subcommand("sequence", "Build learning sequences from a run");
    std::string seq_run, seq_instance, seq_out, seq_csv;
    seq_cmd->add_option("--run", seq_run, "Run record JSON")->required();
    seq_cmd->add_option("--instance", seq_instance, "Instance JSON")->required();
    seq_cmd->add_option("--out", seq_out, "Sequence report JSON")->required();
    seq_cmd->add_option("--csv", seq_csv, "Plot CSV of (position, difficulty) per student");

    // campaign
    auto* camp_cmd = app.add_subcommand("campaign", "Multi-run experiments");
    camp_cmd->require_subcommand(1);
    auto* camp_run = camp_cmd->add_subcommand("run", "Run a campaign config");
    std::string camp_config;
    camp_run->add_option("--config", camp_config, "Campaign JSON")->required();
    auto* camp_compare = camp_cmd->add_subcommand("compare", "Recompute statistics from results.csv");
    std::string camp_dir;
    camp_compare->add_option("--dir", camp_dir, "Campaign output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const auto inst = generate_synthetic_instance(gen_seed, students, materials, concepts);
            save_instance(gen_out, inst);
            std::printf("wrote %s (%d students, %d materials, %d concepts)\n", gen_out.c_str(), students, materials,
                        concepts);
        } else if (validate->parsed()) {
            const auto violations = validate_instance(load_instance(validate_path));
            for (const auto& v : violations)
                std::printf("%s: %s\n", v.field.c_str(), v.rule.c_str());
            if (!violations.empty())
                return 1;
            std::printf("valid\n");
        } else if (opt_cmd->parsed()) {
            OptimizerConfig config;
            config.population_size = pop;
            config.max_iterations = iters;
            config.seed = seed;
            config.composition =
                composition == "sequential" ? UpdateComposition::Sequential : UpdateComposition::Exclusive;
            if (ablation == "wo")
                config = wo_ablation(config);

            RunRecord record;
            std::optional<FitnessBreakdown> breakdown;
            if (problem == "acs") {
                if (instance_path.empty())
                    throw std::runtime_error("--instance is required for acs");
                const auto inst = load_instance(instance_path);
                const auto violations = validate_instance(inst);
                if (!violations.empty())
                    throw std::runtime_error("instance invalid: " + violations.front().field + ": " +
                                             violations.front().rule);
                AcsSolveOptions options;
                options.objective.coverage = parse_coverage(coverage);
                options.objective.enforce_priority_limits = priority_limits;
                record = optimize_acs(inst, config, options);
                breakdown = fitness(record.best_position, inst, options.objective);
            } else {
                const auto id = bench::parse_id(problem);
                if (!id)
                    throw std::runtime_error("unknown problem '" + problem + "'");
                const auto& meta = bench::info(*id);
                config.bounds = Bounds::box(static_cast<std::size_t>(meta.dim), meta.lower, meta.upper);
                record = optimize([&](std::span<const double> x) { return bench::evaluate(*id, x); },
                                  static_cast<std::size_t>(meta.dim), config);
            }
            std::printf("best fitness %.10e after %zu evaluations (last improvement at iteration %d)\n",
                        record.best_fitness, record.evaluation_count, record.iteration_of_last_improvement);
            if (breakdown)
                std::printf("O1 %.6g  O2 %.6g  O3 %.6g\n", breakdown->o1, breakdown->o2, breakdown->o3);
            if (!run_out.empty())
                save_run(run_out, record, problem, breakdown);
        } else if (list->parsed()) {
            std::printf("%-4s %-16s %4s %18s %12s\n", "id", "name", "dim", "bounds", "optimum");
            for (const auto& f : bench::catalog()) {
                char bounds[40];
                std::snprintf(bounds, sizeof bounds, "[%g, %g]", f.lower, f.upper);
                std::printf("%-4s %-16s %4d %18s %12g\n", f.name.c_str(), f.label.c_str(), f.dim, bounds,
                            f.known_optimum);
            }
        } else if (eval->parsed()) {
            const auto id = bench::parse_id(fn);
            if (!id)
                throw std::runtime_error("unknown function '" + fn + "'");
            const auto point = read_point(point_path);
            const auto result = bench::evaluate_checked(*id, point);
            std::printf("%.17g\n", result.value);
            if (result.out_of_bounds)
                std::fprintf(stderr, "warning: point lies outside the search box\n");
        } else if (seq_cmd->parsed()) {
            const auto inst = load_instance(seq_instance);
            const auto record = load_run(seq_run);
            const auto selection = binarize(record.best_position, inst.student_count(), inst.material_count());
            const SequenceParams params;
            const auto sequences = build_all_sequences(selection, inst, params);
            std::vector<SequenceMetrics> metrics;
            for (const auto& s : sequences)
                metrics.push_back(evaluate_sequence(s.materials(), inst, params, s.student));
            write_text(seq_out, sequence_report(sequences, metrics).dump(2) + "\n");
            if (!seq_csv.empty())
                write_text(seq_csv, sequence_csv(sequences, inst));
            std::printf("wrote %zu sequences to %s\n", sequences.size(), seq_out.c_str());
        } else if (camp_run->parsed()) {
            const auto campaign = load_campaign(camp_config);
            print_rows(execute_campaign(campaign));
            std::printf("results in %s\n", resolve_out_dir(campaign).string().c_str());
        } else if (camp_compare->parsed()) {
            print_rows(compare_directory(camp_dir));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
