#include "mwo/campaign.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace mwo {

namespace {

std::string safe_name(const std::string& name)
{
    std::string out;
    for (char ch : name)
        out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_') ? ch : '_';
    return out;
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep))
        out.push_back(cell);
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

} // namespace

Campaign campaign_from_json(const Json& doc, const std::filesystem::path& base_dir)
{
    if (!doc.is_object())
        throw std::runtime_error("campaign config must be a JSON object");
    Campaign c;
    try {
        c.problem = doc.at("problem").get<std::string>();
        if (c.problem == "acs") {
            std::filesystem::path p = doc.at("instance").get<std::string>();
            c.instance_path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
            const auto coverage = doc.value("coverage", std::string("global"));
            if (coverage == "per-student")
                c.acs.objective.coverage = CoverageMode::PerStudent;
            else if (coverage != "global")
                throw std::runtime_error("coverage must be 'global' or 'per-student'");
            c.acs.objective.enforce_priority_limits = doc.value("priority_limits", false);
        } else if (!bench::parse_id(c.problem)) {
            throw std::runtime_error("unknown problem '" + c.problem + "'");
        } else {
            c.problem = bench::info(*bench::parse_id(c.problem)).name;
        }

        for (const auto& a : doc.at("algorithms")) {
            AlgorithmSpec spec;
            spec.name = a.at("name").get<std::string>();
            spec.variant = a.value("variant", std::string("mwo"));
            spec.population = a.value("population", 30);
            spec.iterations = a.value("iterations", 500);
            const auto comp = a.value("composition", std::string("exclusive"));
            if (comp == "sequential")
                spec.composition = UpdateComposition::Sequential;
            else if (comp != "exclusive")
                throw std::runtime_error("composition must be 'exclusive' or 'sequential'");
            if (spec.variant != "mwo" && spec.variant != "wo")
                throw std::runtime_error("algorithm variant must be 'mwo' or 'wo'");
            c.algorithms.push_back(std::move(spec));
        }
        c.run_count = doc.value("run_count", 30);
        c.base_seed = doc.value("base_seed", std::uint64_t{1});
        c.out_dir = doc.value("out", std::string("results"));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("campaign config: ") + e.what());
    }
    if (c.algorithms.empty())
        throw std::runtime_error("campaign config lists no algorithms");
    if (c.run_count < 1)
        throw std::runtime_error("run_count must be at least 1");
    for (std::size_t i = 0; i < c.algorithms.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (c.algorithms[i].name == c.algorithms[j].name)
                throw std::runtime_error("duplicate algorithm name '" + c.algorithms[i].name + "'");
    return c;
}

Campaign load_campaign(const std::filesystem::path& path)
{
    return campaign_from_json(read_json(path), path.parent_path());
}

Json to_json(const Campaign& campaign)
{
    Json doc;
    doc["problem"] = campaign.problem;
    if (campaign.problem == "acs") {
        doc["instance"] = campaign.instance_path.string();
        doc["coverage"] = campaign.acs.objective.coverage == CoverageMode::PerStudent ? "per-student" : "global";
        doc["priority_limits"] = campaign.acs.objective.enforce_priority_limits;
    }
    doc["algorithms"] = Json::array();
    for (const auto& a : campaign.algorithms)
        doc["algorithms"].push_back({{"name", a.name},
                                     {"variant", a.variant},
                                     {"population", a.population},
                                     {"iterations", a.iterations},
                                     {"composition", to_string(a.composition)}});
    doc["run_count"] = campaign.run_count;
    doc["base_seed"] = campaign.base_seed;
    doc["out"] = campaign.out_dir.string();
    return doc;
}

OptimizerConfig make_config(const AlgorithmSpec& spec, std::uint64_t seed)
{
    OptimizerConfig c;
    c.population_size = spec.population;
    c.max_iterations = spec.iterations;
    c.composition = spec.composition;
    c.seed = seed;
    return spec.variant == "wo" ? wo_ablation(c) : c;
}

CampaignResult run_campaign(const Campaign& campaign)
{
    CampaignResult out;
    out.problem = campaign.problem;

    std::optional<AcsInstance> instance;
    std::optional<bench::FunctionId> function;
    if (campaign.problem == "acs") {
        instance = load_instance(campaign.instance_path);
        const auto violations = validate_instance(*instance);
        if (!violations.empty())
            throw std::runtime_error("instance invalid: " + violations.front().field + ": " +
                                     violations.front().rule);
    } else {
        function = bench::parse_id(campaign.problem);
        if (!function)
            throw std::runtime_error("unknown problem '" + campaign.problem + "'");
    }

    for (const auto& spec : campaign.algorithms) {
        AlgorithmRuns group;
        group.name = spec.name;
        for (int r = 0; r < campaign.run_count; ++r) {
            auto config = make_config(spec, campaign.base_seed + static_cast<std::uint64_t>(r));
            if (instance) {
                group.records.push_back(optimize_acs(*instance, config, campaign.acs));
            } else {
                const auto& meta = bench::info(*function);
                config.bounds = Bounds::box(static_cast<std::size_t>(meta.dim), meta.lower, meta.upper);
                const auto id = *function;
                group.records.push_back(optimize([id](std::span<const double> x) { return bench::evaluate(id, x); },
                                                 static_cast<std::size_t>(meta.dim), config));
            }
        }
        out.groups.push_back(std::move(group));
    }
    return out;
}

std::vector<double> final_fitness(const AlgorithmRuns& runs)
{
    std::vector<double> out;
    out.reserve(runs.records.size());
    for (const auto& r : runs.records)
        out.push_back(r.best_fitness);
    return out;
}

std::vector<Summary> summarize(const CampaignResult& result)
{
    std::vector<Summary> out;
    for (const auto& g : result.groups)
        out.push_back(summarize(final_fitness(g)));
    return out;
}

std::vector<ComparisonRow> compare(const CampaignResult& result)
{
    std::vector<ComparisonRow> rows;
    if (result.groups.empty())
        return rows;
    const auto base = final_fitness(result.groups.front());
    for (std::size_t g = 1; g < result.groups.size(); ++g) {
        const auto other = final_fitness(result.groups[g]);
        ComparisonRow row;
        row.problem = result.problem;
        row.algorithm_a = result.groups.front().name;
        row.algorithm_b = result.groups[g].name;
        row.a = summarize(base);
        row.b = summarize(other);
        row.test = wilcoxon_rank_sum(base, other);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_p_value(double p)
{
    if (std::isnan(p))
        return "NaN";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2E", p);
    return buf;
}

std::string results_csv(const CampaignResult& result)
{
    std::ostringstream out;
    out << "algorithm,seed,final_fitness,iterations,evaluations,last_improvement\n";
    for (const auto& g : result.groups)
        for (const auto& r : g.records)
            out << g.name << ',' << r.seed << ',' << format_double(r.best_fitness) << ','
                << r.convergence_trace.size() << ',' << r.evaluation_count << ',' << r.iteration_of_last_improvement
                << '\n';
    return out.str();
}

std::string summary_csv(const CampaignResult& result)
{
    std::ostringstream out;
    out << "problem,algorithm,runs,mean,std,best,worst\n";
    const auto sums = summarize(result);
    for (std::size_t g = 0; g < result.groups.size(); ++g) {
        const auto& s = sums[g];
        out << result.problem << ',' << result.groups[g].name << ',' << s.count << ',' << format_double(s.mean)
            << ',' << format_double(s.std) << ',' << format_double(s.best) << ',' << format_double(s.worst) << '\n';
    }
    return out.str();
}

std::string wilcoxon_csv(const std::vector<ComparisonRow>& rows)
{
    std::ostringstream out;
    out << "problem,algorithm_a,algorithm_b,mean_a,std_a,mean_b,std_b,p_value,verdict\n";
    for (const auto& r : rows)
        out << r.problem << ',' << r.algorithm_a << ',' << r.algorithm_b << ',' << format_double(r.a.mean) << ','
            << format_double(r.a.std) << ',' << format_double(r.b.mean) << ',' << format_double(r.b.std) << ','
            << format_p_value(r.test.p_value) << ',' << symbol(r.test.verdict) << '\n';
    return out.str();
}

std::string trace_csv(const RunRecord& record)
{
    std::ostringstream out;
    out << "iteration,best_fitness\n";
    for (std::size_t t = 0; t < record.convergence_trace.size(); ++t)
        out << t + 1 << ',' << format_double(record.convergence_trace[t]) << '\n';
    return out.str();
}

void export_results(const CampaignResult& result, const std::vector<ComparisonRow>& rows,
                    const std::filesystem::path& out_dir)
{
    write_text(out_dir / "results.csv", results_csv(result));
    write_text(out_dir / "summary.csv", summary_csv(result));
    write_text(out_dir / "wilcoxon.csv", wilcoxon_csv(rows));
    for (const auto& g : result.groups)
        for (const auto& r : g.records)
            if (!r.convergence_trace.empty())
                write_text(out_dir / "traces" / (safe_name(g.name) + "_" + std::to_string(r.seed) + ".csv"),
                           trace_csv(r));
}

void persist_runs(const CampaignResult& result, const std::filesystem::path& out_dir)
{
    for (const auto& g : result.groups) {
        Json runs = Json::array();
        for (const auto& r : g.records)
            runs.push_back(to_json(r, result.problem));
        write_text(out_dir / "runs" / (safe_name(g.name) + ".json"), runs.dump(1) + "\n");
    }
}

std::filesystem::path resolve_out_dir(const Campaign& campaign)
{
    if (const char* env = std::getenv("MWO_OUT_DIR"); env && *env)
        return env;
    return campaign.out_dir;
}

std::vector<ComparisonRow> execute_campaign(const Campaign& campaign)
{
    const auto dir = resolve_out_dir(campaign);
    const auto result = run_campaign(campaign);
    const auto rows = compare(result);
    write_text(dir / "campaign.json", to_json(campaign).dump(2) + "\n");
    persist_runs(result, dir);
    export_results(result, rows, dir);
    return rows;
}

CampaignResult parse_results_csv(const std::string& text, const std::string& problem)
{
    CampaignResult out;
    out.problem = problem;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("algorithm,seed,final_fitness", 0) != 0)
        throw std::runtime_error("results.csv: unexpected header");
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        const auto cells = split(line, ',');
        if (cells.size() != 6)
            throw std::runtime_error("results.csv line " + std::to_string(line_no) + ": expected 6 columns");
        RunRecord r;
        try {
            r.seed = std::stoull(cells[1]);
            r.best_fitness = std::strtod(cells[2].c_str(), nullptr);
            r.evaluation_count = std::stoull(cells[4]);
            r.iteration_of_last_improvement = std::stoi(cells[5]);
            static_cast<void>(std::stoi(cells[3]));
        } catch (const std::exception&) {
            throw std::runtime_error("results.csv line " + std::to_string(line_no) + ": malformed number");
        }
        auto it = std::find_if(out.groups.begin(), out.groups.end(),
                               [&](const AlgorithmRuns& g) { return g.name == cells[0]; });
        if (it == out.groups.end()) {
            out.groups.push_back({cells[0], {}});
            it = std::prev(out.groups.end());
        }
        it->records.push_back(std::move(r));
    }
    return out;
}

std::vector<ComparisonRow> compare_directory(const std::filesystem::path& dir)
{
    std::string problem;
    if (std::filesystem::exists(dir / "campaign.json"))
        problem = read_json(dir / "campaign.json").value("problem", std::string());
    const auto result = parse_results_csv(read_text(dir / "results.csv"), problem);
    const auto rows = compare(result);
    write_text(dir / "summary.csv", summary_csv(result));
    write_text(dir / "wilcoxon.csv", wilcoxon_csv(rows));
    return rows;
}

} // namespace mwo
