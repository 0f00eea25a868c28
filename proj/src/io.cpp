#include "mwo/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mwo {

namespace {

template <typename T>
T field(const Json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key))
        throw std::runtime_error(where + ": missing field '" + key + "'");
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw std::runtime_error(where + ": field '" + key + "' has the wrong type");
    }
}

Style style_from(const Json& obj, const std::string& where)
{
    const auto v = field<std::vector<double>>(obj, "style", where);
    if (v.size() != 4)
        throw std::runtime_error(where + ": style must have 4 entries");
    return {v[0], v[1], v[2], v[3]};
}

ConceptSet concepts_from(const Json& obj, const char* key, const std::string& where)
{
    const auto v = field<std::vector<int>>(obj, key, where);
    return {v.begin(), v.end()};
}

Json style_json(const Style& s)
{
    return Json::array({s[0], s[1], s[2], s[3]});
}

UpdateComposition composition_from(const std::string& text)
{
    if (text == "exclusive")
        return UpdateComposition::Exclusive;
    if (text == "sequential")
        return UpdateComposition::Sequential;
    throw std::runtime_error("unknown update composition '" + text + "'");
}

} // namespace

Json to_json(const AcsInstance& instance)
{
    Json doc;
    doc["students"] = Json::array();
    for (const auto& s : instance.students)
        doc["students"].push_back({{"id", s.id},
                                   {"required_concepts", std::vector<int>(s.required_concepts.begin(),
                                                                          s.required_concepts.end())},
                                   {"ability", s.ability},
                                   {"time_lower", s.time_lower},
                                   {"time_upper", s.time_upper},
                                   {"style", style_json(s.style)}});
    doc["materials"] = Json::array();
    for (const auto& m : instance.materials)
        doc["materials"].push_back({{"id", m.id},
                                    {"concepts", std::vector<int>(m.concepts.begin(), m.concepts.end())},
                                    {"difficulty", m.difficulty},
                                    {"duration", m.duration},
                                    {"style", style_json(m.style)}});
    Json edges = Json::array();
    for (const auto& e : instance.graph.prerequisites)
        edges.push_back({{"from", e.from}, {"to", e.to}, {"strength", e.strength}});
    Json importance = Json::object();
    for (const auto& [id, w] : instance.graph.importance)
        importance[std::to_string(id)] = w;
    doc["graph"] = {{"concept_count", instance.graph.concept_count},
                    {"prerequisites", edges},
                    {"importance", importance}};
    doc["penalties"] = {{"redundant", instance.penalties.redundant},
                        {"missing", instance.penalties.missing},
                        {"time", instance.penalties.time}};
    doc["weights"] = {{"coverage", instance.weights.coverage},
                      {"time", instance.weights.time},
                      {"style", instance.weights.style}};
    doc["priority_limits"] = {{"high", instance.limits.high},
                              {"medium", instance.limits.medium},
                              {"challenging", instance.limits.challenging}};
    return doc;
}

AcsInstance instance_from_json(const Json& doc)
{
    AcsInstance inst;
    const auto students = field<Json>(doc, "students", "instance");
    const auto materials = field<Json>(doc, "materials", "instance");
    if (!students.is_array() || !materials.is_array())
        throw std::runtime_error("instance: students and materials must be arrays");

    for (std::size_t i = 0; i < students.size(); ++i) {
        const std::string where = "students[" + std::to_string(i) + "]";
        const auto& js = students[i];
        StudentProfile s;
        s.id = field<int>(js, "id", where);
        s.required_concepts = concepts_from(js, "required_concepts", where);
        s.ability = field<double>(js, "ability", where);
        s.time_lower = field<double>(js, "time_lower", where);
        s.time_upper = field<double>(js, "time_upper", where);
        s.style = style_from(js, where);
        inst.students.push_back(std::move(s));
    }
    for (std::size_t j = 0; j < materials.size(); ++j) {
        const std::string where = "materials[" + std::to_string(j) + "]";
        const auto& jm = materials[j];
        LearningMaterial m;
        m.id = field<int>(jm, "id", where);
        m.concepts = concepts_from(jm, "concepts", where);
        m.difficulty = field<double>(jm, "difficulty", where);
        m.duration = field<double>(jm, "duration", where);
        m.style = style_from(jm, where);
        inst.materials.push_back(std::move(m));
    }

    const auto graph = field<Json>(doc, "graph", "instance");
    inst.graph.concept_count = field<int>(graph, "concept_count", "graph");
    const auto edges = field<Json>(graph, "prerequisites", "graph");
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const std::string where = "graph.prerequisites[" + std::to_string(k) + "]";
        inst.graph.prerequisites.push_back({field<int>(edges[k], "from", where), field<int>(edges[k], "to", where),
                                            field<double>(edges[k], "strength", where)});
    }
    const auto importance = field<Json>(graph, "importance", "graph");
    if (!importance.is_object())
        throw std::runtime_error("graph: importance must be an object keyed by material id");
    for (const auto& [key, value] : importance.items()) {
        try {
            inst.graph.importance[std::stoi(key)] = value.get<double>();
        } catch (const std::exception&) {
            throw std::runtime_error("graph.importance: bad entry '" + key + "'");
        }
    }

    if (doc.contains("penalties")) {
        const auto& p = doc["penalties"];
        inst.penalties = {field<double>(p, "redundant", "penalties"), field<double>(p, "missing", "penalties"),
                          field<double>(p, "time", "penalties")};
    }
    if (doc.contains("weights")) {
        const auto& w = doc["weights"];
        inst.weights = {field<double>(w, "coverage", "weights"), field<double>(w, "time", "weights"),
                        field<double>(w, "style", "weights")};
    }
    if (doc.contains("priority_limits")) {
        const auto& l = doc["priority_limits"];
        inst.limits = {field<int>(l, "high", "priority_limits"), field<int>(l, "medium", "priority_limits"),
                       field<int>(l, "challenging", "priority_limits")};
    }
    return inst;
}

void save_instance(const std::filesystem::path& path, const AcsInstance& instance)
{
    write_text(path, to_json(instance).dump(2) + "\n");
}

AcsInstance load_instance(const std::filesystem::path& path)
{
    return instance_from_json(read_json(path));
}

const char* to_string(UpdateComposition c)
{
    return c == UpdateComposition::Exclusive ? "exclusive" : "sequential";
}

Json to_json(const OptimizerConfig& config)
{
    return {{"population_size", config.population_size},
            {"max_iterations", config.max_iterations},
            {"aging_rate", config.aging_rate},
            {"max_age_fraction", config.max_age_fraction},
            {"male_fraction", config.male_fraction},
            {"female_fraction", config.female_fraction},
            {"child_fraction", config.child_fraction},
            {"expert_guidance_enabled", config.expert_guidance_enabled},
            {"nonlinear_danger_enabled", config.nonlinear_danger_enabled},
            {"update_composition", to_string(config.composition)},
            {"seed", config.seed},
            {"lower", config.bounds.lower},
            {"upper", config.bounds.upper}};
}

OptimizerConfig config_from_json(const Json& doc)
{
    const std::string where = "config";
    OptimizerConfig c;
    c.population_size = field<int>(doc, "population_size", where);
    c.max_iterations = field<int>(doc, "max_iterations", where);
    c.aging_rate = field<double>(doc, "aging_rate", where);
    c.max_age_fraction = field<double>(doc, "max_age_fraction", where);
    c.male_fraction = field<double>(doc, "male_fraction", where);
    c.female_fraction = field<double>(doc, "female_fraction", where);
    c.child_fraction = field<double>(doc, "child_fraction", where);
    c.expert_guidance_enabled = field<bool>(doc, "expert_guidance_enabled", where);
    c.nonlinear_danger_enabled = field<bool>(doc, "nonlinear_danger_enabled", where);
    c.composition = composition_from(field<std::string>(doc, "update_composition", where));
    c.seed = field<std::uint64_t>(doc, "seed", where);
    c.bounds.lower = field<std::vector<double>>(doc, "lower", where);
    c.bounds.upper = field<std::vector<double>>(doc, "upper", where);
    return c;
}

Json to_json(const RunRecord& record, const std::string& problem, const std::optional<FitnessBreakdown>& breakdown)
{
    Json doc;
    if (!problem.empty())
        doc["problem"] = problem;
    doc["seed"] = record.seed;
    doc["config"] = to_json(record.config);
    doc["convergence_trace"] = record.convergence_trace;
    doc["best_fitness"] = record.best_fitness;
    doc["best_position"] = record.best_position;
    doc["evaluation_count"] = record.evaluation_count;
    doc["iteration_of_last_improvement"] = record.iteration_of_last_improvement;
    if (breakdown)
        doc["breakdown"] = {{"o1", breakdown->o1}, {"o2", breakdown->o2}, {"o3", breakdown->o3},
                            {"total", breakdown->total}};
    return doc;
}

RunRecord run_record_from_json(const Json& doc)
{
    const std::string where = "run record";
    RunRecord r;
    r.seed = field<std::uint64_t>(doc, "seed", where);
    r.config = config_from_json(field<Json>(doc, "config", where));
    r.convergence_trace = field<std::vector<double>>(doc, "convergence_trace", where);
    r.best_fitness = field<double>(doc, "best_fitness", where);
    r.best_position = field<std::vector<double>>(doc, "best_position", where);
    r.evaluation_count = field<std::size_t>(doc, "evaluation_count", where);
    r.iteration_of_last_improvement = field<int>(doc, "iteration_of_last_improvement", where);
    return r;
}

void save_run(const std::filesystem::path& path, const RunRecord& record, const std::string& problem,
              const std::optional<FitnessBreakdown>& breakdown)
{
    write_text(path, to_json(record, problem, breakdown).dump(2) + "\n");
}

RunRecord load_run(const std::filesystem::path& path)
{
    return run_record_from_json(read_json(path));
}

Json sequence_report(const std::vector<LearningSequence>& sequences, const std::vector<SequenceMetrics>& metrics)
{
    if (sequences.size() != metrics.size())
        throw std::invalid_argument("one metrics entry per sequence expected");
    Json students = Json::array();
    for (std::size_t i = 0; i < sequences.size(); ++i) {
        const auto& m = metrics[i];
        Json scores = Json::array();
        for (const auto& it : sequences[i].items)
            scores.push_back({{"material", it.material},
                              {"class", to_string(it.priority)},
                              {"P", it.p},
                              {"M", it.m},
                              {"C", it.c},
                              {"S", it.s}});
        students.push_back({{"student", sequences[i].student},
                            {"sequence", sequences[i].materials()},
                            {"scores", scores},
                            {"metrics",
                             {{"coverage_rate", m.coverage_rate},
                              {"difficulty_progression", m.difficulty_progression},
                              {"difficulty_alignment", m.difficulty_alignment},
                              {"time_satisfaction", m.time_satisfaction},
                              {"prerequisite_compliance", m.prerequisite_compliance}}}});
    }
    return {{"students", students}};
}

std::string sequence_csv(const std::vector<LearningSequence>& sequences, const AcsInstance& instance)
{
    std::ostringstream out;
    out << "student,position,material,difficulty\n";
    for (const auto& seq : sequences)
        for (std::size_t k = 0; k < seq.items.size(); ++k) {
            const int id = seq.items[k].material;
            out << seq.student << ',' << k + 1 << ',' << id << ','
                << format_double(instance.materials.at(static_cast<std::size_t>(id)).difficulty) << '\n';
        }
    return out.str();
}

std::string format_double(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec)
            throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read_json(const std::filesystem::path& path)
{
    try {
        return Json::parse(read_text(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

} // namespace mwo
