#include "mwo/core_model.hpp"

#include "mwo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mwo {

std::vector<Prerequisite> ConceptGraph::prerequisites_of(int material) const
{
    std::vector<Prerequisite> out;
    for (const auto& edge : prerequisites)
        if (edge.to == material)
            out.push_back(edge);
    return out;
}

namespace {

bool in_unit(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

std::string indexed(const char* name, std::size_t i)
{
    return std::string(name) + "[" + std::to_string(i) + "]";
}

void check_concepts(const ConceptSet& concepts, int concept_count, const std::string& field,
                    std::vector<Violation>& out)
{
    if (concepts.empty())
        out.push_back({field, "concept set empty"});
    for (int c : concepts)
        if (c < 0 || c >= concept_count) {
            out.push_back({field, "concept " + std::to_string(c) + " outside concept set"});
            break;
        }
}

void check_style(const Style& style, const std::string& field, std::vector<Violation>& out)
{
    for (double v : style)
        if (!in_unit(v)) {
            out.push_back({field, "style entry outside [0,1]"});
            return;
        }
}

bool has_cycle(int nodes, const std::vector<Prerequisite>& edges)
{
    std::vector<std::vector<int>> next(static_cast<std::size_t>(nodes));
    std::vector<int> indegree(static_cast<std::size_t>(nodes), 0);
    for (const auto& e : edges) {
        if (e.from < 0 || e.from >= nodes || e.to < 0 || e.to >= nodes)
            continue;
        next[static_cast<std::size_t>(e.from)].push_back(e.to);
        ++indegree[static_cast<std::size_t>(e.to)];
    }
    std::vector<int> ready;
    for (int v = 0; v < nodes; ++v)
        if (indegree[static_cast<std::size_t>(v)] == 0)
            ready.push_back(v);
    int visited = 0;
    while (!ready.empty()) {
        const int v = ready.back();
        ready.pop_back();
        ++visited;
        for (int w : next[static_cast<std::size_t>(v)])
            if (--indegree[static_cast<std::size_t>(w)] == 0)
                ready.push_back(w);
    }
    return visited != nodes;
}

} // namespace

std::vector<Violation> validate_instance(const AcsInstance& instance)
{
    std::vector<Violation> out;
    const int concept_count = instance.graph.concept_count;
    if (concept_count < 1)
        out.push_back({"graph.concept_count", "must be at least 1"});

    for (std::size_t i = 0; i < instance.students.size(); ++i) {
        const auto& s = instance.students[i];
        const std::string field = indexed("students", i);
        if (s.id != static_cast<int>(i))
            out.push_back({field + ".id", "ids must be zero-based and dense"});
        check_concepts(s.required_concepts, concept_count, field + ".required_concepts", out);
        if (!in_unit(s.ability))
            out.push_back({field + ".ability", "ability outside [0,1]"});
        if (!(s.time_lower <= s.time_upper))
            out.push_back({field + ".time_lower", "time range inverted"});
        if (s.time_lower < 0.0)
            out.push_back({field + ".time_lower", "negative time"});
        check_style(s.style, field + ".style", out);
    }

    for (std::size_t j = 0; j < instance.materials.size(); ++j) {
        const auto& m = instance.materials[j];
        const std::string field = indexed("materials", j);
        if (m.id != static_cast<int>(j))
            out.push_back({field + ".id", "ids must be zero-based and dense"});
        check_concepts(m.concepts, concept_count, field + ".concepts", out);
        if (!in_unit(m.difficulty))
            out.push_back({field + ".difficulty", "difficulty outside [0,1]"});
        if (!(m.duration > 0.0))
            out.push_back({field + ".duration", "duration must be positive"});
        check_style(m.style, field + ".style", out);
    }

    const int t_m = instance.material_count();
    const auto& graph = instance.graph;
    for (std::size_t e = 0; e < graph.prerequisites.size(); ++e) {
        const auto& edge = graph.prerequisites[e];
        const std::string field = indexed("graph.prerequisites", e);
        if (edge.from < 0 || edge.from >= t_m || edge.to < 0 || edge.to >= t_m)
            out.push_back({field, "unknown material"});
        else if (edge.from == edge.to)
            out.push_back({field, "prerequisite cycle"});
        if (!(edge.strength > 0.0 && edge.strength <= 1.0))
            out.push_back({field + ".strength", "strength outside (0,1]"});
    }
    if (has_cycle(t_m, graph.prerequisites))
        out.push_back({"graph.prerequisites", "prerequisite cycle"});
    for (int j = 0; j < t_m; ++j) {
        auto it = graph.importance.find(j);
        if (it == graph.importance.end())
            out.push_back({"graph.importance", "missing weight for material " + std::to_string(j)});
        else if (!(it->second >= 0.0))
            out.push_back({"graph.importance", "negative weight for material " + std::to_string(j)});
    }

    const auto& lim = instance.limits;
    if (!(lim.medium > lim.high && lim.high > lim.challenging))
        out.push_back({"priority_limits", "requires medium > high > challenging"});
    if (lim.challenging < 0)
        out.push_back({"priority_limits", "negative limit"});

    const auto& w = instance.weights;
    if (w.coverage < 0.0 || w.time < 0.0 || w.style < 0.0)
        out.push_back({"weights", "weights must be nonnegative"});
    const auto& p = instance.penalties;
    if (p.redundant < 0.0 || p.missing < 0.0 || p.time < 0.0)
        out.push_back({"penalties", "penalties must be nonnegative"});

    if (instance.dim() == 0)
        out.push_back({"students", "dimension Ts x Tm must be positive"});
    return out;
}

namespace {

// Fills `sets` so that every concept lands in at least one set, then tops each
// set up to a random size in [1, max_size].
void assign_concepts(Rng& rng, std::vector<ConceptSet>& sets, int t_c, int max_size)
{
    const int n = static_cast<int>(sets.size());
    std::vector<int> owners(static_cast<std::size_t>(n));
    std::iota(owners.begin(), owners.end(), 0);
    rng.shuffle(owners);
    for (int c = 0; c < t_c; ++c)
        sets[static_cast<std::size_t>(owners[static_cast<std::size_t>(c % n)])].insert(c);
    const int cap = std::min(max_size, t_c);
    for (auto& set : sets) {
        const int target = rng.integer(1, cap);
        while (static_cast<int>(set.size()) < target)
            set.insert(rng.integer(0, t_c - 1));
    }
}

Style random_style(Rng& rng)
{
    Style s{};
    for (auto& v : s)
        v = rng.uniform();
    return s;
}

} // namespace

AcsInstance generate_synthetic_instance(std::uint64_t seed, int t_s, int t_m, int t_c)
{
    if (t_s < 1 || t_m < 1 || t_c < 1)
        throw std::invalid_argument("student, material and concept counts must be at least 1");
    if (t_c > t_m * kMaxMaterialConcepts)
        throw std::invalid_argument("too many concepts for the material count");
    if (t_c > t_s * kMaxRequiredConcepts)
        throw std::invalid_argument("too many concepts for the student count");

    Rng rng(seed);
    AcsInstance inst;
    inst.graph.concept_count = t_c;

    std::vector<ConceptSet> material_sets(static_cast<std::size_t>(t_m));
    assign_concepts(rng, material_sets, t_c, kMaxMaterialConcepts);
    inst.materials.resize(static_cast<std::size_t>(t_m));
    for (int j = 0; j < t_m; ++j) {
        auto& m = inst.materials[static_cast<std::size_t>(j)];
        m.id = j;
        m.concepts = std::move(material_sets[static_cast<std::size_t>(j)]);
        m.difficulty = rng.uniform();
        m.duration = rng.uniform(0.5, 3.0);
        m.style = random_style(rng);
    }

    std::vector<std::vector<int>> carriers(static_cast<std::size_t>(t_c));
    for (const auto& m : inst.materials)
        for (int c : m.concepts)
            carriers[static_cast<std::size_t>(c)].push_back(m.id);

    std::vector<ConceptSet> required_sets(static_cast<std::size_t>(t_s));
    assign_concepts(rng, required_sets, t_c, kMaxRequiredConcepts);
    inst.students.resize(static_cast<std::size_t>(t_s));
    for (int i = 0; i < t_s; ++i) {
        auto& s = inst.students[static_cast<std::size_t>(i)];
        s.id = i;
        s.required_concepts = std::move(required_sets[static_cast<std::size_t>(i)]);
        s.ability = rng.uniform();
        s.style = random_style(rng);

        // Planted selection: one carrier per required concept. The ability is
        // raised to the hardest carrier so the planted materials are never
        // challenging and a selection within every class cap exists.
        std::set<int> planted;
        for (int c : s.required_concepts) {
            const auto& pool = carriers[static_cast<std::size_t>(c)];
            planted.insert(pool[rng.index(pool.size())]);
        }
        double total = 0.0;
        for (int j : planted) {
            total += inst.materials[static_cast<std::size_t>(j)].duration;
            s.ability = std::max(s.ability, inst.materials[static_cast<std::size_t>(j)].difficulty);
        }
        s.time_lower = 0.75 * total;
        s.time_upper = 1.25 * total + 1.0;
    }

    // Prerequisites only point from easier to harder materials.
    std::vector<int> order(static_cast<std::size_t>(t_m));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return inst.materials[static_cast<std::size_t>(a)].difficulty <
               inst.materials[static_cast<std::size_t>(b)].difficulty;
    });
    for (int pos = 1; pos < t_m; ++pos) {
        const double u = rng.uniform();
        const int wanted = std::min(u < 0.4 ? 0 : (u < 0.8 ? 1 : 2), pos);
        for (int earlier : rng.sample(pos, wanted)) {
            const double strength = 1.0 - rng.uniform();
            inst.graph.prerequisites.push_back(
                {order[static_cast<std::size_t>(earlier)], order[static_cast<std::size_t>(pos)], strength});
        }
    }
    for (int j = 0; j < t_m; ++j)
        inst.graph.importance[j] = rng.uniform();

    return inst;
}

SelectionMatrix::SelectionMatrix(int students, int materials)
    : students_(students), materials_(materials),
      cells_(static_cast<std::size_t>(students) * static_cast<std::size_t>(materials), 0)
{
    if (students < 0 || materials < 0)
        throw std::invalid_argument("negative selection matrix extent");
}

SelectionMatrix binarize(std::span<const double> position, int t_s, int t_m)
{
    if (t_s < 0 || t_m < 0 ||
        position.size() != static_cast<std::size_t>(t_s) * static_cast<std::size_t>(t_m))
        throw std::invalid_argument("position length does not match Ts x Tm");
    SelectionMatrix x(t_s, t_m);
    for (int i = 0; i < t_s; ++i)
        for (int j = 0; j < t_m; ++j)
            x.set(i, j, position[static_cast<std::size_t>(i) * static_cast<std::size_t>(t_m) +
                                 static_cast<std::size_t>(j)] > 0.5);
    return x;
}

const char* to_string(PriorityClass c)
{
    switch (c) {
    case PriorityClass::High: return "high";
    case PriorityClass::Medium: return "medium";
    case PriorityClass::Challenging: return "challenging";
    }
    return "?";
}

ClassifiedMaterial classify(const StudentProfile& student, const LearningMaterial& material)
{
    ClassifiedMaterial out;
    out.material = material.id;
    out.full_coverage = std::includes(material.concepts.begin(), material.concepts.end(),
                                      student.required_concepts.begin(), student.required_concepts.end());
    if (material.difficulty > student.ability)
        out.priority = PriorityClass::Challenging;
    else
        out.priority = out.full_coverage ? PriorityClass::High : PriorityClass::Medium;
    return out;
}

std::vector<ClassifiedMaterial> classify_materials(const AcsInstance& instance, int student_index)
{
    if (student_index < 0 || student_index >= instance.student_count())
        throw std::out_of_range("student index out of range");
    const auto& student = instance.students[static_cast<std::size_t>(student_index)];

    std::vector<int> order(instance.materials.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return instance.materials[static_cast<std::size_t>(a)].difficulty <
               instance.materials[static_cast<std::size_t>(b)].difficulty;
    });

    std::vector<ClassifiedMaterial> out;
    out.reserve(order.size());
    for (int j : order)
        out.push_back(classify(student, instance.materials[static_cast<std::size_t>(j)]));
    return out;
}

} // namespace mwo
