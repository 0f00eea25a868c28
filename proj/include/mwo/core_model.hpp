#pragma once

// Domain model for adaptive curriculum sequencing (ACS) instances: students,
// learning materials, the prerequisite graph over materials, and the penalty
// and weight parameters of the selection objective.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace mwo {

using ConceptSet = std::set<int>;

/// Learning-style vector over the four FSLSM dimensions
/// (processing, perception, input, understanding), each in [0, 1].
using Style = std::array<double, 4>;

struct StudentProfile {
    int id = 0;
    ConceptSet required_concepts;
    double ability = 0.0;
    double time_lower = 0.0; // hours
    double time_upper = 0.0; // hours
    Style style{};
};

struct LearningMaterial {
    int id = 0;
    ConceptSet concepts;
    double difficulty = 0.0;
    double duration = 0.0; // hours
    Style style{};
};

/// Directed edge `from -> to`: material `from` must be studied before `to`.
struct Prerequisite {
    int from = 0;
    int to = 0;
    double strength = 1.0; // in (0, 1]
};

struct ConceptGraph {
    int concept_count = 0;
    std::vector<Prerequisite> prerequisites;
    std::map<int, double> importance; // material id -> weight >= 0

    /// Edges ending at `material`, in storage order.
    std::vector<Prerequisite> prerequisites_of(int material) const;
};

struct Penalties {
    double redundant = 1.0;  // per redundant concept
    double missing = 1e8;    // per missing required concept
    double time = 1000.0;    // per student outside the time window
};

struct ObjectiveWeights {
    double coverage = 0.25;
    double time = 0.25;
    double style = 0.25;
};

/// Per-class caps used when building sequences. Must satisfy medium > high > challenging.
struct PriorityLimits {
    int high = 3;
    int medium = 6;
    int challenging = 1;
};

struct AcsInstance {
    std::vector<StudentProfile> students;
    std::vector<LearningMaterial> materials;
    ConceptGraph graph;
    Penalties penalties;
    ObjectiveWeights weights;
    PriorityLimits limits;

    int student_count() const { return static_cast<int>(students.size()); }
    int material_count() const { return static_cast<int>(materials.size()); }
    std::size_t dim() const { return students.size() * materials.size(); }
};

struct Violation {
    std::string field;
    std::string rule;
};

/// Checks every structural invariant of an instance. An empty result means valid.
std::vector<Violation> validate_instance(const AcsInstance& instance);

/// Seeded synthetic instance with `t_s` students, `t_m` materials and `t_c` concepts.
///
/// Every concept is carried by at least one material and required by at least
/// one student. Each student's time window is built around a planted selection
/// of at most three materials that covers the student's requirements, and the
/// student's ability is at least the difficulty of each planted material, so a
/// selection meeting every constraint and class cap always exists. Prerequisite edges only run from easier to harder materials, which
/// keeps the graph acyclic.
///
/// Throws std::invalid_argument when a count is below 1 or when `t_c` exceeds
/// the number of concept slots available to materials or to students.
AcsInstance generate_synthetic_instance(std::uint64_t seed, int t_s, int t_m, int t_c);

inline constexpr int kMaxMaterialConcepts = 4;
inline constexpr int kMaxRequiredConcepts = 3;

/// Binary Ts x Tm decision matrix, stored student-major: entry (i, j) sits at
/// flat index i * Tm + j, matching the layout of an optimizer position.
class SelectionMatrix {
public:
    SelectionMatrix() = default;
    SelectionMatrix(int students, int materials);

    int students() const { return students_; }
    int materials() const { return materials_; }

    bool at(int student, int material) const
    {
        return cells_[flat(student, material)] != 0;
    }
    void set(int student, int material, bool selected)
    {
        cells_[flat(student, material)] = selected ? 1 : 0;
    }

    std::span<const std::uint8_t> row(int student) const
    {
        return {cells_.data() + static_cast<std::size_t>(student) * static_cast<std::size_t>(materials_),
                static_cast<std::size_t>(materials_)};
    }
    std::span<const std::uint8_t> cells() const { return cells_; }

    bool operator==(const SelectionMatrix&) const = default;

private:
    std::size_t flat(int student, int material) const
    {
        return static_cast<std::size_t>(student) * static_cast<std::size_t>(materials_) +
               static_cast<std::size_t>(material);
    }

    int students_ = 0;
    int materials_ = 0;
    std::vector<std::uint8_t> cells_;
};

/// Entry is selected iff the position value is strictly greater than 0.5.
SelectionMatrix binarize(std::span<const double> position, int t_s, int t_m);

enum class PriorityClass { High, Medium, Challenging };

const char* to_string(PriorityClass c);

struct ClassifiedMaterial {
    int material = 0;
    PriorityClass priority = PriorityClass::High;
    bool full_coverage = false; // material concepts contain every required concept
};

ClassifiedMaterial classify(const StudentProfile& student, const LearningMaterial& material);

/// All materials for one student, ordered by ascending difficulty (ties keep
/// ascending id), each tagged with its priority class.
std::vector<ClassifiedMaterial> classify_materials(const AcsInstance& instance, int student_index);

} // namespace mwo
