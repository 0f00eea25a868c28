#pragma once

// The nine classical test functions TF1..TF9 used to exercise the optimizer:
// three unimodal (sphere, Schwefel 2.22, Schwefel 1.2), three multimodal
// (Schwefel sine, Ackley, penalized) and three fixed-dimension functions
// (six-hump camel, Shekel 5, Shekel 7).

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mwo::bench {

enum class FunctionId { TF1 = 1, TF2, TF3, TF4, TF5, TF6, TF7, TF8, TF9 };

struct BenchmarkFunction {
    FunctionId id;
    std::string name;  // "tf1"
    std::string label; // human-readable family name
    int dim;
    double lower;
    double upper;
    double known_optimum;
    std::vector<double> minimizer; // published argmin
};

/// All nine functions in id order.
const std::vector<BenchmarkFunction>& catalog();

const BenchmarkFunction& info(FunctionId id);

/// Accepts "tf5", "TF5" or "5".
std::optional<FunctionId> parse_id(std::string_view text);

struct Evaluation {
    double value;
    bool out_of_bounds;
};

/// Evaluates the function; points outside the search box are still evaluated
/// but flagged. Throws std::invalid_argument on a dimension mismatch.
Evaluation evaluate_checked(FunctionId id, std::span<const double> x);

double evaluate(FunctionId id, std::span<const double> x);

/// u(x, a, k, m) boundary penalty of the penalized function.
double boundary_penalty(double x, double a, double k, double m);

} // namespace mwo::bench
