#include "mwo/benchmarks.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mwo::bench {

namespace {

using std::numbers::pi;

constexpr std::array<std::array<double, 4>, 7> kShekelA{{
    {4, 4, 4, 4},
    {1, 1, 1, 1},
    {8, 8, 8, 8},
    {6, 6, 6, 6},
    {3, 7, 3, 7},
    {2, 9, 2, 9},
    {5, 5, 3, 3},
}};
constexpr std::array<double, 7> kShekelC{0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3};

double sphere(std::span<const double> x)
{
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return s;
}

double schwefel_2_22(std::span<const double> x)
{
    double sum = 0.0;
    double prod = 1.0;
    for (double v : x) {
        sum += std::abs(v);
        prod *= std::abs(v);
    }
    return sum + prod;
}

double schwefel_1_2(std::span<const double> x)
{
    double total = 0.0;
    double prefix = 0.0;
    for (double v : x) {
        prefix += v;
        total += prefix * prefix;
    }
    return total;
}

double schwefel_sine(std::span<const double> x)
{
    double s = 0.0;
    for (double v : x)
        s += -v * std::sin(std::sqrt(std::abs(v)));
    return s;
}

double ackley(std::span<const double> x)
{
    const double n = static_cast<double>(x.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * pi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + std::numbers::e;
}

double penalized(std::span<const double> x)
{
    const std::size_t d = x.size();
    auto y = [&](std::size_t i) { return 1.0 + (x[i] + 1.0) / 4.0; };
    double body = 10.0 * std::pow(std::sin(pi * y(0)), 2);
    for (std::size_t i = 0; i + 1 < d; ++i)
        body += std::pow(y(i) - 1.0, 2) * (1.0 + 10.0 * std::pow(std::sin(pi * y(i + 1)), 2));
    body += std::pow(y(d - 1) - 1.0, 2);
    double penalty = 0.0;
    for (double v : x)
        penalty += boundary_penalty(v, 10.0, 100.0, 4.0);
    return pi / static_cast<double>(d) * body + penalty;
}

double six_hump_camel(std::span<const double> x)
{
    const double a = x[0];
    const double b = x[1];
    return 4.0 * a * a - 2.1 * std::pow(a, 4) + std::pow(a, 6) / 3.0 + a * b - 4.0 * b * b + 4.0 * std::pow(b, 4);
}

double shekel(std::span<const double> x, std::size_t terms)
{
    double s = 0.0;
    for (std::size_t i = 0; i < terms; ++i) {
        double dist = 0.0;
        for (std::size_t j = 0; j < 4; ++j)
            dist += (x[j] - kShekelA[i][j]) * (x[j] - kShekelA[i][j]);
        s -= 1.0 / (dist + kShekelC[i]);
    }
    return s;
}

std::vector<BenchmarkFunction> build_catalog()
{
    std::vector<BenchmarkFunction> out;
    out.push_back({FunctionId::TF1, "tf1", "sphere", 30, -100, 100, 0.0, std::vector<double>(30, 0.0)});
    out.push_back({FunctionId::TF2, "tf2", "schwefel 2.22", 30, -10, 10, 0.0, std::vector<double>(30, 0.0)});
    out.push_back({FunctionId::TF3, "tf3", "schwefel 1.2", 30, -100, 100, 0.0, std::vector<double>(30, 0.0)});
    out.push_back({FunctionId::TF4, "tf4", "schwefel sine", 30, -500, 500, -12569.49,
                   std::vector<double>(30, 420.9687)});
    out.push_back({FunctionId::TF5, "tf5", "ackley", 30, -32, 32, 0.0, std::vector<double>(30, 0.0)});
    out.push_back({FunctionId::TF6, "tf6", "penalized", 30, -50, 50, 0.0, std::vector<double>(30, -1.0)});
    out.push_back({FunctionId::TF7, "tf7", "six-hump camel", 2, -5, 5, -1.0316,
                   {0.08984201368301331, -0.7126564032704135}});
    out.push_back({FunctionId::TF8, "tf8", "shekel 5", 4, 0, 10, -10.153, {4.0, 4.0, 4.0, 4.0}});
    out.push_back({FunctionId::TF9, "tf9", "shekel 7", 4, 0, 10, -10.403, {4.0, 4.0, 4.0, 4.0}});
    return out;
}

} // namespace

const std::vector<BenchmarkFunction>& catalog()
{
    static const std::vector<BenchmarkFunction> functions = build_catalog();
    return functions;
}

const BenchmarkFunction& info(FunctionId id)
{
    return catalog()[static_cast<std::size_t>(id) - 1];
}

std::optional<FunctionId> parse_id(std::string_view text)
{
    if (text.size() >= 2 && std::tolower(static_cast<unsigned char>(text[0])) == 't' &&
        std::tolower(static_cast<unsigned char>(text[1])) == 'f')
        text.remove_prefix(2);
    if (text.size() != 1 || text[0] < '1' || text[0] > '9')
        return std::nullopt;
    return static_cast<FunctionId>(text[0] - '0');
}

double boundary_penalty(double x, double a, double k, double m)
{
    if (x > a)
        return k * std::pow(x - a, m);
    if (x < -a)
        return k * std::pow(-x - a, m);
    return 0.0;
}

Evaluation evaluate_checked(FunctionId id, std::span<const double> x)
{
    const auto& meta = info(id);
    if (x.size() != static_cast<std::size_t>(meta.dim))
        throw std::invalid_argument(meta.name + " expects dimension " + std::to_string(meta.dim));
    bool outside = false;
    for (double v : x)
        if (!(v >= meta.lower && v <= meta.upper))
            outside = true;

    double value = 0.0;
    switch (id) {
    case FunctionId::TF1: value = sphere(x); break;
    case FunctionId::TF2: value = schwefel_2_22(x); break;
    case FunctionId::TF3: value = schwefel_1_2(x); break;
    case FunctionId::TF4: value = schwefel_sine(x); break;
    case FunctionId::TF5: value = ackley(x); break;
    case FunctionId::TF6: value = penalized(x); break;
    case FunctionId::TF7: value = six_hump_camel(x); break;
    case FunctionId::TF8: value = shekel(x, 5); break;
    case FunctionId::TF9: value = shekel(x, 7); break;
    }
    return {value, outside};
}

double evaluate(FunctionId id, std::span<const double> x)
{
    return evaluate_checked(id, x).value;
}

} // namespace mwo::bench
