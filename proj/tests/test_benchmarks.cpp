#include "doctest.h"

#include <stdexcept>

#include "mwo/benchmarks.hpp"
#include "mwo/rng.hpp"

#include <cmath>
#include <vector>

using namespace mwo;
using bench::FunctionId;

namespace {

const double PI = std::acos(-1.0);

// Second, deliberately plain transcription of each formula.
double oracle(FunctionId id, const std::vector<double>& x)
{
    const int n = static_cast<int>(x.size());
    double r = 0.0;
    switch (id) {
    case FunctionId::TF1:
        for (int i = 0; i < n; ++i)
            r += std::pow(x[i], 2);
        return r;
    case FunctionId::TF2: {
        double p = 1.0;
        for (int i = 0; i < n; ++i) {
            r += std::fabs(x[i]);
            p *= std::fabs(x[i]);
        }
        return r + p;
    }
    case FunctionId::TF3:
        for (int i = 0; i < n; ++i) {
            double inner = 0.0;
            for (int j = 0; j <= i; ++j)
                inner += x[j];
            r += inner * inner;
        }
        return r;
    case FunctionId::TF4:
        for (int i = 0; i < n; ++i)
            r -= x[i] * std::sin(std::sqrt(std::fabs(x[i])));
        return r;
    case FunctionId::TF5: {
        double a = 0.0, b = 0.0;
        for (int i = 0; i < n; ++i) {
            a += x[i] * x[i];
            b += std::cos(2 * PI * x[i]);
        }
        return 20.0 + std::exp(1.0) - 20.0 * std::exp(-0.2 * std::sqrt(a / n)) - std::exp(b / n);
    }
    case FunctionId::TF6: {
        std::vector<double> y(x.size());
        for (int i = 0; i < n; ++i)
            y[i] = 1.0 + (x[i] + 1.0) / 4.0;
        double s = 10.0 * std::sin(PI * y[0]) * std::sin(PI * y[0]);
        for (int i = 0; i < n - 1; ++i)
            s += (y[i] - 1) * (y[i] - 1) * (1 + 10 * std::sin(PI * y[i + 1]) * std::sin(PI * y[i + 1]));
        s += (y[n - 1] - 1) * (y[n - 1] - 1);
        double u = 0.0;
        for (int i = 0; i < n; ++i) {
            if (x[i] > 10)
                u += 100 * std::pow(x[i] - 10, 4);
            else if (x[i] < -10)
                u += 100 * std::pow(-x[i] - 10, 4);
        }
        return PI / n * s + u;
    }
    case FunctionId::TF7: {
        const double a = x[0], b = x[1];
        return 4 * a * a - 2.1 * a * a * a * a + a * a * a * a * a * a / 3 + a * b - 4 * b * b + 4 * b * b * b * b;
    }
    case FunctionId::TF8:
    case FunctionId::TF9: {
        const double A[10][4] = {{4, 4, 4, 4}, {1, 1, 1, 1}, {8, 8, 8, 8}, {6, 6, 6, 6}, {3, 7, 3, 7},
                                 {2, 9, 2, 9}, {5, 5, 3, 3}, {8, 1, 8, 1}, {6, 2, 6, 2}, {7, 3.6, 7, 3.6}};
        const double c[10] = {0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5};
        const int m = id == FunctionId::TF8 ? 5 : 7;
        for (int i = 0; i < m; ++i) {
            double d = c[i];
            for (int j = 0; j < 4; ++j)
                d += (x[j] - A[i][j]) * (x[j] - A[i][j]);
            r -= 1.0 / d;
        }
        return r;
    }
    }
    return NAN;
}

} // namespace

TEST_CASE("catalog lists nine functions with their dimensions and boxes")
{
    const auto& cat = bench::catalog();
    REQUIRE(cat.size() == 9);
    const int dims[] = {30, 30, 30, 30, 30, 30, 2, 4, 4};
    const double lows[] = {-100, -10, -100, -500, -32, -50, -5, 0, 0};
    const double highs[] = {100, 10, 100, 500, 32, 50, 5, 10, 10};
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(cat[i].dim == dims[i]);
        CHECK(cat[i].lower == lows[i]);
        CHECK(cat[i].upper == highs[i]);
        CHECK(static_cast<int>(cat[i].id) == static_cast<int>(i) + 1);
    }
    CHECK(bench::info(FunctionId::TF2).lower == -10);
    CHECK(bench::info(FunctionId::TF2).upper == 10);
    CHECK(bench::info(FunctionId::TF8).known_optimum == -10.153);
    CHECK(bench::info(FunctionId::TF9).dim == 4);
}

TEST_CASE("parse_id accepts several spellings")
{
    CHECK(bench::parse_id("tf5") == FunctionId::TF5);
    CHECK(bench::parse_id("TF9") == FunctionId::TF9);
    CHECK(bench::parse_id("3") == FunctionId::TF3);
    CHECK_FALSE(bench::parse_id("tf0").has_value());
    CHECK_FALSE(bench::parse_id("tf10").has_value());
    CHECK_FALSE(bench::parse_id("acs").has_value());
}

TEST_CASE("sphere at the origin and at all ones")
{
    CHECK(bench::evaluate(FunctionId::TF1, std::vector<double>(30, 0.0)) == 0.0);
    CHECK(bench::evaluate(FunctionId::TF1, std::vector<double>(30, 1.0)) == 30.0);
}

TEST_CASE("Ackley at the origin sits on its floating floor")
{
    const double v = bench::evaluate(FunctionId::TF5, std::vector<double>(30, 0.0));
    CHECK(v >= 0.0);
    CHECK(v <= 8.882e-16 * 1.0001);
}

TEST_CASE("published minimizers reproduce the optima")
{
    for (const auto& f : bench::catalog()) {
        const double v = bench::evaluate(f.id, f.minimizer);
        switch (f.id) {
        case FunctionId::TF1:
        case FunctionId::TF2:
        case FunctionId::TF3:
        case FunctionId::TF5:
        case FunctionId::TF6: CHECK(std::fabs(v) <= 1e-8); break;
        case FunctionId::TF4: CHECK(v == doctest::Approx(-12569.49).epsilon(0.01 / 12569.49)); break;
        case FunctionId::TF7: CHECK(std::fabs(v + 1.0316) <= 1e-4); break;
        case FunctionId::TF8: CHECK(std::fabs(v + 10.153) <= 1e-3); break;
        case FunctionId::TF9: CHECK(std::fabs(v + 10.403) <= 1e-3); break;
        }
    }
}

TEST_CASE("random points agree with the plain transcription")
{
    Rng rng(2024);
    for (const auto& f : bench::catalog()) {
        for (int k = 0; k < 100; ++k) {
            std::vector<double> x(static_cast<std::size_t>(f.dim));
            for (auto& v : x)
                v = rng.uniform(f.lower, f.upper);
            const double got = bench::evaluate(f.id, x);
            const double want = oracle(f.id, x);
            CHECK(std::fabs(got - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
        }
    }
}

TEST_CASE("nonnegativity, symmetry and separability")
{
    Rng rng(5);
    for (int k = 0; k < 50; ++k) {
        std::vector<double> x(30), neg(30);
        for (std::size_t j = 0; j < 30; ++j) {
            x[j] = rng.uniform(-10, 10);
            neg[j] = -x[j];
        }
        CHECK(bench::evaluate(FunctionId::TF1, x) >= 0.0);
        CHECK(bench::evaluate(FunctionId::TF2, x) >= 0.0);
        CHECK(bench::evaluate(FunctionId::TF3, x) >= 0.0);
        CHECK(bench::evaluate(FunctionId::TF5, x) >= -1e-15);
        CHECK(bench::evaluate(FunctionId::TF1, x) == bench::evaluate(FunctionId::TF1, neg));

        const std::vector<double> p{x[0], x[1]}, q{-x[0], -x[1]};
        CHECK(bench::evaluate(FunctionId::TF7, p) == doctest::Approx(bench::evaluate(FunctionId::TF7, q)));

        double parts = 0.0;
        for (std::size_t j = 0; j < 30; ++j)
            parts += x[j] * x[j];
        CHECK(bench::evaluate(FunctionId::TF1, x) == doctest::Approx(parts));
    }
}

TEST_CASE("boundary penalty and out-of-box flag")
{
    CHECK(bench::boundary_penalty(5.0, 10, 100, 4) == 0.0);
    CHECK(bench::boundary_penalty(12.0, 10, 100, 4) == doctest::Approx(1600.0));
    CHECK(bench::boundary_penalty(-11.0, 10, 100, 4) == doctest::Approx(100.0));
    std::vector<double> x(30, 0.0);
    x[3] = 101.0;
    const auto e = bench::evaluate_checked(FunctionId::TF1, x);
    CHECK(e.out_of_bounds);
    CHECK(e.value == doctest::Approx(10201.0));
    CHECK_FALSE(bench::evaluate_checked(FunctionId::TF1, std::vector<double>(30, 1.0)).out_of_bounds);
}

TEST_CASE("dimension mismatch is rejected")
{
    CHECK_THROWS_AS(bench::evaluate(FunctionId::TF1, std::vector<double>(29, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(bench::evaluate(FunctionId::TF7, std::vector<double>(3, 0.0)), std::invalid_argument);
}
