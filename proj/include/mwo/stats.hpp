#pragma once

// Descriptive statistics and the two-sided Wilcoxon rank-sum test used to
// compare algorithms over independent runs.

#include <span>
#include <string>

namespace mwo {

struct Summary {
    std::size_t count = 0;
    double mean = 0.0;
    double std = 0.0; // sample standard deviation, 0 for a single value
    double best = 0.0;
    double worst = 0.0;
};

/// Throws std::invalid_argument for an empty sample.
Summary summarize(std::span<const double> values);

enum class Verdict { Better, Equal, Worse };

/// "+", "=" or "-".
const char* symbol(Verdict v);

enum class RankSumMethod { Exact, Normal, Degenerate };

struct RankSumResult {
    double p_value = 0.0; // NaN when every pooled value is equal
    Verdict verdict = Verdict::Equal;
    double rank_sum = 0.0; // sum of the midranks of sample a
    RankSumMethod method = RankSumMethod::Exact;
};

/// Exact two-sided p: the share of all ways to pick |a| of the pooled
/// midranks whose rank sum lies at least as far from its mean as the observed
/// one. Ties keep their midranks.
double rank_sum_exact_p(std::span<const double> a, std::span<const double> b);

/// Normal approximation with tie-corrected variance and a continuity
/// correction of min(0.5, |W - mu|).
double rank_sum_normal_p(std::span<const double> a, std::span<const double> b);

inline constexpr std::size_t kExactRankSumLimit = 8;
inline constexpr double kSignificance = 0.05;

/// Uses the exact p when both samples have at most 8 values and the normal
/// approximation otherwise. If every pooled value is equal the p-value is NaN
/// and the verdict '='. Otherwise the verdict is '+' (a has the smaller mean)
/// or '-' when p < 0.05, and '=' else. Throws std::invalid_argument if a
/// sample is empty.
RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

} // namespace mwo
