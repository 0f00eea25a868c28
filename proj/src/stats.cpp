#include "mwo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace mwo {

namespace {

void require_nonempty(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("rank-sum test needs two nonempty samples");
}

struct Pooled {
    std::vector<std::int64_t> doubled_ranks; // 2 * midrank, a's values first
    std::int64_t observed = 0;               // doubled rank sum of a
    double tie_term = 0.0;                   // sum of t^3 - t over tie groups
};

Pooled pool(std::span<const double> a, std::span<const double> b)
{
    const std::size_t n = a.size() + b.size();
    std::vector<double> values(a.begin(), a.end());
    values.insert(values.end(), b.begin(), b.end());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });

    Pooled out;
    out.doubled_ranks.assign(n, 0);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]])
            ++j;
        // ranks i+1 .. j+1 share the midrank (i + j + 2) / 2
        const auto doubled = static_cast<std::int64_t>(i + j + 2);
        for (std::size_t k = i; k <= j; ++k)
            out.doubled_ranks[order[k]] = doubled;
        const double t = static_cast<double>(j - i + 1);
        out.tie_term += t * t * t - t;
        i = j + 1;
    }
    for (std::size_t k = 0; k < a.size(); ++k)
        out.observed += out.doubled_ranks[k];
    return out;
}

} // namespace

Summary summarize(std::span<const double> values)
{
    if (values.empty())
        throw std::invalid_argument("cannot summarize an empty group");
    Summary s;
    s.count = values.size();
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    s.best = *std::min_element(values.begin(), values.end());
    s.worst = *std::max_element(values.begin(), values.end());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values)
            ss += (v - s.mean) * (v - s.mean);
        s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

const char* symbol(Verdict v)
{
    switch (v) {
    case Verdict::Better: return "+";
    case Verdict::Equal: return "=";
    case Verdict::Worse: return "-";
    }
    return "?";
}

double rank_sum_exact_p(std::span<const double> a, std::span<const double> b)
{
    require_nonempty(a, b);
    const auto pooled = pool(a, b);
    const std::size_t n = pooled.doubled_ranks.size();
    const std::size_t k = a.size();
    const std::int64_t total = std::accumulate(pooled.doubled_ranks.begin(), pooled.doubled_ranks.end(),
                                               std::int64_t{0});

    // ways[c][s]: subsets of c items with doubled rank sum s
    std::vector<std::vector<double>> ways(k + 1, std::vector<double>(static_cast<std::size_t>(total) + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t item = 0; item < n; ++item) {
        const auto r = static_cast<std::size_t>(pooled.doubled_ranks[item]);
        for (std::size_t c = std::min(k, item + 1); c >= 1; --c)
            for (std::size_t s = static_cast<std::size_t>(total); s >= r; --s)
                ways[c][s] += ways[c - 1][s - r];
    }

    // center = k (n + 1) in doubled units; all quantities stay integral
    const std::int64_t center = static_cast<std::int64_t>(k) * static_cast<std::int64_t>(n + 1);
    const std::int64_t observed = std::llabs(pooled.observed - center);
    double extreme = 0.0;
    double all = 0.0;
    for (std::size_t s = 0; s <= static_cast<std::size_t>(total); ++s) {
        all += ways[k][s];
        if (std::llabs(static_cast<std::int64_t>(s) - center) >= observed)
            extreme += ways[k][s];
    }
    return std::min(1.0, extreme / all);
}

double rank_sum_normal_p(std::span<const double> a, std::span<const double> b)
{
    require_nonempty(a, b);
    const auto pooled = pool(a, b);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double n = na + nb;
    const double w = static_cast<double>(pooled.observed) / 2.0;
    const double mu = na * (n + 1.0) / 2.0;
    const double variance = na * nb / 12.0 * ((n + 1.0) - pooled.tie_term / (n * (n - 1.0)));
    if (!(variance > 0.0))
        return std::numeric_limits<double>::quiet_NaN();
    const double diff = w - mu;
    const double correction = std::min(0.5, std::abs(diff));
    const double z = (std::abs(diff) - correction) / std::sqrt(variance);
    return std::erfc(z / std::sqrt(2.0));
}

RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b)
{
    require_nonempty(a, b);
    RankSumResult out;
    out.rank_sum = static_cast<double>(pool(a, b).observed) / 2.0;

    const double first = a.front();
    const bool all_equal = std::all_of(a.begin(), a.end(), [&](double v) { return v == first; }) &&
                           std::all_of(b.begin(), b.end(), [&](double v) { return v == first; });
    if (all_equal) {
        out.p_value = std::numeric_limits<double>::quiet_NaN();
        out.verdict = Verdict::Equal;
        out.method = RankSumMethod::Degenerate;
        return out;
    }

    if (a.size() <= kExactRankSumLimit && b.size() <= kExactRankSumLimit) {
        out.p_value = rank_sum_exact_p(a, b);
        out.method = RankSumMethod::Exact;
    } else {
        out.p_value = rank_sum_normal_p(a, b);
        out.method = RankSumMethod::Normal;
    }

    if (out.p_value < kSignificance) {
        const double mean_a = summarize(a).mean;
        const double mean_b = summarize(b).mean;
        if (mean_a < mean_b)
            out.verdict = Verdict::Better;
        else if (mean_a > mean_b)
            out.verdict = Verdict::Worse;
    }
    return out;
}

} // namespace mwo
