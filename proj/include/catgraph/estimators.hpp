#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catgraph/error.hpp"
#include "catgraph/graph.hpp"
#include "catgraph/observers.hpp"

namespace catgraph {

// Category-graph estimators for with-replacement probability samples.
//
// Every estimator takes the per-draw sampling weights w(v) into account in
// Hansen-Hurwitz ratio form: each draw contributes 1/w(v) instead of 1, so
// the unknown normalizing constant of pi(v) cancels. Unit weights give the
// plain uniform-sample estimators. Weights are rescaled by the first
// record's weight before use, so a log with constant weights reduces to the
// uniform estimators bit-for-bit.
//
// Results are raw: nothing is clamped to [0,1] or rounded.

enum class SizeEstimator { induced, star };
enum class WeightEstimator { induced, star };

std::string_view to_string(SizeEstimator e) noexcept;
std::string_view to_string(WeightEstimator e) noexcept;
SizeEstimator parse_size_estimator(std::string_view name);
WeightEstimator parse_weight_estimator(std::string_view name);

// Population size N. In proportional mode N is the arbitrary constant 1 and
// sizes are only meaningful up to a common factor; weights are unaffected.
struct Population {
    bool exact = false;
    double value = 1.0;

    static Population of(std::size_t n) { return {true, static_cast<double>(n)}; }
    static Population proportional() { return {false, 1.0}; }

    friend bool operator==(const Population&, const Population&) = default;
};

struct EstimateOptions {
    SizeEstimator size_estimator = SizeEstimator::induced;
    WeightEstimator weight_estimator = WeightEstimator::induced;
    // Star size estimator with k_A replaced by k_V: lower variance, some bias.
    bool assume_homogeneous_degree = false;
};

struct SizeEstimates {
    std::vector<std::optional<double>> values;  // nullopt where undefined
    std::vector<std::size_t> draws;             // |S_A|; zero flags an unsampled category
};

struct MeanDegreeEstimates {
    double whole_graph = 0.0;
    std::vector<std::optional<double>> per_category;  // nullopt when S_A is empty
};

struct PairEstimates {
    std::map<CategoryPair, double> values;
    // Pairs with no estimate and why (InsufficientSample or MissingSizeEstimate).
    std::map<CategoryPair, ErrorKind> unavailable;
};

struct CategoryGraphEstimate {
    std::vector<std::string> names;
    std::vector<std::optional<double>> sizes;
    std::map<CategoryPair, double> weights;
    std::optional<std::vector<std::optional<double>>> size_variances;
    std::optional<std::map<CategoryPair, double>> weight_variances;
    // nullopt marks exact ground truth rather than an estimate.
    std::optional<SizeEstimator> size_estimator;
    std::optional<WeightEstimator> weight_estimator;
    Population population;

    friend bool operator==(const CategoryGraphEstimate&, const CategoryGraphEstimate&) = default;
};

// w_{-1}(X) = sum of 1/w(v) over the draws in X (all draws, or those of one category).
double reweighted_size(const ObservationLog& log, std::optional<CategoryId> category = std::nullopt);

// (1/n) * sum x(v)/pi(v) with pi(v) = w(v)/weight_total.
double hh_total(std::span<const double> values, const ObservationLog& log, double weight_total);

// sum x(v)/w(v) / sum y(v)/w(v): ratio of two totals, normalizer cancels.
double hh_ratio(std::span<const double> numerator, std::span<const double> denominator, const ObservationLog& log);

SizeEstimates est_size_induced(const ObservationLog& log, double population);
MeanDegreeEstimates est_mean_degrees(const ObservationLog& log);
std::vector<std::optional<double>> est_fvol_star(const ObservationLog& log);
SizeEstimates est_size_star(const ObservationLog& log, double population, bool assume_homogeneous_degree = false);
PairEstimates est_weight_induced(const ObservationLog& log);
PairEstimates est_weight_star(const ObservationLog& log, std::span<const std::optional<double>> size_estimates);

CategoryGraphEstimate estimate_category_graph(const ObservationLog& log, Population population,
                                              const EstimateOptions& opts);

struct VarianceEstimates {
    std::vector<std::optional<double>> sizes;
    std::map<CategoryPair, double> weights;
};

// Nonparametric bootstrap over draws: B resamples with replacement, sample
// variance of each quantity over the resamples where it was estimable.
VarianceEstimates bootstrap_variance(const ObservationLog& log, Population population, const EstimateOptions& opts,
                                     std::size_t resamples, std::uint64_t seed);

CategoryGraphEstimate with_variances(CategoryGraphEstimate est, const VarianceEstimates& var);

// Ground truth in estimate form (exact N, provenance "exact"; only
// nonzero-weight pairs, matching the category graph).
CategoryGraphEstimate to_estimate(const CategoryGraph& truth);

}  // namespace catgraph
