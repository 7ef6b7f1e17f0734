#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catgraph/estimators.hpp"
#include "catgraph/graph.hpp"
#include "catgraph/observers.hpp"
#include "catgraph/samplers.hpp"

namespace catgraph {

// sqrt(mean((x_hat - x)^2)) / x over replicate estimates.
double nrmse(std::span<const double> estimates, double truth);

enum class QuantityKind { size, weight, weight_low, weight_high };

std::string_view to_string(QuantityKind kind) noexcept;

struct ExperimentConfig {
    std::vector<SamplerKind> samplers{SamplerKind::uis, SamplerKind::rw, SamplerKind::mhrw, SamplerKind::wrw};
    std::vector<ObservationMode> modes{ObservationMode::induced, ObservationMode::star};
    std::vector<SizeEstimator> size_estimators{SizeEstimator::induced, SizeEstimator::star};
    std::vector<WeightEstimator> weight_estimators{WeightEstimator::induced, WeightEstimator::star};
    std::vector<std::size_t> sample_sizes{100, 1000, 10000};
    std::size_t replicates = 30;
    std::uint64_t seed = 0;
    std::size_t burn_in = 0;
    std::size_t thin = 1;
    // WRW category weights; empty means all equal.
    std::vector<double> category_weights;
    // Edges at these percentiles of the true weight distribution are tracked individually.
    std::vector<double> probe_percentiles{25.0, 75.0};
    std::size_t threads = 1;

    // R >= 2, strictly increasing nonempty n list, thin >= 1, percentiles in [0,100].
    void validate() const;
};

struct QuantityError {
    std::string label;  // category name, or "a|b" for a pair
    double nrmse = 0.0;
};

// One grid cell: a quantity kind under one sampler/mode/estimator at one n.
struct CellResult {
    QuantityKind quantity = QuantityKind::size;
    SamplerKind sampler = SamplerKind::uis;
    ObservationMode mode = ObservationMode::induced;
    SizeEstimator size_estimator = SizeEstimator::induced;
    std::optional<WeightEstimator> weight_estimator;  // absent on size rows
    std::size_t n = 0;

    std::optional<double> median;
    std::optional<double> p25;
    std::optional<double> p75;
    std::size_t excluded = 0;  // quantities lacking an estimate in some replicate
    std::vector<QuantityError> errors;
    std::vector<double> cdf;  // sorted NRMSE values of `errors`

    std::string estimator_label() const;
};

struct ExperimentReport {
    std::vector<CellResult> cells;

    const CellResult* find(QuantityKind quantity, SamplerKind sampler, ObservationMode mode,
                           std::string_view estimator, std::size_t n) const;
};

// Linear-interpolated percentile (0..100) of an ascending-sorted sample.
double percentile_sorted(std::span<const double> sorted, double pct);

ExperimentReport run_experiment(const ExperimentConfig& cfg, const Graph& g, const CategoryPartition& part);

}  // namespace catgraph
