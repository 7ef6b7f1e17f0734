#include "catgraph/estimators.hpp"

#include <cmath>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "catgraph/random.hpp"

namespace catgraph {

std::string_view to_string(SizeEstimator e) noexcept { return e == SizeEstimator::induced ? "induced" : "star"; }
std::string_view to_string(WeightEstimator e) noexcept { return e == WeightEstimator::induced ? "induced" : "star"; }

SizeEstimator parse_size_estimator(std::string_view name) {
    if (name == "induced") return SizeEstimator::induced;
    if (name == "star") return SizeEstimator::star;
    throw Error(ErrorKind::InvalidParameter, "unknown size estimator '" + std::string(name) + "'");
}

WeightEstimator parse_weight_estimator(std::string_view name) {
    if (name == "induced") return WeightEstimator::induced;
    if (name == "star") return WeightEstimator::star;
    throw Error(ErrorKind::InvalidParameter, "unknown weight estimator '" + std::string(name) + "'");
}

namespace {

// Per-draw inverse weights relative to the first draw, plus their per-category sums.
struct Tally {
    std::vector<double> inverse;
    double total = 0.0;
    std::vector<double> by_category;
    std::vector<std::size_t> draws;
};

Tally tally(const ObservationLog& log) {
    if (log.records.empty()) throw Error(ErrorKind::EmptySample, "observation log has no draws");
    Tally t;
    t.by_category.assign(log.category_count(), 0.0);
    t.draws.assign(log.category_count(), 0);
    t.inverse.reserve(log.records.size());
    const double reference = log.records.front().weight;
    for (const auto& r : log.records) {
        if (!(r.weight > 0.0) || !std::isfinite(r.weight)) {
            throw Error(ErrorKind::InvalidWeight, "draw of node " + std::to_string(r.node) + " has weight " +
                                                      std::to_string(r.weight));
        }
        if (r.category >= log.category_count()) {
            throw Error(ErrorKind::InvalidObservationLog, "draw of node " + std::to_string(r.node) +
                                                              " has unknown category " + std::to_string(r.category));
        }
        const double inv = reference / r.weight;
        t.inverse.push_back(inv);
        t.total += inv;
        t.by_category[r.category] += inv;
        ++t.draws[r.category];
    }
    return t;
}

void require_star(const ObservationLog& log, std::string_view what) {
    if (log.mode != ObservationMode::star) {
        throw Error(ErrorKind::WrongObservationMode, std::string(what) + " needs a star-sampling log");
    }
}

}  // namespace

double reweighted_size(const ObservationLog& log, std::optional<CategoryId> category) {
    double sum = 0.0;
    for (const auto& r : log.records) {
        if (!category || r.category == *category) sum += 1.0 / r.weight;
    }
    return sum;
}

double hh_total(std::span<const double> values, const ObservationLog& log, double weight_total) {
    if (log.records.empty()) throw Error(ErrorKind::EmptySample, "observation log has no draws");
    if (values.size() != log.records.size()) {
        throw Error(ErrorKind::InvalidParameter, "need one value per draw");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double pi = log.records[i].weight / weight_total;
        sum += values[i] / pi;
    }
    return sum / static_cast<double>(values.size());
}

double hh_ratio(std::span<const double> numerator, std::span<const double> denominator, const ObservationLog& log) {
    const auto t = tally(log);
    if (numerator.size() != log.records.size() || denominator.size() != log.records.size()) {
        throw Error(ErrorKind::InvalidParameter, "need one value per draw");
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < t.inverse.size(); ++i) {
        num += numerator[i] * t.inverse[i];
        den += denominator[i] * t.inverse[i];
    }
    return num / den;
}

SizeEstimates est_size_induced(const ObservationLog& log, double population) {
    const auto t = tally(log);
    SizeEstimates out;
    out.draws = t.draws;
    out.values.reserve(t.by_category.size());
    for (double share : t.by_category) out.values.emplace_back(population * (share / t.total));
    return out;
}

MeanDegreeEstimates est_mean_degrees(const ObservationLog& log) {
    const auto t = tally(log);
    double all = 0.0;
    std::vector<double> per(log.category_count(), 0.0);
    for (std::size_t i = 0; i < log.records.size(); ++i) {
        const double term = static_cast<double>(log.records[i].degree) * t.inverse[i];
        all += term;
        per[log.records[i].category] += term;
    }
    MeanDegreeEstimates out;
    out.whole_graph = all / t.total;
    out.per_category.resize(per.size());
    for (std::size_t c = 0; c < per.size(); ++c) {
        if (t.draws[c] > 0) out.per_category[c] = per[c] / t.by_category[c];
    }
    return out;
}

std::vector<std::optional<double>> est_fvol_star(const ObservationLog& log) {
    require_star(log, "star volume-fraction estimator");
    const auto t = tally(log);
    std::vector<double> toward(log.category_count(), 0.0);
    double volume = 0.0;
    for (std::size_t i = 0; i < log.records.size(); ++i) {
        const auto& r = log.records[i];
        for (const auto& nc : r.neighbor_categories) {
            toward.at(nc.category) += static_cast<double>(nc.count) * t.inverse[i];
        }
        volume += static_cast<double>(r.degree) * t.inverse[i];
    }
    std::vector<std::optional<double>> out(toward.size());
    if (volume > 0.0) {
        for (std::size_t c = 0; c < toward.size(); ++c) out[c] = toward[c] / volume;
    }
    return out;
}

SizeEstimates est_size_star(const ObservationLog& log, double population, bool assume_homogeneous_degree) {
    const auto fvol = est_fvol_star(log);
    const auto degrees = est_mean_degrees(log);
    SizeEstimates out;
    out.draws = tally(log).draws;
    out.values.resize(fvol.size());
    for (std::size_t c = 0; c < fvol.size(); ++c) {
        const auto k_cat = assume_homogeneous_degree ? std::optional<double>(degrees.whole_graph)
                                                     : degrees.per_category[c];
        if (!fvol[c] || !k_cat || *k_cat == 0.0) continue;
        out.values[c] = population * *fvol[c] * (degrees.whole_graph / *k_cat);
    }
    return out;
}

PairEstimates est_weight_induced(const ObservationLog& log) {
    if (log.mode != ObservationMode::induced) {
        throw Error(ErrorKind::WrongObservationMode, "induced weight estimator needs an induced-subgraph log");
    }
    const auto t = tally(log);

    // Collapsing draws per node: sum over draw pairs (a,b) of 1/(w(a)w(b))
    // equals sum over distinct edges {u,v} of c(u)*c(v), c(u) = sum of 1/w
    // over the draws of u.
    struct NodeMass {
        CategoryId category;
        double mass;
    };
    std::unordered_map<NodeKey, NodeMass> mass;
    mass.reserve(log.records.size());
    for (std::size_t i = 0; i < log.records.size(); ++i) {
        const auto& r = log.records[i];
        auto [it, inserted] = mass.try_emplace(r.node, NodeMass{r.category, 0.0});
        if (it->second.category != r.category) {
            throw Error(ErrorKind::InvalidObservationLog, "node " + std::to_string(r.node) +
                                                              " is recorded under two categories");
        }
        it->second.mass += t.inverse[i];
    }

    std::map<CategoryPair, double> numerator;
    for (const auto& [u, v] : log.induced_edges) {
        auto iu = mass.find(u);
        auto iv = mass.find(v);
        if (iu == mass.end() || iv == mass.end()) {
            throw Error(ErrorKind::InvalidObservationLog, "induced edge {" + std::to_string(u) + "," +
                                                              std::to_string(v) + "} has an undrawn endpoint");
        }
        if (iu->second.category == iv->second.category) continue;
        numerator[CategoryPair(iu->second.category, iv->second.category)] += iu->second.mass * iv->second.mass;
    }

    PairEstimates out;
    const auto k = static_cast<CategoryId>(log.category_count());
    for (CategoryId a = 0; a < k; ++a) {
        for (CategoryId b = a + 1; b < k; ++b) {
            const CategoryPair pair(a, b);
            if (t.draws[a] == 0 || t.draws[b] == 0) {
                out.unavailable.emplace(pair, ErrorKind::InsufficientSample);
                continue;
            }
            auto it = numerator.find(pair);
            const double num = it == numerator.end() ? 0.0 : it->second;
            out.values.emplace(pair, num / (t.by_category[a] * t.by_category[b]));
        }
    }
    return out;
}

PairEstimates est_weight_star(const ObservationLog& log, std::span<const std::optional<double>> size_estimates) {
    require_star(log, "star weight estimator");
    const auto t = tally(log);
    const std::size_t k = log.category_count();
    if (size_estimates.size() != k) {
        throw Error(ErrorKind::InvalidParameter, "expected " + std::to_string(k) + " size estimates, got " +
                                                     std::to_string(size_estimates.size()));
    }

    // observed[a*k+b] = sum over draws s in S_a of |E_{s,b}| / w(s)
    std::vector<double> observed(k * k, 0.0);
    for (std::size_t i = 0; i < log.records.size(); ++i) {
        const auto& r = log.records[i];
        for (const auto& nc : r.neighbor_categories) {
            if (nc.category >= k) {
                throw Error(ErrorKind::InvalidObservationLog, "neighbor histogram names unknown category " +
                                                                  std::to_string(nc.category));
            }
            if (nc.category != r.category) {
                observed[r.category * k + nc.category] += static_cast<double>(nc.count) * t.inverse[i];
            }
        }
    }

    PairEstimates out;
    for (CategoryId a = 0; a < k; ++a) {
        for (CategoryId b = a + 1; b < k; ++b) {
            const CategoryPair pair(a, b);
            const bool seen_a = t.draws[a] > 0;
            const bool seen_b = t.draws[b] > 0;
            if (!seen_a && !seen_b) {
                out.unavailable.emplace(pair, ErrorKind::InsufficientSample);
                continue;
            }
            if ((seen_a && !size_estimates[b]) || (seen_b && !size_estimates[a])) {
                out.unavailable.emplace(pair, ErrorKind::MissingSizeEstimate);
                continue;
            }
            const double den = (seen_a ? t.by_category[a] * *size_estimates[b] : 0.0) +
                               (seen_b ? t.by_category[b] * *size_estimates[a] : 0.0);
            if (den <= 0.0) {
                out.unavailable.emplace(pair, ErrorKind::InsufficientSample);
                continue;
            }
            out.values.emplace(pair, (observed[a * k + b] + observed[b * k + a]) / den);
        }
    }
    return out;
}

CategoryGraphEstimate estimate_category_graph(const ObservationLog& log, Population population,
                                              const EstimateOptions& opts) {
    const bool star = log.mode == ObservationMode::star;
    if (opts.size_estimator == SizeEstimator::star && !star) {
        throw Error(ErrorKind::WrongObservationMode, "star size estimator needs a star-sampling log");
    }
    if (opts.weight_estimator == WeightEstimator::star && !star) {
        throw Error(ErrorKind::WrongObservationMode, "star weight estimator needs a star-sampling log");
    }
    if (opts.weight_estimator == WeightEstimator::induced && star) {
        throw Error(ErrorKind::WrongObservationMode, "induced weight estimator needs an induced-subgraph log");
    }

    CategoryGraphEstimate est;
    est.names = log.category_names;
    est.population = population;
    est.size_estimator = opts.size_estimator;
    est.weight_estimator = opts.weight_estimator;
    est.sizes = opts.size_estimator == SizeEstimator::induced
                    ? est_size_induced(log, population.value).values
                    : est_size_star(log, population.value, opts.assume_homogeneous_degree).values;
    est.weights = opts.weight_estimator == WeightEstimator::induced ? est_weight_induced(log).values
                                                                    : est_weight_star(log, est.sizes).values;
    return est;
}

namespace {

ObservationLog resample(const ObservationLog& log, Rng& rng) {
    ObservationLog out;
    out.mode = log.mode;
    out.population_hint = log.population_hint;
    out.category_names = log.category_names;
    out.records.reserve(log.records.size());
    std::uniform_int_distribution<std::size_t> pick(0, log.records.size() - 1);
    std::unordered_set<NodeKey> present;
    for (std::size_t i = 0; i < log.records.size(); ++i) {
        out.records.push_back(log.records[pick(rng)]);
        present.insert(out.records.back().node);
    }
    for (const auto& e : log.induced_edges) {
        if (present.contains(e.first) && present.contains(e.second)) out.induced_edges.push_back(e);
    }
    return out;
}

struct RunningMoments {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }
    std::optional<double> variance() const {
        if (count < 2) return std::nullopt;
        return m2 / static_cast<double>(count - 1);
    }
};

}  // namespace

VarianceEstimates bootstrap_variance(const ObservationLog& log, Population population, const EstimateOptions& opts,
                                     std::size_t resamples, std::uint64_t seed) {
    if (resamples < 2) throw Error(ErrorKind::InvalidParameter, "bootstrap needs at least 2 resamples");
    if (log.records.empty()) throw Error(ErrorKind::EmptySample, "observation log has no draws");
    Rng rng(seed);
    std::vector<RunningMoments> sizes(log.category_count());
    std::map<CategoryPair, RunningMoments> weights;
    for (std::size_t b = 0; b < resamples; ++b) {
        const auto est = estimate_category_graph(resample(log, rng), population, opts);
        for (std::size_t c = 0; c < est.sizes.size(); ++c) {
            if (est.sizes[c]) sizes[c].add(*est.sizes[c]);
        }
        for (const auto& [pair, w] : est.weights) weights[pair].add(w);
    }
    VarianceEstimates out;
    for (const auto& m : sizes) out.sizes.push_back(m.variance());
    for (const auto& [pair, m] : weights) {
        if (auto v = m.variance()) out.weights.emplace(pair, *v);
    }
    return out;
}

CategoryGraphEstimate with_variances(CategoryGraphEstimate est, const VarianceEstimates& var) {
    est.size_variances = var.sizes;
    est.weight_variances = var.weights;
    return est;
}

CategoryGraphEstimate to_estimate(const CategoryGraph& truth) {
    CategoryGraphEstimate est;
    est.names = truth.names;
    std::size_t n = 0;
    for (auto s : truth.sizes) {
        est.sizes.emplace_back(static_cast<double>(s));
        n += s;
    }
    for (const auto& [pair, cut] : truth.cuts) est.weights.emplace(pair, cut.weight);
    est.population = Population::of(n);
    return est;
}

}  // namespace catgraph
