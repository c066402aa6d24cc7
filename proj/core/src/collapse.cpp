#include "vecdep/collapse.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "vecdep/error.hpp"
#include "vecdep/parallel.hpp"

namespace vecdep {

Arity CollapseSpec::arity() const noexcept {
    switch (kind) {
        case CollapseKind::distance:
        case CollapseKind::kernel:
        case CollapseKind::multivariate_rank: return Arity::pairwise;
        default: return Arity::one_sample;
    }
}

void CollapseSpec::validate(std::size_t p) const {
    if (p == 0) throw InvalidArgument("collapse needs a group of dimension >= 1");
    switch (kind) {
        case CollapseKind::weighted_average:
            if (!weights.empty()) {
                if (weights.size() != p)
                    throw InvalidArgument("weighted average: " + std::to_string(weights.size()) +
                                          " weights for a group of dimension " + std::to_string(p));
                const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
                if (std::abs(sum - 1.0) > 1e-12) throw InvalidArgument("weighted average: weights must sum to 1");
            }
            break;
        case CollapseKind::extreme_average:
            if (m < 1 || m > p) throw InvalidArgument("extreme average: m must satisfy 1 <= m <= p");
            break;
        case CollapseKind::distance:
            if (metric.kind == DistanceMetric::Kind::minkowski && !(metric.order >= 1.0))
                throw InvalidArgument("Minkowski order must be >= 1");
            break;
        case CollapseKind::kernel:
            if (kernel.family == KernelFamily::polynomial && kernel.degree < 1)
                throw InvalidArgument("polynomial kernel degree must be >= 1");
            if (kernel.family == KernelFamily::gaussian && kernel.sigma && !(*kernel.sigma > 0.0))
                throw InvalidArgument("Gaussian kernel sigma must be > 0");
            if (kernel.family == KernelFamily::von_mises && kernel.kappa.size() != p)
                throw InvalidArgument("von Mises kernel needs one kappa per coordinate");
            break;
        default: break;
    }
}

CollapseSpec CollapseSpec::weighted_average(std::vector<double> w) {
    CollapseSpec s;
    s.kind = CollapseKind::weighted_average;
    s.weights = std::move(w);
    return s;
}

CollapseSpec CollapseSpec::extreme_average(std::size_t m, ExtremeDirection dir) {
    CollapseSpec s;
    s.kind = CollapseKind::extreme_average;
    s.m = m;
    s.direction = dir;
    return s;
}

CollapseSpec CollapseSpec::maximum() {
    CollapseSpec s;
    s.kind = CollapseKind::maximum;
    return s;
}

CollapseSpec CollapseSpec::minimum() {
    CollapseSpec s;
    s.kind = CollapseKind::minimum;
    return s;
}

CollapseSpec CollapseSpec::distance(DistanceMetric metric) {
    CollapseSpec s;
    s.kind = CollapseKind::distance;
    s.metric = metric;
    return s;
}

CollapseSpec CollapseSpec::kernel_similarity(KernelSpec k) {
    CollapseSpec s;
    s.kind = CollapseKind::kernel;
    s.kernel = std::move(k);
    return s;
}

CollapseSpec CollapseSpec::multivariate_rank() {
    CollapseSpec s;
    s.kind = CollapseKind::multivariate_rank;
    return s;
}

CollapseSpec CollapseSpec::pit() {
    CollapseSpec s;
    s.kind = CollapseKind::pit;
    return s;
}

std::string_view to_string(CollapseKind kind) {
    switch (kind) {
        case CollapseKind::weighted_average: return "weighted-average";
        case CollapseKind::extreme_average: return "extreme-average";
        case CollapseKind::maximum: return "maximum";
        case CollapseKind::minimum: return "minimum";
        case CollapseKind::distance: return "distance";
        case CollapseKind::kernel: return "kernel";
        case CollapseKind::multivariate_rank: return "multivariate-rank";
        case CollapseKind::pit: return "pit";
    }
    return "unknown";
}

CollapseKind parse_collapse_kind(std::string_view name) {
    for (auto k : {CollapseKind::weighted_average, CollapseKind::extreme_average, CollapseKind::maximum,
                   CollapseKind::minimum, CollapseKind::distance, CollapseKind::kernel,
                   CollapseKind::multivariate_rank, CollapseKind::pit})
        if (to_string(k) == name) return k;
    if (name == "average" || name == "avg") return CollapseKind::weighted_average;
    if (name == "max") return CollapseKind::maximum;
    if (name == "min") return CollapseKind::minimum;
    throw InvalidArgument("unknown collapsing function '" + std::string(name) + "'");
}

namespace {

void require_same_length(std::span<const double> x, std::span<const double> y, const char* what) {
    if (x.size() != y.size()) throw InvalidArgument(std::string(what) + ": length mismatch");
}

}  // namespace

double weighted_average(std::span<const double> x, std::span<const double> w) {
    require_same_length(x, w, "weighted average");
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-12) throw InvalidArgument("weighted average: weights must sum to 1");
    return std::inner_product(x.begin(), x.end(), w.begin(), 0.0);
}

double extreme_average(std::span<const double> x, std::size_t m, ExtremeDirection direction) {
    if (m < 1 || m > x.size()) throw InvalidArgument("extreme average: m must satisfy 1 <= m <= p");
    std::vector<double> v(x.begin(), x.end());
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(m);
    if (direction == ExtremeDirection::largest)
        std::partial_sort(v.begin(), mid, v.end(), std::greater<>());
    else
        std::partial_sort(v.begin(), mid, v.end());
    return std::accumulate(v.begin(), mid, 0.0) / static_cast<double>(m);
}

double pairwise_distance(std::span<const double> x, std::span<const double> y, const DistanceMetric& metric) {
    require_same_length(x, y, "distance");
    double acc = 0.0;
    switch (metric.kind) {
        case DistanceMetric::Kind::euclidean:
            for (std::size_t t = 0; t < x.size(); ++t) acc += (x[t] - y[t]) * (x[t] - y[t]);
            return std::sqrt(acc);
        case DistanceMetric::Kind::manhattan:
            for (std::size_t t = 0; t < x.size(); ++t) acc += std::abs(x[t] - y[t]);
            return acc;
        case DistanceMetric::Kind::canberra:
            for (std::size_t t = 0; t < x.size(); ++t) {
                const double den = std::abs(x[t]) + std::abs(y[t]);
                if (den > 0.0) acc += std::abs(x[t] - y[t]) / den;
            }
            return acc;
        case DistanceMetric::Kind::minkowski:
            if (!(metric.order >= 1.0)) throw InvalidArgument("Minkowski order must be >= 1");
            for (std::size_t t = 0; t < x.size(); ++t) acc += std::pow(std::abs(x[t] - y[t]), metric.order);
            return std::pow(acc, 1.0 / metric.order);
    }
    return acc;
}

double kernel_similarity(std::span<const double> x, std::span<const double> y, const KernelSpec& k) {
    require_same_length(x, y, "kernel");
    switch (k.family) {
        case KernelFamily::linear: return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
        case KernelFamily::polynomial: {
            if (k.degree < 1) throw InvalidArgument("polynomial kernel degree must be >= 1");
            const double dot = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
            return std::pow(1.0 + dot, k.degree);
        }
        case KernelFamily::gaussian: {
            if (!k.sigma || !(*k.sigma > 0.0)) throw InvalidArgument("Gaussian kernel needs sigma > 0");
            double sq = 0.0;
            for (std::size_t t = 0; t < x.size(); ++t) sq += (x[t] - y[t]) * (x[t] - y[t]);
            return std::exp(-sq / (2.0 * *k.sigma * *k.sigma));
        }
        case KernelFamily::von_mises: {
            if (k.kappa.size() != x.size()) throw InvalidArgument("von Mises kernel needs one kappa per coordinate");
            double expo = 0.0;
            for (std::size_t t = 0; t < x.size(); ++t) expo += k.kappa[t] * std::cos(x[t] - y[t]);
            return std::exp(expo);
        }
    }
    return 0.0;
}

int multivariate_rank_indicator(std::span<const double> x, std::span<const double> y) {
    require_same_length(x, y, "multivariate rank");
    for (std::size_t t = 0; t < x.size(); ++t)
        if (!(x[t] <= y[t])) return 0;
    return 1;
}

double median_pairwise_distance(const Matrix& block) {
    const std::size_t n = block.rows();
    if (n < 2) throw InvalidArgument("median pairwise distance needs n >= 2");
    std::vector<double> dist(pair_count(n));
    const auto metric = DistanceMetric::euclidean();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            dist[pair_index(n, i, j)] = pairwise_distance(block.row(i), block.row(j), metric);
    const auto mid = dist.begin() + static_cast<std::ptrdiff_t>(dist.size() / 2);
    std::nth_element(dist.begin(), mid, dist.end());
    double med = *mid;
    if (dist.size() % 2 == 0) med = 0.5 * (med + *std::max_element(dist.begin(), mid));
    return med;
}

namespace {

template <class PairFn>
std::vector<double> collapse_pairs(const Matrix& block, PairFn&& fn) {
    const std::size_t n = block.rows();
    std::vector<double> out(pair_count(n));
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) out[pair_index(n, i, j)] = fn(block.row(i), block.row(j));
    });
    return out;
}

template <class RowFn>
std::vector<double> collapse_rows(const Matrix& block, RowFn&& fn) {
    std::vector<double> out(block.rows());
    for (std::size_t i = 0; i < block.rows(); ++i) out[i] = fn(block.row(i));
    return out;
}

}  // namespace

CollapsedSample collapse_block(const Matrix& raw, const CollapseSpec& spec) {
    const std::size_t p = raw.cols();
    spec.validate(p);
    const Matrix block = spec.rank_margins ? pseudo_observations_by_column(raw) : raw;
    const std::size_t n = block.rows();

    CollapsedSample out;
    out.arity = spec.arity();
    out.source_n = n;

    switch (spec.kind) {
        case CollapseKind::weighted_average: {
            std::vector<double> w = spec.weights;
            if (w.empty()) w.assign(p, 1.0 / static_cast<double>(p));
            // equal weights sum to 1 only up to rounding; skip the re-check there
            out.values = collapse_rows(block, [&](std::span<const double> x) {
                return std::inner_product(x.begin(), x.end(), w.begin(), 0.0);
            });
            break;
        }
        case CollapseKind::extreme_average:
            out.values = collapse_rows(
                block, [&](std::span<const double> x) { return extreme_average(x, spec.m, spec.direction); });
            break;
        case CollapseKind::maximum:
            out.values =
                collapse_rows(block, [](std::span<const double> x) { return *std::max_element(x.begin(), x.end()); });
            break;
        case CollapseKind::minimum:
            out.values =
                collapse_rows(block, [](std::span<const double> x) { return *std::min_element(x.begin(), x.end()); });
            break;
        case CollapseKind::pit: out.values = pit_pseudo_observations(block).w; break;
        case CollapseKind::distance:
            out.values = collapse_pairs(block, [&](std::span<const double> x, std::span<const double> y) {
                return pairwise_distance(x, y, spec.metric);
            });
            break;
        case CollapseKind::kernel: {
            KernelSpec k = spec.kernel;
            if (k.family == KernelFamily::gaussian && !k.sigma) {
                const double sigma = median_pairwise_distance(block);
                if (!(sigma > 0.0))
                    throw DegenerateError("Gaussian kernel: median pairwise distance is zero, pass sigma explicitly");
                k.sigma = sigma;
            }
            out.values = collapse_pairs(block, [&](std::span<const double> x, std::span<const double> y) {
                return kernel_similarity(x, y, k);
            });
            break;
        }
        case CollapseKind::multivariate_rank:
            out.values = collapse_pairs(block, [](std::span<const double> x, std::span<const double> y) {
                return static_cast<double>(multivariate_rank_indicator(x, y));
            });
            break;
    }
    return out;
}

CollapsedSample collapse_group(const GroupedData& data, std::string_view group, const CollapseSpec& spec) {
    return collapse_block(data.block(group), spec);
}

}  // namespace vecdep
