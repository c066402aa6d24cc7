#pragma once

// Collapsing functions: maps from a random vector (or a pair of independent
// copies of it) to a scalar.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vecdep/core.hpp"

namespace vecdep {

enum class CollapseKind { weighted_average, extreme_average, maximum, minimum, distance, kernel, multivariate_rank, pit };

enum class ExtremeDirection { largest, smallest };

struct DistanceMetric {
    enum class Kind { euclidean, manhattan, canberra, minkowski };
    Kind kind = Kind::euclidean;
    double order = 3.0;  ///< Minkowski r >= 1; ignored otherwise

    static DistanceMetric euclidean() { return {Kind::euclidean, 3.0}; }
    static DistanceMetric manhattan() { return {Kind::manhattan, 3.0}; }
    static DistanceMetric canberra() { return {Kind::canberra, 3.0}; }
    static DistanceMetric minkowski(double r) { return {Kind::minkowski, r}; }
};

enum class KernelFamily { linear, polynomial, gaussian, von_mises };

struct KernelSpec {
    KernelFamily family = KernelFamily::gaussian;
    int degree = 2;               ///< polynomial order d >= 1
    std::optional<double> sigma;  ///< Gaussian bandwidth; median heuristic when absent
    std::vector<double> kappa;    ///< von Mises concentrations, one per coordinate
};

/// Which collapsing function to apply, with its parameters.
struct CollapseSpec {
    CollapseKind kind = CollapseKind::weighted_average;
    std::vector<double> weights;  ///< weighted average; empty means equal weights
    std::size_t m = 1;            ///< extreme average
    ExtremeDirection direction = ExtremeDirection::largest;
    DistanceMetric metric;
    KernelSpec kernel;
    bool rank_margins = false;  ///< replace columns by pseudo-observations first

    Arity arity() const noexcept;

    /// Checks parameter invariants against a group of dimension p.
    void validate(std::size_t p) const;

    static CollapseSpec weighted_average(std::vector<double> w = {});
    static CollapseSpec extreme_average(std::size_t m, ExtremeDirection dir);
    static CollapseSpec maximum();
    static CollapseSpec minimum();
    static CollapseSpec distance(DistanceMetric metric = DistanceMetric::euclidean());
    static CollapseSpec kernel_similarity(KernelSpec k = {});
    static CollapseSpec multivariate_rank();
    static CollapseSpec pit();
};

std::string_view to_string(CollapseKind kind);
/// Throws InvalidArgument on unknown names.
CollapseKind parse_collapse_kind(std::string_view name);

/// w'x. Weights must sum to one within 1e-12.
double weighted_average(std::span<const double> x, std::span<const double> w);

/// Mean of the m largest (or smallest) coordinates, 1 <= m <= p.
double extreme_average(std::span<const double> x, std::size_t m, ExtremeDirection direction);

/// Canberra terms with 0/0 contribute 0.
double pairwise_distance(std::span<const double> x, std::span<const double> y, const DistanceMetric& metric);

/// Kernel value; Gaussian requires k.sigma to be set (> 0).
double kernel_similarity(std::span<const double> x, std::span<const double> y, const KernelSpec& k);

/// 1 iff x <= y componentwise (weak). Not symmetric in its arguments.
int multivariate_rank_indicator(std::span<const double> x, std::span<const double> y);

/// Median of the pairwise Euclidean distances between rows.
double median_pairwise_distance(const Matrix& block);

/// Collapses an n x p block. Pairwise kinds enumerate i<j lexicographically.
CollapsedSample collapse_block(const Matrix& block, const CollapseSpec& spec);

CollapsedSample collapse_group(const GroupedData& data, std::string_view group, const CollapseSpec& spec);

/// Position of pair (i, j), i < j, in the lexicographic enumeration.
constexpr std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) noexcept {
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

}  // namespace vecdep
