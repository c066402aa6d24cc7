#pragma once

// Collapsed measures of association chi(X, Y) = kappa(S(X), S(Y)).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vecdep/collapse.hpp"
#include "vecdep/core.hpp"

namespace vecdep {

enum class MeasureKind { pearson, spearman, tau, tail_upper, tail_lower };

std::string_view to_string(MeasureKind kind);
MeasureKind parse_measure_kind(std::string_view name);

struct MeasureSpec {
    MeasureKind kind = MeasureKind::pearson;
    std::optional<std::size_t> tail_k;  ///< defaults to ceil(sqrt(k))
};

enum class CiMethod { none, asymptotic, bootstrap };
std::string_view to_string(CiMethod m);

struct DependenceEstimate {
    double value = 0.0;
    std::optional<double> std_error;
    std::optional<std::pair<double, double>> ci;
    CiMethod method = CiMethod::none;
    double level = 0.0;  ///< confidence level when ci is present
    std::size_t n = 0;   ///< observations
    std::size_t k = 0;   ///< collapsed sample length
    std::vector<std::string> warnings;
};

/// Sample correlation. Throws DegenerateError on zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Pearson correlation of the pseudo-observations.
double spearman(std::span<const double> x, std::span<const double> y);

/// (concordant - discordant) / C(n, 2); pairs tied in either coordinate
/// count as neither. O(n log n). Throws DegenerateError if every pair is tied.
double tau(std::span<const double> x, std::span<const double> y);

enum class TailSide { upper, lower };

/// Empirical copula C_n(u, v) = (1/n) #{i : ux_i <= u, uy_i <= v}.
double empirical_copula(std::span<const double> ux, std::span<const double> uy, double u, double v);

/// Tail-dependence estimate at level k (1 <= k < n) from pseudo-observations:
/// upper uses u = 1 - k/n and (1 - 2u + C_n(u,u)) / (1 - u); lower uses
/// u = k/n and C_n(u,u) / u. Clipped to [0, 1].
double tail_dependence(std::span<const double> ux, std::span<const double> uy, TailSide side, std::size_t k);

std::size_t default_tail_k(std::size_t n);

/// Applies a measure to two collapsed samples of equal length.
double apply_measure(std::span<const double> sx, std::span<const double> sy, const MeasureSpec& spec);

/// Collapse both groups with cspec and apply mspec.
DependenceEstimate chi_collapsed(const GroupedData& data, std::string_view group_a, std::string_view group_b,
                                 const CollapseSpec& cspec, const MeasureSpec& mspec);

/// Pearson correlation of the PIT pseudo-observations (W_i1, W_i2).
DependenceEstimate chi_pit_pearson(const GroupedData& data, std::string_view group_a, std::string_view group_b);

/// Pearson correlation of (K_{n,X}(W_i1), K_{n,Y}(W_i2)) with K_n the
/// empirical distribution functions of the W's.
DependenceEstimate chi_pit_spearman(const GroupedData& data, std::string_view group_a, std::string_view group_b);

/// First canonical pair. Weights are scaled to unit sample variance of the
/// collapsed scores; rho is the first canonical correlation.
struct CanonicalWeights {
    std::vector<double> weights_a;
    std::vector<double> weights_b;
    double rho = 0.0;
    std::size_t iterations = 0;
};

CanonicalWeights optimal_weights(const GroupedData& data, std::string_view group_a, std::string_view group_b);

}  // namespace vecdep
