#pragma once

// Asymptotic variances of collapsed correlation estimators (delta method on
// U-statistic moment vectors), the Kendall's tau analogue, and pairs-bootstrap
// confidence intervals.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "vecdep/collapse.hpp"
#include "vecdep/core.hpp"
#include "vecdep/measures.hpp"

namespace vecdep {

/// (m_x, m_y, m_xx, m_yy, m_xy) of the collapsed values.
struct MomentVector5 {
    double m_x = 0.0;
    double m_y = 0.0;
    double m_xx = 0.0;
    double m_yy = 0.0;
    double m_xy = 0.0;
};

/// Concordance moments (P[S <= S'] for each side and jointly).
struct MomentVector3 {
    double m_x = 0.0;
    double m_y = 0.0;
    double m_xy = 0.0;
};

/// f(a,b,c,d,e) = (e - ab) / (sqrt(c - a^2) sqrt(d - b^2)).
double f5(const MomentVector5& m);
/// Throws DegenerateError unless m_xx > m_x^2 and m_yy > m_y^2.
std::array<double, 5> gradient_f5(const MomentVector5& m);

/// f(a,b,c) = (c - ab) / (sqrt(a - a^2) sqrt(b - b^2)).
double f3(const MomentVector3& m);
/// Throws DegenerateError unless both a and b lie strictly inside (0, 1).
std::array<double, 3> gradient_f3(const MomentVector3& m);

enum class AsymptoticCase { one_sample, pairwise };

struct VarianceEstimate {
    double sigma2 = 0.0;       ///< asymptotic variance of sqrt(n)(estimate - target)
    double estimate = 0.0;     ///< f evaluated at the plug-in moments
    AsymptoticCase kind = AsymptoticCase::one_sample;
    std::size_t n = 0;
    bool clipped = false;      ///< a negative plug-in value was set to 0
};

/// Sample covariance (divisor n - 1) of the columns of an n x r series.
std::vector<double> sample_covariance(const std::vector<std::vector<double>>& series);

/// g' S g for a packed r x r matrix.
double quadratic_form(std::span<const double> g, std::span<const double> cov);

/// One-sample collapse: moments are plain means, Sigma is the sample
/// covariance of (x, y, x^2, y^2, xy), sigma2 = grad' Sigma grad.
/// Throws DegenerateError at |estimate| = 1 or for zero variance.
VarianceEstimate sigma2_chi_case1(std::span<const double> sx, std::span<const double> sy);

MomentVector5 moments_case1(std::span<const double> sx, std::span<const double> sy);

/// Pairwise collapsed values for one group. forward[pair_index(i, j)] is
/// S(X_i, X_j) for i < j; backward holds S(X_j, X_i) when the collapse is not
/// symmetric and is empty otherwise.
struct PairSeries {
    std::size_t n = 0;
    std::vector<double> forward;
    std::vector<double> backward;

    bool symmetric() const noexcept { return backward.empty(); }
    double at(std::size_t i, std::size_t j) const noexcept;  ///< ordered S(X_i, X_j), i != j
};

/// Builds the pair series of a block; the multivariate-rank indicator gets
/// both orientations.
PairSeries pair_series(const Matrix& block, const CollapseSpec& spec);

/// Leave-self-out conditional means g_x, g_y, g_xx, g_yy, g_xy (each of
/// length n) of the symmetrised pair kernels.
std::array<std::vector<double>, 5> conditional_mean_series(const PairSeries& x, const PairSeries& y);

MomentVector5 moments_case2(const PairSeries& x, const PairSeries& y);

/// Pairwise collapse: sigma2 = 4 grad' Sigma_2 grad with Sigma_2 the sample
/// covariance of the conditional-mean series and the gradient taken at the
/// pair-averaged moments.
VarianceEstimate sigma2_chi_case2(const PairSeries& x, const PairSeries& y);

struct TauVarianceEstimate {
    VarianceEstimate variance;
    MomentVector3 moments;
    std::size_t tuples = 0;  ///< kernel evaluations used (pairwise case: 4-tuples)
};

/// Tau for one-sample collapses: symmetrised order-2 concordance kernels,
/// sigma2 = 4 grad' Sigma_1 grad. O(n log n).
TauVarianceEstimate tau_asymptotics_case1(std::span<const double> sx, std::span<const double> sy);

struct TauCase2Options {
    /// Number of distinct 4-tuples drawn without replacement; all C(n,4)
    /// tuples are used when this is at least C(n,4).
    std::uint64_t max_tuples = 200000;
    std::uint64_t seed = 0;
};

/// Tau for pairwise collapses: order-4 kernel 1{S(X_a,X_b) <= S(X_c,X_d)}
/// symmetrised over all 24 orderings, sigma2 = 16 grad' Sigma_2 grad.
TauVarianceEstimate tau_asymptotics_case2(const PairSeries& x, const PairSeries& y, const TauCase2Options& opt = {});

/// Every 4-subset of {0..n-1} (exhaustive, for small n).
TauVarianceEstimate tau_asymptotics_case2_exhaustive(const PairSeries& x, const PairSeries& y);

/// value -/+ z_{(1+level)/2} sqrt(sigma2 / n), clipped to [-1, 1].
std::pair<double, double> asymptotic_interval(double value, double sigma2, std::size_t n, double level);

using Estimator = std::function<double(const GroupedData&)>;

struct BootstrapOptions {
    std::size_t replicates = 1000;
    double level = 0.95;
    std::uint64_t seed = 0;
};

/// Pairs bootstrap with percentile interval. Replicate b resamples rows with
/// the stream derive_seed(seed, b). Throws DegenerateError when more than 5%
/// of the replicates fail.
DependenceEstimate bootstrap_ci(const GroupedData& data, const Estimator& estimator, const BootstrapOptions& opt);

struct CiOptions {
    CiMethod method = CiMethod::none;
    double level = 0.95;
    std::size_t replicates = 1000;
    std::uint64_t seed = 0;
    std::uint64_t max_tuples = 200000;
};

/// The point estimate for (cspec, mspec). PIT collapses route Pearson to
/// chi_pit_pearson and Spearman to chi_pit_spearman.
DependenceEstimate point_estimate(const GroupedData& data, std::string_view group_a, std::string_view group_b,
                                  const CollapseSpec& cspec, const MeasureSpec& mspec);

/// Point estimate plus the requested interval. Asymptotic intervals exist for
/// Pearson and tau on non-PIT collapses (case chosen by collapse arity).
DependenceEstimate estimate_dependence(const GroupedData& data, std::string_view group_a, std::string_view group_b,
                                       const CollapseSpec& cspec, const MeasureSpec& mspec, const CiOptions& ci);

}  // namespace vecdep
