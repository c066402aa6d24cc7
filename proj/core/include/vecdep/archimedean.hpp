#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "vecdep/core.hpp"
#include "vecdep/random.hpp"

namespace vecdep {

enum class Family { independence, clayton, gumbel };

std::string_view to_string(Family f);
Family parse_family(std::string_view name);

/// Completely monotone Archimedean generator psi for the Clayton, Gumbel and
/// independence families, with derivatives up to max_order().
///
/// Clayton:      psi(t) = (1 + t)^(-1/theta),   theta > 0
/// Gumbel:       psi(t) = exp(-t^(1/theta)),    theta >= 1
/// Independence: psi(t) = exp(-t)
///
/// Derivatives are evaluated in the log domain as log((-1)^k psi^(k)(t)),
/// which is finite and sign-free for every completely monotone psi. For
/// Gumbel, (-1)^k psi^(k)(t) = psi(t) t^-k sum_j b_{k,j} t^(j/theta) where the
/// b_{k,j} >= 0 follow b_{k+1,j} = a b_{k,j-1} + (k - j a) b_{k,j}, a = 1/theta.
/// All terms are non-negative, so no cancellation occurs at high order.
class ArchimedeanGenerator {
public:
    static constexpr int kDefaultMaxOrder = 64;

    ArchimedeanGenerator();  ///< independence
    ArchimedeanGenerator(Family family, double theta, int max_order = kDefaultMaxOrder);

    static ArchimedeanGenerator independence() { return {}; }
    static ArchimedeanGenerator clayton(double theta) { return {Family::clayton, theta}; }
    static ArchimedeanGenerator gumbel(double theta) { return {Family::gumbel, theta}; }

    Family family() const noexcept { return family_; }
    double theta() const noexcept { return theta_; }
    int max_order() const noexcept { return max_order_; }

    double psi(double t) const;
    double psi_inv(double u) const;

    /// k-th derivative at t; t > 0 unless k == 0.
    double psi_deriv(int k, double t) const;

    /// log((-1)^k psi^(k)(t)); may be -inf (e.g. far tails) but never NaN.
    double log_abs_psi_deriv(int k, double t) const;

    /// Kendall's tau of the bivariate copula generated by psi.
    double kendall_tau() const noexcept;

    /// One draw of the frailty V whose Laplace transform is psi.
    double sample_frailty(Rng& rng) const;

private:
    void check_order(int k) const;

    Family family_;
    double theta_;
    int max_order_;
    std::vector<std::vector<double>> gumbel_log_coef_;  // [k][j], j = 0..k
};

/// Generator parameter giving the requested Kendall's tau.
/// Clayton: 2 tau / (1 - tau), tau in (0, 1). Gumbel: 1 / (1 - tau), tau in [0, 1).
double tau_to_theta(Family family, double tau);

/// Fills out[j] = E_j / V for one Marshall-Olkin draw; U_j = psi(out[j]).
void sample_frailty_row(const ArchimedeanGenerator& gen, Rng& rng, std::span<double> out);

/// n x d sample of the Archimedean copula, row i drawn from the stream
/// derive_seed(seed, i). Entries lie in (0, 1) up to floating-point limits.
Matrix sample_archimedean(const ArchimedeanGenerator& gen, std::size_t d, std::size_t n, std::uint64_t seed);

enum class ScenarioKind { independent_groups, comonotone, countermonotone };
enum class Margin { uniform, normal, exponential };

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::independent_groups;
    std::size_t p = 1;
    std::size_t q = 1;
    Margin margin = Margin::uniform;
    /// Copula inside each block for independent-groups.
    ArchimedeanGenerator within;
};

/// Two-group sample (groups "X" with p columns, "Y" with q columns).
GroupedData sample_scenario(const ScenarioSpec& spec, std::size_t n, std::uint64_t seed);

double apply_margin(Margin margin, double u);

}  // namespace vecdep
