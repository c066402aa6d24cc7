#pragma once

// Kendall distributions (distribution of the probability integral transform
// F_X(X)), their bivariate joint version, the Kendall copula, and the copula
// of componentwise maxima.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>

#include "vecdep/archimedean.hpp"
#include "vecdep/core.hpp"

namespace vecdep {

/// (X, Y) of dimensions p and q sharing one (p+q)-dimensional Archimedean copula.
struct JointKendallModel {
    ArchimedeanGenerator gen;
    std::size_t p = 1;
    std::size_t q = 1;
};

/// K(t) = sum_{k<p} (-s)^k psi^(k)(s) / k!, s = psi^{-1}(t); K(0) = 0, K(1) = 1.
/// Throws InvalidArgument if p - 1 exceeds gen.max_order().
double kendall_univariate(const ArchimedeanGenerator& gen, std::size_t p, double t);

/// Same as kendall_univariate but parameterised by s = psi^{-1}(t) in [0, inf].
double kendall_univariate_at(const ArchimedeanGenerator& gen, std::size_t p, double s);

/// Smallest t with K(t) >= u, by 60 bisection steps on [0, 1].
double kendall_quantile(const ArchimedeanGenerator& gen, std::size_t p, double u);

/// Joint Kendall distribution P(F_X(X) <= t1, F_Y(Y) <= t2):
///   sum_{k<p} sum_{l<q} a^k b^l / (k! l!) (-1)^(k+l) psi^(k+l)(a + b),
/// a = psi^{-1}(t1), b = psi^{-1}(t2). Needs derivative order p + q - 2.
/// Any zero argument gives 0.
double kendall_joint(const JointKendallModel& model, double t1, double t2);

/// Kendall copula C_K(u1, u2) = K_{X,Y}(K_X^-(u1), K_Y^-(u2)).
/// Throws DegenerateError if a marginal quantile cannot be bracketed.
double kendall_copula_eval(const JointKendallModel& model, double u1, double u2);

/// n x 2 sample (K_X(T1), K_Y(T2)) with T1 = psi(sum_{j<=p} psi^{-1}(U_j)),
/// T2 = psi(sum_{k<=q} psi^{-1}(V_k)) from (p+q)-dim Archimedean rows. Row i
/// uses the stream derive_seed(seed, i), matching sample_archimedean.
Matrix sample_kendall_copula(const JointKendallModel& model, std::size_t n, std::uint64_t seed);

/// Pairs of PIT pseudo-observations for two groups.
struct EmpiricalKendall {
    PitPseudoObservations w1;
    PitPseudoObservations w2;

    EmpiricalKendall(PitPseudoObservations a, PitPseudoObservations b);
    static EmpiricalKendall from_groups(const GroupedData& data, std::string_view group_a, std::string_view group_b);

    std::size_t n() const noexcept { return w1.w.size(); }
};

/// K_n(t1, t2) = (1/n) #{i : W_i1 <= t1, W_i2 <= t2}.
double empirical_kendall_joint(const EmpiricalKendall& ek, double t1, double t2);

/// K_n(t) = (1/n) #{i : W_i <= t}.
double empirical_kendall_margin(const PitPseudoObservations& w, double t);

/// Copula of (max X, max Y) built from a joint distribution function oracle.
/// Marginal distributions of the maxima are the oracle with the other block
/// set to its upper support bound.
struct MaxCollapsedModel {
    std::function<double(std::span<const double>, std::span<const double>)> joint_cdf;
    std::size_t p = 1;
    std::size_t q = 1;
    double x_lower = 0.0;
    double x_upper = 1.0;
    double y_lower = 0.0;
    double y_upper = 1.0;
};

/// F_{(max X, max Y)}(x, y) = F_{X,Y}(x, ..., x, y, ..., y).
double max_collapsed_cdf(const MaxCollapsedModel& model, double x, double y);

/// C(u, v) = F_{X,Y}(F_{max X}^-(u), ..., F_{max Y}^-(v), ...); quantiles by bisection.
double max_collapsed_copula_eval(const MaxCollapsedModel& model, double u, double v);

}  // namespace vecdep
