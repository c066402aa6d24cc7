#include "vecdep/kendall.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "vecdep/error.hpp"
#include "vecdep/parallel.hpp"

namespace vecdep {

namespace {

constexpr int kBisectionSteps = 60;

void require_order(const ArchimedeanGenerator& gen, std::size_t order) {
    if (order > static_cast<std::size_t>(gen.max_order()))
        throw InvalidArgument("Kendall distribution needs generator derivatives of order " + std::to_string(order) +
                              ", supported up to " + std::to_string(gen.max_order()));
}

void require_unit(double t, const char* what) {
    if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument(std::string(what) + " must lie in [0, 1]");
}

// log(s^k / k!) with 0^0 = 1.
double log_power_term(double log_s, std::size_t k) {
    if (k == 0) return 0.0;
    return static_cast<double>(k) * log_s - std::lgamma(static_cast<double>(k) + 1.0);
}

template <class F>
double bisect_quantile(F&& cdf, double u, double lo, double hi) {
    for (int it = 0; it < kBisectionSteps; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) >= u)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace

double kendall_univariate_at(const ArchimedeanGenerator& gen, std::size_t p, double s) {
    if (p < 1) throw InvalidArgument("Kendall distribution needs p >= 1");
    require_order(gen, p - 1);
    if (!(s >= 0.0)) throw InvalidArgument("psi^{-1}(t) must be >= 0");
    if (s == 0.0) return 1.0;
    if (std::isinf(s)) return 0.0;
    const double log_s = std::log(s);
    double sum = 0.0;
    for (std::size_t k = 0; k < p; ++k)
        sum += std::exp(gen.log_abs_psi_deriv(static_cast<int>(k), s) + log_power_term(log_s, k));
    return std::clamp(sum, 0.0, 1.0);
}

double kendall_univariate(const ArchimedeanGenerator& gen, std::size_t p, double t) {
    require_unit(t, "t");
    if (p < 1) throw InvalidArgument("Kendall distribution needs p >= 1");
    require_order(gen, p - 1);
    if (t == 0.0) return 0.0;
    return kendall_univariate_at(gen, p, gen.psi_inv(t));
}

double kendall_quantile(const ArchimedeanGenerator& gen, std::size_t p, double u) {
    require_unit(u, "u");
    if (u == 0.0) return 0.0;
    if (u == 1.0) return 1.0;
    const double t = bisect_quantile([&](double x) { return kendall_univariate(gen, p, x); }, u, 0.0, 1.0);
    if (std::abs(kendall_univariate(gen, p, t) - u) > 1e-8)
        throw DegenerateError("Kendall quantile bisection did not converge (non-monotone evaluation)");
    return t;
}

double kendall_joint(const JointKendallModel& model, double t1, double t2) {
    require_unit(t1, "t1");
    require_unit(t2, "t2");
    if (model.p < 1 || model.q < 1) throw InvalidArgument("joint Kendall distribution needs p, q >= 1");
    require_order(model.gen, (model.p - 1) + (model.q - 1));
    if (t1 == 0.0 || t2 == 0.0) return 0.0;
    const double a = t1 == 1.0 ? 0.0 : model.gen.psi_inv(t1);
    const double b = t2 == 1.0 ? 0.0 : model.gen.psi_inv(t2);
    const double s = a + b;
    if (s == 0.0) return 1.0;

    const std::size_t kmax = a > 0.0 ? model.p : 1;
    const std::size_t lmax = b > 0.0 ? model.q : 1;
    const double log_a = a > 0.0 ? std::log(a) : 0.0;
    const double log_b = b > 0.0 ? std::log(b) : 0.0;

    std::vector<double> log_deriv(kmax + lmax - 1);
    for (std::size_t m = 0; m < log_deriv.size(); ++m)
        log_deriv[m] = model.gen.log_abs_psi_deriv(static_cast<int>(m), s);

    double sum = 0.0;
    for (std::size_t k = 0; k < kmax; ++k) {
        const double lk = log_power_term(log_a, k);
        for (std::size_t l = 0; l < lmax; ++l) sum += std::exp(log_deriv[k + l] + lk + log_power_term(log_b, l));
    }
    return std::clamp(sum, 0.0, 1.0);
}

double kendall_copula_eval(const JointKendallModel& model, double u1, double u2) {
    require_unit(u1, "u1");
    require_unit(u2, "u2");
    if (u1 == 0.0 || u2 == 0.0) return 0.0;
    if (u1 == 1.0) return u2;
    if (u2 == 1.0) return u1;
    const double t1 = kendall_quantile(model.gen, model.p, u1);
    const double t2 = kendall_quantile(model.gen, model.q, u2);
    return kendall_joint(model, t1, t2);
}

Matrix sample_kendall_copula(const JointKendallModel& model, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw InvalidArgument("sample_kendall_copula needs n >= 1");
    if (model.p < 1 || model.q < 1) throw InvalidArgument("Kendall copula needs p, q >= 1");
    require_order(model.gen, std::max(model.p, model.q) - 1);
    Matrix out(n, 2);
    parallel_for(n, [&](std::size_t i) {
        Rng rng = make_stream(seed, i);
        std::vector<double> e(model.p + model.q);
        sample_frailty_row(model.gen, rng, e);
        // sum_j psi^{-1}(U_j) = sum_j E_j / V exactly, so T never needs forming
        double s1 = 0.0;
        double s2 = 0.0;
        for (std::size_t j = 0; j < model.p; ++j) s1 += e[j];
        for (std::size_t j = model.p; j < e.size(); ++j) s2 += e[j];
        out(i, 0) = kendall_univariate_at(model.gen, model.p, s1);
        out(i, 1) = kendall_univariate_at(model.gen, model.q, s2);
    });
    return out;
}

EmpiricalKendall::EmpiricalKendall(PitPseudoObservations a, PitPseudoObservations b)
    : w1(std::move(a)), w2(std::move(b)) {
    if (w1.w.size() != w2.w.size()) throw InvalidArgument("empirical Kendall: W vectors differ in length");
}

EmpiricalKendall EmpiricalKendall::from_groups(const GroupedData& data, std::string_view group_a,
                                               std::string_view group_b) {
    return EmpiricalKendall(pit_pseudo_observations(data.block(group_a)),
                            pit_pseudo_observations(data.block(group_b)));
}

double empirical_kendall_joint(const EmpiricalKendall& ek, double t1, double t2) {
    const std::size_t n = ek.n();
    if (n == 0) return 0.0;
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += (ek.w1.w[i] <= t1 && ek.w2.w[i] <= t2) ? 1 : 0;
    return static_cast<double>(c) / static_cast<double>(n);
}

double empirical_kendall_margin(const PitPseudoObservations& w, double t) {
    if (w.w.empty()) return 0.0;
    const auto c = std::count_if(w.w.begin(), w.w.end(), [t](double x) { return x <= t; });
    return static_cast<double>(c) / static_cast<double>(w.w.size());
}

double max_collapsed_cdf(const MaxCollapsedModel& model, double x, double y) {
    if (!model.joint_cdf) throw InvalidArgument("max-collapsed model has no joint distribution function");
    std::vector<double> xs(model.p, x);
    std::vector<double> ys(model.q, y);
    return model.joint_cdf(xs, ys);
}

double max_collapsed_copula_eval(const MaxCollapsedModel& model, double u, double v) {
    require_unit(u, "u");
    require_unit(v, "v");
    auto fx = [&](double x) { return max_collapsed_cdf(model, x, model.y_upper); };
    auto fy = [&](double y) { return max_collapsed_cdf(model, model.x_upper, y); };
    if (fx(model.x_upper) < u || fy(model.y_upper) < v)
        throw DegenerateError("max-collapsed copula: marginal does not reach the requested level at its upper bound");
    const double qx = bisect_quantile(fx, u, model.x_lower, model.x_upper);
    const double qy = bisect_quantile(fy, v, model.y_lower, model.y_upper);
    return max_collapsed_cdf(model, qx, qy);
}

}  // namespace vecdep
