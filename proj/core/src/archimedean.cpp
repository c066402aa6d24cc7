#include "vecdep/archimedean.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vecdep/error.hpp"
#include "vecdep/parallel.hpp"
#include "vecdep/stats.hpp"

namespace vecdep {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

std::string_view to_string(Family f) {
    switch (f) {
        case Family::independence: return "independence";
        case Family::clayton: return "clayton";
        case Family::gumbel: return "gumbel";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    for (auto f : {Family::independence, Family::clayton, Family::gumbel})
        if (to_string(f) == name) return f;
    throw InvalidArgument("unknown Archimedean family '" + std::string(name) + "'");
}

ArchimedeanGenerator::ArchimedeanGenerator() : family_(Family::independence), theta_(1.0), max_order_(kDefaultMaxOrder) {}

ArchimedeanGenerator::ArchimedeanGenerator(Family family, double theta, int max_order)
    : family_(family), theta_(theta), max_order_(max_order) {
    if (max_order < 0) throw InvalidArgument("max derivative order must be >= 0");
    switch (family_) {
        case Family::clayton:
            if (!(theta_ > 0.0) || !std::isfinite(theta_)) throw InvalidArgument("Clayton requires theta > 0");
            break;
        case Family::gumbel: {
            if (!(theta_ >= 1.0) || !std::isfinite(theta_)) throw InvalidArgument("Gumbel requires theta >= 1");
            const double a = 1.0 / theta_;
            gumbel_log_coef_.assign(static_cast<std::size_t>(max_order_) + 1, {});
            gumbel_log_coef_[0] = {0.0};
            for (int k = 0; k < max_order_; ++k) {
                const auto& prev = gumbel_log_coef_[static_cast<std::size_t>(k)];
                auto& next = gumbel_log_coef_[static_cast<std::size_t>(k) + 1];
                next.assign(static_cast<std::size_t>(k) + 2, kNegInf);
                for (int j = 0; j <= k + 1; ++j) {
                    double acc = kNegInf;
                    if (j >= 1) acc = log_add(acc, std::log(a) + prev[static_cast<std::size_t>(j) - 1]);
                    if (j <= k) {
                        const double c = static_cast<double>(k) - j * a;
                        if (c > 0.0) acc = log_add(acc, std::log(c) + prev[static_cast<std::size_t>(j)]);
                    }
                    next[static_cast<std::size_t>(j)] = acc;
                }
            }
            break;
        }
        case Family::independence: theta_ = 1.0; break;
    }
}

double ArchimedeanGenerator::psi(double t) const {
    if (!(t >= 0.0)) throw InvalidArgument("psi is defined for t >= 0");
    switch (family_) {
        case Family::clayton: return std::exp(-std::log1p(t) / theta_);
        case Family::gumbel: return std::exp(-std::pow(t, 1.0 / theta_));
        case Family::independence: return std::exp(-t);
    }
    return 0.0;
}

double ArchimedeanGenerator::psi_inv(double u) const {
    if (!(u > 0.0 && u <= 1.0)) throw InvalidArgument("psi_inv is defined for u in (0, 1]");
    const double lu = std::log(u);
    switch (family_) {
        case Family::clayton: return std::expm1(-theta_ * lu);
        case Family::gumbel: return std::pow(-lu, theta_);
        case Family::independence: return -lu;
    }
    return 0.0;
}

void ArchimedeanGenerator::check_order(int k) const {
    if (k < 0) throw InvalidArgument("derivative order must be >= 0");
    if (k > max_order_)
        throw InvalidArgument("derivative order " + std::to_string(k) + " exceeds the supported maximum " +
                              std::to_string(max_order_));
}

double ArchimedeanGenerator::log_abs_psi_deriv(int k, double t) const {
    check_order(k);
    if (k == 0) return std::log(psi(t));
    if (!(t > 0.0)) throw InvalidArgument("psi derivatives are evaluated at t > 0");
    switch (family_) {
        case Family::independence: return -t;
        case Family::clayton: {
            const double a = 1.0 / theta_;
            double log_prod = 0.0;
            for (int i = 0; i < k; ++i) log_prod += std::log(a + i);
            return log_prod - (a + k) * std::log1p(t);
        }
        case Family::gumbel: {
            const double a = 1.0 / theta_;
            const double lt = std::log(t);
            const auto& coef = gumbel_log_coef_[static_cast<std::size_t>(k)];
            double acc = kNegInf;
            for (std::size_t j = 1; j < coef.size(); ++j)
                acc = log_add(acc, coef[j] + static_cast<double>(j) * a * lt);
            return -std::pow(t, a) - k * lt + acc;
        }
    }
    return kNegInf;
}

double ArchimedeanGenerator::psi_deriv(int k, double t) const {
    const double mag = std::exp(log_abs_psi_deriv(k, t));
    return (k % 2 == 0) ? mag : -mag;
}

double ArchimedeanGenerator::kendall_tau() const noexcept {
    switch (family_) {
        case Family::clayton: return theta_ / (theta_ + 2.0);
        case Family::gumbel: return 1.0 - 1.0 / theta_;
        case Family::independence: return 0.0;
    }
    return 0.0;
}

double ArchimedeanGenerator::sample_frailty(Rng& rng) const {
    switch (family_) {
        case Family::independence: return 1.0;
        case Family::clayton: {
            std::gamma_distribution<double> gamma(1.0 / theta_, 1.0);
            return gamma(rng);
        }
        case Family::gumbel: {
            const double a = 1.0 / theta_;
            if (a == 1.0) return 1.0;
            // Chambers-Mallows-Stuck for the totally skewed a-stable law scaled so
            // that E[exp(-tV)] = exp(-t^a); with Theta ~ U(0, pi), W ~ Exp(1).
            const double angle = std::numbers::pi * uniform_open(rng);
            const double w = standard_exponential(rng);
            const double left = std::sin(a * angle) / std::pow(std::sin(angle), 1.0 / a);
            const double right = std::pow(std::sin((1.0 - a) * angle) / w, (1.0 - a) / a);
            return left * right;
        }
    }
    return 1.0;
}

double tau_to_theta(Family family, double tau) {
    switch (family) {
        case Family::clayton:
            if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("Clayton needs Kendall's tau in (0, 1)");
            return 2.0 * tau / (1.0 - tau);
        case Family::gumbel:
            if (!(tau >= 0.0 && tau < 1.0)) throw InvalidArgument("Gumbel needs Kendall's tau in [0, 1)");
            return 1.0 / (1.0 - tau);
        case Family::independence:
            if (tau != 0.0) throw InvalidArgument("the independence family has Kendall's tau 0");
            return 1.0;
    }
    return 1.0;
}

void sample_frailty_row(const ArchimedeanGenerator& gen, Rng& rng, std::span<double> out) {
    const double v = gen.sample_frailty(rng);
    for (double& e : out) e = standard_exponential(rng) / v;
}

Matrix sample_archimedean(const ArchimedeanGenerator& gen, std::size_t d, std::size_t n, std::uint64_t seed) {
    if (d < 1 || n < 1) throw InvalidArgument("sample_archimedean needs d >= 1 and n >= 1");
    Matrix out(n, d);
    parallel_for(n, [&](std::size_t i) {
        Rng rng = make_stream(seed, i);
        auto row = out.row(i);
        sample_frailty_row(gen, rng, row);
        for (double& x : row) x = gen.psi(x);
    });
    return out;
}

double apply_margin(Margin margin, double u) {
    switch (margin) {
        case Margin::uniform: return u;
        case Margin::normal: return normal_quantile(u);
        case Margin::exponential: return -std::log1p(-u);
    }
    return u;
}

GroupedData sample_scenario(const ScenarioSpec& spec, std::size_t n, std::uint64_t seed) {
    if (spec.p < 1 || spec.q < 1) throw InvalidArgument("scenario needs p, q >= 1");
    if (n < 2) throw InvalidArgument("scenario needs n >= 2");
    const std::size_t d = spec.p + spec.q;
    Matrix values(n, d);
    parallel_for(n, [&](std::size_t i) {
        Rng rng = make_stream(seed, i);
        auto row = values.row(i);
        switch (spec.kind) {
            case ScenarioKind::comonotone: {
                const double u = uniform_open(rng);
                for (double& x : row) x = u;
                break;
            }
            case ScenarioKind::countermonotone: {
                const double u = uniform_open(rng);
                for (std::size_t j = 0; j < spec.p; ++j) row[j] = u;
                for (std::size_t j = spec.p; j < d; ++j) row[j] = 1.0 - u;
                break;
            }
            case ScenarioKind::independent_groups: {
                sample_frailty_row(spec.within, rng, row.first(spec.p));
                sample_frailty_row(spec.within, rng, row.subspan(spec.p));
                for (double& x : row) x = spec.within.psi(x);
                break;
            }
        }
        for (double& x : row) x = apply_margin(spec.margin, x);
    });
    std::vector<Group> groups(2);
    groups[0].name = "X";
    groups[1].name = "Y";
    for (std::size_t j = 0; j < spec.p; ++j) groups[0].columns.push_back(j);
    for (std::size_t j = spec.p; j < d; ++j) groups[1].columns.push_back(j);
    return GroupedData(std::move(values), std::move(groups));
}

}  // namespace vecdep
