#include "vecdep/measures.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "vecdep/error.hpp"
#include "vecdep/stats.hpp"

namespace vecdep {

std::string_view to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::pearson: return "pearson";
        case MeasureKind::spearman: return "spearman";
        case MeasureKind::tau: return "tau";
        case MeasureKind::tail_upper: return "tail-upper";
        case MeasureKind::tail_lower: return "tail-lower";
    }
    return "unknown";
}

MeasureKind parse_measure_kind(std::string_view name) {
    for (auto k : {MeasureKind::pearson, MeasureKind::spearman, MeasureKind::tau, MeasureKind::tail_upper,
                   MeasureKind::tail_lower})
        if (to_string(k) == name) return k;
    throw InvalidArgument("unknown measure '" + std::string(name) + "'");
}

std::string_view to_string(CiMethod m) {
    switch (m) {
        case CiMethod::none: return "none";
        case CiMethod::asymptotic: return "asymptotic";
        case CiMethod::bootstrap: return "bootstrap";
    }
    return "unknown";
}

namespace {

void require_pairs(std::span<const double> x, std::span<const double> y, std::size_t min_n) {
    if (x.size() != y.size()) throw InvalidArgument("measure: samples differ in length");
    if (x.size() < min_n) throw InvalidArgument("measure: need at least " + std::to_string(min_n) + " observations");
}

// Merge sort of v counting strict inversions (i < j, v[i] > v[j]).
std::int64_t sort_count_inversions(std::vector<double>& v, std::vector<double>& buf, std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::int64_t inv = sort_count_inversions(v, buf, lo, mid) + sort_count_inversions(v, buf, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[j] < v[i]) {
            inv += static_cast<std::int64_t>(mid - i);
            buf[k++] = v[j++];
        } else {
            buf[k++] = v[i++];
        }
    }
    while (i < mid) buf[k++] = v[i++];
    while (j < hi) buf[k++] = v[j++];
    std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}

// sum over runs of equal values of t(t-1)/2; input sorted
template <class Eq>
std::int64_t tied_pairs(std::size_t n, Eq&& same) {
    std::int64_t total = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && same(i, j)) ++j;
        const auto t = static_cast<std::int64_t>(j - i);
        total += t * (t - 1) / 2;
        i = j;
    }
    return total;
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    require_pairs(x, y, 2);
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) throw DegenerateError("degenerate collapsed sample (zero variance)");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(std::span<const double> x, std::span<const double> y) {
    require_pairs(x, y, 2);
    const auto ux = pseudo_observations(x).u;
    const auto uy = pseudo_observations(y).u;
    return pearson(ux, uy);
}

double tau(std::span<const double> x, std::span<const double> y) {
    require_pairs(x, y, 2);
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
    });
    const std::int64_t tied_x = tied_pairs(n, [&](std::size_t i, std::size_t j) { return x[order[i]] == x[order[j]]; });
    const std::int64_t tied_xy = tied_pairs(
        n, [&](std::size_t i, std::size_t j) { return x[order[i]] == x[order[j]] && y[order[i]] == y[order[j]]; });

    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
    std::vector<double> buf(n);
    const std::int64_t discordant = sort_count_inversions(ys, buf, 0, n);
    const std::int64_t tied_y = tied_pairs(n, [&](std::size_t i, std::size_t j) { return ys[i] == ys[j]; });

    const auto total = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
    if (tied_x + tied_y - tied_xy >= total) throw DegenerateError("Kendall's tau undefined: all pairs are tied");
    const std::int64_t concordant_minus_discordant = total - tied_x - tied_y + tied_xy - 2 * discordant;
    return static_cast<double>(concordant_minus_discordant) / static_cast<double>(total);
}

double empirical_copula(std::span<const double> ux, std::span<const double> uy, double u, double v) {
    require_pairs(ux, uy, 1);
    std::size_t c = 0;
    for (std::size_t i = 0; i < ux.size(); ++i) c += (ux[i] <= u && uy[i] <= v) ? 1 : 0;
    return static_cast<double>(c) / static_cast<double>(ux.size());
}

std::size_t default_tail_k(std::size_t n) {
    const auto k = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    return std::clamp<std::size_t>(k, 1, n > 1 ? n - 1 : 1);
}

double tail_dependence(std::span<const double> ux, std::span<const double> uy, TailSide side, std::size_t k) {
    require_pairs(ux, uy, 2);
    const std::size_t n = ux.size();
    if (k < 1 || k >= n) throw InvalidArgument("tail level k must satisfy 1 <= k < n");
    const double frac = static_cast<double>(k) / static_cast<double>(n);
    double lambda;
    if (side == TailSide::upper) {
        const double u = 1.0 - frac;
        lambda = (1.0 - 2.0 * u + empirical_copula(ux, uy, u, u)) / frac;
    } else {
        lambda = empirical_copula(ux, uy, frac, frac) / frac;
    }
    return std::clamp(lambda, 0.0, 1.0);
}

double apply_measure(std::span<const double> sx, std::span<const double> sy, const MeasureSpec& spec) {
    switch (spec.kind) {
        case MeasureKind::pearson: return pearson(sx, sy);
        case MeasureKind::spearman: return spearman(sx, sy);
        case MeasureKind::tau: return tau(sx, sy);
        case MeasureKind::tail_upper:
        case MeasureKind::tail_lower: {
            require_pairs(sx, sy, 2);
            const auto ux = pseudo_observations(sx).u;
            const auto uy = pseudo_observations(sy).u;
            const std::size_t k = spec.tail_k.value_or(default_tail_k(sx.size()));
            return tail_dependence(ux, uy, spec.kind == MeasureKind::tail_upper ? TailSide::upper : TailSide::lower,
                                   k);
        }
    }
    return 0.0;
}

DependenceEstimate chi_collapsed(const GroupedData& data, std::string_view group_a, std::string_view group_b,
                                 const CollapseSpec& cspec, const MeasureSpec& mspec) {
    const auto sa = collapse_group(data, group_a, cspec);
    const auto sb = collapse_group(data, group_b, cspec);
    DependenceEstimate est;
    est.value = apply_measure(sa.values, sb.values, mspec);
    est.n = data.n();
    est.k = sa.k();
    if (mspec.kind != MeasureKind::pearson && (has_ties(sa.values) || has_ties(sb.values)))
        est.warnings.emplace_back("ties in collapsed sample; average ranks used");
    return est;
}

DependenceEstimate chi_pit_pearson(const GroupedData& data, std::string_view group_a, std::string_view group_b) {
    const auto w1 = pit_pseudo_observations(data.block(group_a)).w;
    const auto w2 = pit_pseudo_observations(data.block(group_b)).w;
    DependenceEstimate est;
    est.value = pearson(w1, w2);
    est.n = data.n();
    est.k = data.n();
    return est;
}

namespace {

// K_n(W_i) = #{j : W_j <= W_i} / n
std::vector<double> empirical_cdf_at_points(const std::vector<double>& w) {
    std::vector<double> sorted = w;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out(w.size());
    const double n = static_cast<double>(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        out[i] = static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), w[i]) - sorted.begin()) / n;
    return out;
}

}  // namespace

DependenceEstimate chi_pit_spearman(const GroupedData& data, std::string_view group_a, std::string_view group_b) {
    const auto w1 = pit_pseudo_observations(data.block(group_a)).w;
    const auto w2 = pit_pseudo_observations(data.block(group_b)).w;
    DependenceEstimate est;
    est.value = pearson(empirical_cdf_at_points(w1), empirical_cdf_at_points(w2));
    est.n = data.n();
    est.k = data.n();
    return est;
}

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return out;
}

Eigen::LLT<Eigen::MatrixXd> ridge_cholesky(Eigen::MatrixXd cov, const char* which) {
    const double eps = 1e-8 * cov.trace() / static_cast<double>(cov.rows());
    cov.diagonal().array() += eps;
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success || !(cov.trace() > 0.0))
        throw DegenerateError(std::string("optimal weights: covariance of group ") + which + " is singular");
    return llt;
}

}  // namespace

CanonicalWeights optimal_weights(const GroupedData& data, std::string_view group_a, std::string_view group_b) {
    const Eigen::MatrixXd xa = to_eigen(data.block(group_a));
    const Eigen::MatrixXd xb = to_eigen(data.block(group_b));
    const auto n = xa.rows();
    const auto p = xa.cols();
    const auto q = xb.cols();
    if (n <= p + q) throw InvalidArgument("optimal weights need n > p + q");

    const Eigen::MatrixXd ca = xa.rowwise() - xa.colwise().mean();
    const Eigen::MatrixXd cb = xb.rowwise() - xb.colwise().mean();
    const double denom = static_cast<double>(n - 1);
    const Eigen::MatrixXd saa = ca.transpose() * ca / denom;
    const Eigen::MatrixXd sbb = cb.transpose() * cb / denom;
    const Eigen::MatrixXd sab = ca.transpose() * cb / denom;

    const auto llt_a = ridge_cholesky(saa, "A");
    const auto llt_b = ridge_cholesky(sbb, "B");
    const Eigen::MatrixXd sbb_inv_sba = llt_b.solve(sab.transpose());  // q x p
    // whitened symmetric form L^-1 Sab Sbb^-1 Sba L^-T shares its spectrum with Saa^-1 Sab Sbb^-1 Sba
    const Eigen::MatrixXd la_inv_sab = llt_a.matrixL().solve(sab);
    const Eigen::MatrixXd k = la_inv_sab * llt_b.solve(la_inv_sab.transpose());

    Eigen::VectorXd u = Eigen::VectorXd::Ones(p).normalized();
    constexpr std::size_t kMaxIter = 10000;
    std::size_t iter = 0;
    bool converged = false;
    double lambda = u.dot(k * u);
    for (; iter < kMaxIter; ++iter) {
        Eigen::VectorXd next = k * u;
        const double norm = next.norm();
        if (!(norm > 0.0)) {
            converged = true;  // no cross-covariance at all
            break;
        }
        next /= norm;
        const double next_lambda = next.dot(k * next);
        const double residual = (k * next - next_lambda * next).norm();
        const bool settled = std::abs(next_lambda - lambda) <= 1e-13 * std::max(next_lambda, 1e-300);
        const double change = (next - u).lpNorm<Eigen::Infinity>();
        u = next;
        lambda = next_lambda;
        // near-equal leading eigenvalues stall the vector but not the Rayleigh quotient
        if (change < 1e-12 || (settled && residual <= 1e-6 * std::max(lambda, 1e-300))) {
            converged = true;
            break;
        }
    }
    if (!converged) throw DegenerateError("optimal weights: power iteration did not converge");

    Eigen::VectorXd wa = llt_a.matrixU().solve(u);
    Eigen::VectorXd wb = sbb_inv_sba * wa;
    const double var_a = wa.dot(saa * wa);
    const double var_b = wb.dot(sbb * wb);
    CanonicalWeights out;
    out.iterations = iter;
    if (!(var_a > 0.0)) throw DegenerateError("optimal weights: zero-variance canonical score");
    wa /= std::sqrt(var_a);
    if (var_b > 0.0) {
        wb /= std::sqrt(var_b);
        out.rho = std::clamp(wa.dot(sab * wb), 0.0, 1.0);
    } else {
        wb.setZero();
        out.rho = 0.0;
    }
    out.weights_a.assign(wa.data(), wa.data() + wa.size());
    out.weights_b.assign(wb.data(), wb.data() + wb.size());
    return out;
}

}  // namespace vecdep
