#include "vecdep/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>

#include "vecdep/error.hpp"
#include "vecdep/parallel.hpp"
#include "vecdep/random.hpp"
#include "vecdep/stats.hpp"

namespace vecdep {

namespace {

constexpr double kBoundary = 1e-12;

void require_same_length(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw InvalidArgument(std::string(what) + ": samples differ in length");
}

void require_interior(double estimate) {
    if (!std::isfinite(estimate) || std::abs(estimate) > 1.0 - kBoundary)
        throw DegenerateError("estimate lies on the boundary +-1; asymptotic variance is undefined");
}

VarianceEstimate finish(double raw_sigma2, double estimate, AsymptoticCase kind, std::size_t n) {
    VarianceEstimate v;
    v.estimate = estimate;
    v.kind = kind;
    v.n = n;
    if (!std::isfinite(raw_sigma2)) throw DegenerateError("asymptotic variance is not finite");
    if (raw_sigma2 < 0.0) {
        v.clipped = true;
        raw_sigma2 = 0.0;
    }
    v.sigma2 = raw_sigma2;
    return v;
}

std::uint64_t choose4(std::uint64_t n) {
    if (n < 4) return 0;
    return n * (n - 1) / 2 * (n - 2) / 3 * (n - 3) / 4;
}

std::uint64_t choose(std::uint64_t n, unsigned k) {
    if (n < k) return 0;
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Inverse of the combinatorial number system: rank -> c0 < c1 < c2 < c3.
std::array<std::size_t, 4> unrank4(std::uint64_t rank, std::size_t n) {
    std::array<std::size_t, 4> out{};
    std::size_t upper = n;
    for (unsigned k = 4; k >= 1; --k) {
        // largest c < upper with C(c, k) <= rank
        std::size_t lo = k - 1;
        std::size_t hi = upper - 1;
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo + 1) / 2;
            if (choose(mid, k) <= rank)
                lo = mid;
            else
                hi = mid - 1;
        }
        out[k - 1] = lo;
        rank -= choose(lo, k);
        upper = lo;
    }
    return out;
}

struct TupleAccumulator {
    const PairSeries& x;
    const PairSeries& y;
    std::vector<std::int64_t> acc_x, acc_y, acc_xy, count;
    std::int64_t sum_x = 0, sum_y = 0, sum_xy = 0;
    std::uint64_t tuples = 0;

    TupleAccumulator(const PairSeries& px, const PairSeries& py)
        : x(px), y(py), acc_x(px.n), acc_y(px.n), acc_xy(px.n), count(px.n) {}

    // Counts (out of 24) of the kernel symmetrised over all orderings.
    void add(std::array<std::size_t, 4> t) {
        std::sort(t.begin(), t.end());
        std::int64_t kx = 0, ky = 0, kxy = 0;
        do {
            const bool cx = x.at(t[0], t[1]) <= x.at(t[2], t[3]);
            const bool cy = y.at(t[0], t[1]) <= y.at(t[2], t[3]);
            kx += cx;
            ky += cy;
            kxy += cx && cy;
        } while (std::next_permutation(t.begin(), t.end()));
        for (std::size_t i : t) {
            acc_x[i] += kx;
            acc_y[i] += ky;
            acc_xy[i] += kxy;
            ++count[i];
        }
        sum_x += kx;
        sum_y += ky;
        sum_xy += kxy;
        ++tuples;
    }

    TauVarianceEstimate result() const {
        if (tuples == 0) throw InvalidArgument("tau asymptotics for pairwise collapses need n >= 4");
        const double denom = 24.0 * static_cast<double>(tuples);
        TauVarianceEstimate out;
        out.moments = {static_cast<double>(sum_x) / denom, static_cast<double>(sum_y) / denom,
                       static_cast<double>(sum_xy) / denom};
        out.tuples = tuples;
        std::vector<std::vector<double>> series(3);
        for (std::size_t i = 0; i < x.n; ++i) {
            if (count[i] == 0) continue;  // not covered by any sampled tuple
            const double c = 24.0 * static_cast<double>(count[i]);
            series[0].push_back(static_cast<double>(acc_x[i]) / c);
            series[1].push_back(static_cast<double>(acc_y[i]) / c);
            series[2].push_back(static_cast<double>(acc_xy[i]) / c);
        }
        if (series[0].size() < 3) throw DegenerateError("too few observations covered by the sampled 4-tuples");
        const double estimate = f3(out.moments);
        require_interior(estimate);
        const auto grad = gradient_f3(out.moments);
        const auto cov = sample_covariance(series);
        out.variance = finish(16.0 * quadratic_form(grad, cov), estimate, AsymptoticCase::pairwise, x.n);
        return out;
    }
};

void require_matching(const PairSeries& x, const PairSeries& y) {
    if (x.n != y.n) throw InvalidArgument("pair series come from samples of different size");
    if (x.forward.size() != pair_count(x.n) || y.forward.size() != pair_count(y.n))
        throw InvalidArgument("pair series length does not match n(n-1)/2");
    if (x.n < 3) throw InvalidArgument("pairwise asymptotics need n >= 3");
}

double percentile(const std::vector<double>& sorted, double p) {
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

void require_level(double level) {
    if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("confidence level must lie in (0, 1)");
}

}  // namespace

double f5(const MomentVector5& m) {
    return (m.m_xy - m.m_x * m.m_y) / (std::sqrt(m.m_xx - m.m_x * m.m_x) * std::sqrt(m.m_yy - m.m_y * m.m_y));
}

std::array<double, 5> gradient_f5(const MomentVector5& m) {
    const double vx = m.m_xx - m.m_x * m.m_x;
    const double vy = m.m_yy - m.m_y * m.m_y;
    if (!(vx > 0.0) || !(vy > 0.0)) throw DegenerateError("degenerate moments: zero variance of a collapsed sample");
    const double sx = std::sqrt(vx);
    const double sy = std::sqrt(vy);
    const double num = m.m_xy - m.m_x * m.m_y;
    const double d = sx * sy;
    return {
        m.m_x * num / (vx * sx * sy) - m.m_y / d,
        m.m_y * num / (vy * sy * sx) - m.m_x / d,
        -num / (2.0 * vx * sx * sy),
        -num / (2.0 * vy * sy * sx),
        1.0 / d,
    };
}

double f3(const MomentVector3& m) {
    return (m.m_xy - m.m_x * m.m_y) / (std::sqrt(m.m_x - m.m_x * m.m_x) * std::sqrt(m.m_y - m.m_y * m.m_y));
}

std::array<double, 3> gradient_f3(const MomentVector3& m) {
    const double va = m.m_x - m.m_x * m.m_x;
    const double vb = m.m_y - m.m_y * m.m_y;
    if (!(va > 0.0) || !(vb > 0.0)) throw DegenerateError("degenerate concordance moments (0 or 1)");
    const double sa = std::sqrt(va);
    const double sb = std::sqrt(vb);
    const double num = m.m_xy - m.m_x * m.m_y;
    const double d = sa * sb;
    return {
        -m.m_y / d - num * (1.0 - 2.0 * m.m_x) / (2.0 * va * sa * sb),
        -m.m_x / d - num * (1.0 - 2.0 * m.m_y) / (2.0 * vb * sb * sa),
        1.0 / d,
    };
}

std::vector<double> sample_covariance(const std::vector<std::vector<double>>& series) {
    const std::size_t r = series.size();
    if (r == 0) return {};
    const std::size_t n = series[0].size();
    for (const auto& s : series) require_same_length(s.size(), n, "sample covariance");
    if (n < 2) throw InvalidArgument("sample covariance needs at least 2 observations");
    std::vector<double> means(r);
    for (std::size_t a = 0; a < r; ++a) means[a] = mean(series[a]);
    std::vector<double> cov(r * r, 0.0);
    for (std::size_t a = 0; a < r; ++a) {
        for (std::size_t b = a; b < r; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += (series[a][i] - means[a]) * (series[b][i] - means[b]);
            cov[a * r + b] = cov[b * r + a] = s / static_cast<double>(n - 1);
        }
    }
    return cov;
}

double quadratic_form(std::span<const double> g, std::span<const double> cov) {
    const std::size_t r = g.size();
    if (cov.size() != r * r) throw InvalidArgument("quadratic form: dimension mismatch");
    double s = 0.0;
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) s += g[a] * cov[a * r + b] * g[b];
    return s;
}

MomentVector5 moments_case1(std::span<const double> sx, std::span<const double> sy) {
    require_same_length(sx.size(), sy.size(), "moments");
    const double n = static_cast<double>(sx.size());
    MomentVector5 m;
    for (std::size_t i = 0; i < sx.size(); ++i) {
        m.m_x += sx[i];
        m.m_y += sy[i];
        m.m_xx += sx[i] * sx[i];
        m.m_yy += sy[i] * sy[i];
        m.m_xy += sx[i] * sy[i];
    }
    m.m_x /= n;
    m.m_y /= n;
    m.m_xx /= n;
    m.m_yy /= n;
    m.m_xy /= n;
    return m;
}

VarianceEstimate sigma2_chi_case1(std::span<const double> sx, std::span<const double> sy) {
    require_same_length(sx.size(), sy.size(), "sigma2 (one-sample)");
    const std::size_t n = sx.size();
    if (n < 3) throw InvalidArgument("asymptotic variance needs n >= 3");
    const MomentVector5 m = moments_case1(sx, sy);
    const auto grad = gradient_f5(m);
    const double estimate = f5(m);
    require_interior(estimate);
    std::vector<std::vector<double>> series(5, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        series[0][i] = sx[i];
        series[1][i] = sy[i];
        series[2][i] = sx[i] * sx[i];
        series[3][i] = sy[i] * sy[i];
        series[4][i] = sx[i] * sy[i];
    }
    return finish(quadratic_form(grad, sample_covariance(series)), estimate, AsymptoticCase::one_sample, n);
}

double PairSeries::at(std::size_t i, std::size_t j) const noexcept {
    if (i < j) return forward[pair_index(n, i, j)];
    return symmetric() ? forward[pair_index(n, j, i)] : backward[pair_index(n, j, i)];
}

PairSeries pair_series(const Matrix& block, const CollapseSpec& spec) {
    if (spec.arity() != Arity::pairwise) throw InvalidArgument("pair series need a pairwise collapse");
    PairSeries out;
    out.n = block.rows();
    out.forward = collapse_block(block, spec).values;
    if (spec.kind == CollapseKind::multivariate_rank) {
        const Matrix b = spec.rank_margins ? pseudo_observations_by_column(block) : block;
        const std::size_t n = b.rows();
        out.backward.resize(out.forward.size());
        parallel_for(n, [&](std::size_t i) {
            for (std::size_t j = i + 1; j < n; ++j)
                out.backward[pair_index(n, i, j)] = static_cast<double>(multivariate_rank_indicator(b.row(j), b.row(i)));
        });
    }
    return out;
}

std::array<std::vector<double>, 5> conditional_mean_series(const PairSeries& x, const PairSeries& y) {
    require_matching(x, y);
    const std::size_t n = x.n;
    std::array<std::vector<double>, 5> g;
    for (auto& s : g) s.assign(n, 0.0);
    const double denom = static_cast<double>(n - 1);
    parallel_for(n, [&](std::size_t i) {
        double a[5] = {0, 0, 0, 0, 0};
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double xf = x.at(i, j), xb = x.at(j, i);
            const double yf = y.at(i, j), yb = y.at(j, i);
            a[0] += 0.5 * (xf + xb);
            a[1] += 0.5 * (yf + yb);
            a[2] += 0.5 * (xf * xf + xb * xb);
            a[3] += 0.5 * (yf * yf + yb * yb);
            a[4] += 0.5 * (xf * yf + xb * yb);
        }
        for (int r = 0; r < 5; ++r) g[static_cast<std::size_t>(r)][i] = a[r] / denom;
    });
    return g;
}

MomentVector5 moments_case2(const PairSeries& x, const PairSeries& y) {
    require_matching(x, y);
    MomentVector5 m;
    const std::size_t n = x.n;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double xf = x.at(i, j), xb = x.at(j, i);
            const double yf = y.at(i, j), yb = y.at(j, i);
            m.m_x += 0.5 * (xf + xb);
            m.m_y += 0.5 * (yf + yb);
            m.m_xx += 0.5 * (xf * xf + xb * xb);
            m.m_yy += 0.5 * (yf * yf + yb * yb);
            m.m_xy += 0.5 * (xf * yf + xb * yb);
        }
    }
    const double k = static_cast<double>(pair_count(n));
    m.m_x /= k;
    m.m_y /= k;
    m.m_xx /= k;
    m.m_yy /= k;
    m.m_xy /= k;
    return m;
}

VarianceEstimate sigma2_chi_case2(const PairSeries& x, const PairSeries& y) {
    const MomentVector5 m = moments_case2(x, y);
    const auto grad = gradient_f5(m);
    const double estimate = f5(m);
    require_interior(estimate);
    const auto g = conditional_mean_series(x, y);
    const std::vector<std::vector<double>> series(g.begin(), g.end());
    return finish(4.0 * quadratic_form(grad, sample_covariance(series)), estimate, AsymptoticCase::pairwise, x.n);
}

TauVarianceEstimate tau_asymptotics_case1(std::span<const double> sx, std::span<const double> sy) {
    require_same_length(sx.size(), sy.size(), "tau asymptotics");
    const std::size_t n = sx.size();
    if (n < 3) throw InvalidArgument("tau asymptotics need n >= 3");

    Matrix lower(n, 2), upper(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        lower(i, 0) = sx[i];
        lower(i, 1) = sy[i];
        upper(i, 0) = -sx[i];
        upper(i, 1) = -sy[i];
    }
    // #{j != i : (s_j, t_j) <= (s_i, t_i)} and the reverse domination
    const auto below = dominated_counts(lower);
    const auto above = dominated_counts(upper);

    auto marginal = [n](std::span<const double> s) {
        std::vector<double> sorted(s.begin(), s.end());
        std::sort(sorted.begin(), sorted.end());
        std::vector<std::size_t> c(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto le = std::upper_bound(sorted.begin(), sorted.end(), s[i]) - sorted.begin();
            const auto lt = std::lower_bound(sorted.begin(), sorted.end(), s[i]) - sorted.begin();
            // #{j != i : s_j <= s_i} + #{j != i : s_j >= s_i}
            c[i] = static_cast<std::size_t>(le - 1) + (n - static_cast<std::size_t>(lt) - 1);
        }
        return c;
    };
    const auto cx = marginal(sx);
    const auto cy = marginal(sy);

    std::vector<std::vector<double>> series(3, std::vector<double>(n));
    std::uint64_t tx = 0, ty = 0, txy = 0;
    const double denom = 2.0 * static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t cxy = below[i] + above[i];
        series[0][i] = static_cast<double>(cx[i]) / denom;
        series[1][i] = static_cast<double>(cy[i]) / denom;
        series[2][i] = static_cast<double>(cxy) / denom;
        tx += cx[i];
        ty += cy[i];
        txy += cxy;
    }
    const double total = 2.0 * static_cast<double>(n) * static_cast<double>(n - 1);
    TauVarianceEstimate out;
    out.moments = {static_cast<double>(tx) / total, static_cast<double>(ty) / total, static_cast<double>(txy) / total};
    out.tuples = pair_count(n);
    const double estimate = f3(out.moments);
    require_interior(estimate);
    const auto grad = gradient_f3(out.moments);
    out.variance = finish(4.0 * quadratic_form(grad, sample_covariance(series)), estimate, AsymptoticCase::one_sample, n);
    return out;
}

TauVarianceEstimate tau_asymptotics_case2(const PairSeries& x, const PairSeries& y, const TauCase2Options& opt) {
    require_matching(x, y);
    const std::size_t n = x.n;
    if (n < 4) throw InvalidArgument("tau asymptotics for pairwise collapses need n >= 4");
    if (n > 65536) throw InvalidArgument("tau asymptotics for pairwise collapses support n <= 65536");
    if (opt.max_tuples == 0) throw InvalidArgument("at least one 4-tuple is required");
    const std::uint64_t total = choose4(n);
    const std::uint64_t b = std::min(total, opt.max_tuples);

    // Floyd's sampling of b distinct ranks from [0, total)
    Rng rng = make_stream(opt.seed, 0);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(b) * 2);
    std::vector<std::uint64_t> ranks_drawn;
    ranks_drawn.reserve(static_cast<std::size_t>(b));
    for (std::uint64_t j = total - b; j < total; ++j) {
        const auto t = static_cast<std::uint64_t>(uniform_open(rng) * static_cast<double>(j + 1));
        const std::uint64_t pick = chosen.count(std::min(t, j)) ? j : std::min(t, j);
        chosen.insert(pick);
        ranks_drawn.push_back(pick);
    }

    TupleAccumulator acc(x, y);
    for (std::uint64_t r : ranks_drawn) acc.add(unrank4(r, n));
    return acc.result();
}

TauVarianceEstimate tau_asymptotics_case2_exhaustive(const PairSeries& x, const PairSeries& y) {
    require_matching(x, y);
    const std::size_t n = x.n;
    if (n < 4) throw InvalidArgument("tau asymptotics for pairwise collapses need n >= 4");
    TupleAccumulator acc(x, y);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c)
                for (std::size_t d = c + 1; d < n; ++d) acc.add({a, b, c, d});
    return acc.result();
}

std::pair<double, double> asymptotic_interval(double value, double sigma2, std::size_t n, double level) {
    require_level(level);
    if (n == 0) throw InvalidArgument("asymptotic interval needs n >= 1");
    const double half = normal_quantile(0.5 + 0.5 * level) * std::sqrt(sigma2 / static_cast<double>(n));
    return {std::max(-1.0, value - half), std::min(1.0, value + half)};
}

DependenceEstimate bootstrap_ci(const GroupedData& data, const Estimator& estimator, const BootstrapOptions& opt) {
    if (opt.replicates < 100) throw InvalidArgument("bootstrap needs at least 100 replicates");
    require_level(opt.level);
    DependenceEstimate est;
    est.value = estimator(data);
    est.n = data.n();
    est.method = CiMethod::bootstrap;
    est.level = opt.level;

    const std::size_t n = data.n();
    std::vector<double> reps(opt.replicates, std::numeric_limits<double>::quiet_NaN());
    std::vector<std::string> errors(opt.replicates);
    parallel_for(opt.replicates, [&](std::size_t b) {
        Rng rng = make_stream(opt.seed, b);
        std::vector<std::size_t> rows(n);
        for (auto& r : rows) r = std::min(n - 1, static_cast<std::size_t>(uniform_open(rng) * static_cast<double>(n)));
        try {
            reps[b] = estimator(data.select_rows(rows));
        } catch (const Error& e) {
            errors[b] = e.what();
        }
    });

    std::vector<double> ok;
    ok.reserve(reps.size());
    std::size_t failed = 0;
    std::string first_error;
    for (std::size_t b = 0; b < reps.size(); ++b) {
        if (std::isfinite(reps[b])) {
            ok.push_back(reps[b]);
        } else {
            ++failed;
            if (first_error.empty()) first_error = errors[b].empty() ? "non-finite estimate" : errors[b];
        }
    }
    if (static_cast<double>(failed) > 0.05 * static_cast<double>(opt.replicates))
        throw DegenerateError("bootstrap: " + std::to_string(failed) + " of " + std::to_string(opt.replicates) +
                              " resamples failed (first failure: " + first_error + ")");
    if (failed > 0)
        est.warnings.push_back(std::to_string(failed) + " bootstrap resamples failed and were dropped");

    std::sort(ok.begin(), ok.end());
    const double alpha = 1.0 - opt.level;
    double lo = percentile(ok, 0.5 * alpha);
    double hi = percentile(ok, 1.0 - 0.5 * alpha);
    if (est.value < lo || est.value > hi) {
        lo = std::min(lo, est.value);
        hi = std::max(hi, est.value);
        est.warnings.emplace_back("percentile interval widened to contain the point estimate");
    }
    est.ci = std::make_pair(lo, hi);

    const double m = mean(ok);
    double ss = 0.0;
    for (double v : ok) ss += (v - m) * (v - m);
    est.std_error = ok.size() > 1 ? std::sqrt(ss / static_cast<double>(ok.size() - 1)) : 0.0;
    return est;
}

DependenceEstimate point_estimate(const GroupedData& data, std::string_view group_a, std::string_view group_b,
                                  const CollapseSpec& cspec, const MeasureSpec& mspec) {
    if (cspec.kind == CollapseKind::pit) {
        if (mspec.kind == MeasureKind::pearson) return chi_pit_pearson(data, group_a, group_b);
        if (mspec.kind == MeasureKind::spearman) return chi_pit_spearman(data, group_a, group_b);
    }
    return chi_collapsed(data, group_a, group_b, cspec, mspec);
}

DependenceEstimate estimate_dependence(const GroupedData& data, std::string_view group_a, std::string_view group_b,
                                       const CollapseSpec& cspec, const MeasureSpec& mspec, const CiOptions& ci) {
    DependenceEstimate est = point_estimate(data, group_a, group_b, cspec, mspec);
    switch (ci.method) {
        case CiMethod::none: break;
        case CiMethod::asymptotic: {
            require_level(ci.level);
            if (cspec.kind == CollapseKind::pit)
                throw InvalidArgument(
                    "bootstrap required for PIT: no asymptotic normality result is available for the PIT estimator");
            if (mspec.kind != MeasureKind::pearson && mspec.kind != MeasureKind::tau)
                throw InvalidArgument("asymptotic intervals are available for pearson and tau only; use bootstrap");
            const Matrix a = data.block(group_a);
            const Matrix b = data.block(group_b);
            VarianceEstimate v;
            if (cspec.arity() == Arity::one_sample) {
                const auto sa = collapse_block(a, cspec).values;
                const auto sb = collapse_block(b, cspec).values;
                v = mspec.kind == MeasureKind::pearson ? sigma2_chi_case1(sa, sb)
                                                       : tau_asymptotics_case1(sa, sb).variance;
            } else {
                const PairSeries pa = pair_series(a, cspec);
                const PairSeries pb = pair_series(b, cspec);
                v = mspec.kind == MeasureKind::pearson
                        ? sigma2_chi_case2(pa, pb)
                        : tau_asymptotics_case2(pa, pb, {ci.max_tuples, ci.seed}).variance;
            }
            if (v.clipped) est.warnings.emplace_back("negative plug-in variance clipped to 0");
            est.std_error = std::sqrt(v.sigma2 / static_cast<double>(data.n()));
            est.ci = asymptotic_interval(est.value, v.sigma2, data.n(), ci.level);
            est.method = CiMethod::asymptotic;
            est.level = ci.level;
            break;
        }
        case CiMethod::bootstrap: {
            const std::string ga(group_a), gb(group_b);
            const Estimator f = [ga, gb, cspec, mspec](const GroupedData& d) {
                return point_estimate(d, ga, gb, cspec, mspec).value;
            };
            DependenceEstimate boot = bootstrap_ci(data, f, {ci.replicates, ci.level, ci.seed});
            est.std_error = boot.std_error;
            est.ci = boot.ci;
            est.method = CiMethod::bootstrap;
            est.level = ci.level;
            est.warnings.insert(est.warnings.end(), boot.warnings.begin(), boot.warnings.end());
            break;
        }
    }
    return est;
}

}  // namespace vecdep
