#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "vecdep/archimedean.hpp"
#include "vecdep/asymptotics.hpp"
#include "vecdep/error.hpp"

using namespace vecdep;

namespace {

// Classical delta-method variance of the sample correlation in terms of
// central moments (divisor n).
double textbook_correlation_variance(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    auto mu = [&](int r, int s) {
        double acc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) acc += std::pow(x[i] - mx, r) * std::pow(y[i] - my, s);
        return acc / n;
    };
    const double m20 = mu(2, 0), m02 = mu(0, 2), m11 = mu(1, 1);
    const double rho = m11 / std::sqrt(m20 * m02);
    return rho * rho / 4.0 * (mu(4, 0) / (m20 * m20) + mu(0, 4) / (m02 * m02) + 2.0 * mu(2, 2) / (m20 * m02)) -
           rho * (mu(3, 1) / (std::pow(m20, 1.5) * std::sqrt(m02)) + mu(1, 3) / (std::sqrt(m20) * std::pow(m02, 1.5))) +
           mu(2, 2) / (m20 * m02);
}

std::array<double, 5> as_array(const MomentVector5& m) { return {m.m_x, m.m_y, m.m_xx, m.m_yy, m.m_xy}; }
MomentVector5 from_array(const std::array<double, 5>& a) { return {a[0], a[1], a[2], a[3], a[4]}; }

void bivariate_normal(std::size_t n, double rho, std::uint64_t seed, std::vector<double>& x, std::vector<double>& y) {
    Rng rng(seed);
    x.resize(n);
    y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = testing::standard_normal(rng);
        y[i] = rho * x[i] + std::sqrt(1.0 - rho * rho) * testing::standard_normal(rng);
    }
}

Matrix reversed_rows(const Matrix& m) {
    Matrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(m.rows() - 1 - i, j);
    return r;
}

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("correlation gradient examples") {
    const auto g = gradient_f5({0, 0, 1, 1, 0.5});
    CHECK(g[0] == doctest::Approx(0.0));
    CHECK(g[1] == doctest::Approx(0.0));
    CHECK(g[2] == doctest::Approx(-0.25));
    CHECK(g[3] == doctest::Approx(-0.25));
    CHECK(g[4] == doctest::Approx(1.0));

    const MomentVector5 m{0.3, -0.7, 1.4, 2.1, 0.2};
    const auto a = gradient_f5(m);
    const auto b = gradient_f5({m.m_y, m.m_x, m.m_yy, m.m_xx, m.m_xy});
    CHECK(a[0] == doctest::Approx(b[1]).epsilon(1e-14));
    CHECK(a[1] == doctest::Approx(b[0]).epsilon(1e-14));
    CHECK(a[2] == doctest::Approx(b[3]).epsilon(1e-14));
    CHECK(a[3] == doctest::Approx(b[2]).epsilon(1e-14));
    CHECK(a[4] == doctest::Approx(b[4]).epsilon(1e-14));

    const auto z = gradient_f5({0.5, 2.0, 1.5, 6.0, 1.0});
    CHECK(z[2] == 0.0);
    CHECK(z[3] == 0.0);
    CHECK_THROWS_AS(gradient_f5({1, 0, 1, 1, 0}), DegenerateError);
}

TEST_CASE("correlation gradient matches finite differences") {
    Rng rng(1);
    for (int rep = 0; rep < 100; ++rep) {
        const double a = 2 * uniform_open(rng) - 1, b = 2 * uniform_open(rng) - 1;
        const double vx = 0.5 + 1.5 * uniform_open(rng), vy = 0.5 + 1.5 * uniform_open(rng);
        const double r = 1.8 * uniform_open(rng) - 0.9;
        const MomentVector5 m{a, b, a * a + vx, b * b + vy, a * b + r * std::sqrt(vx * vy)};
        const auto g = gradient_f5(m);
        for (int k = 0; k < 5; ++k) {
            auto up = as_array(m), dn = as_array(m);
            const double h = 1e-5;
            up[k] += h;
            dn[k] -= h;
            const double fd = (f5(from_array(up)) - f5(from_array(dn))) / (2 * h);
            CHECK(std::abs(fd - g[k]) <= 1e-6 * std::max(1.0, std::abs(g[k])));
        }
    }
}

TEST_CASE("tau gradient") {
    const auto g = gradient_f3({0.5, 0.5, 0.25});
    CHECK(g[0] == doctest::Approx(-2.0));
    CHECK(g[1] == doctest::Approx(-2.0));
    CHECK(g[2] == doctest::Approx(4.0));
    CHECK_THROWS_AS(gradient_f3({1.0, 0.5, 0.5}), DegenerateError);
    CHECK_THROWS_AS(gradient_f3({0.5, 0.0, 0.0}), DegenerateError);

    Rng rng(2);
    for (int rep = 0; rep < 100; ++rep) {
        const double a = 0.2 + 0.6 * uniform_open(rng), b = 0.2 + 0.6 * uniform_open(rng);
        const double r = 1.8 * uniform_open(rng) - 0.9;
        const MomentVector3 m{a, b, a * b + r * std::sqrt(a * (1 - a) * b * (1 - b))};
        const auto grad = gradient_f3(m);
        const double h = 1e-5;
        const double fds[3] = {(f3({a + h, b, m.m_xy}) - f3({a - h, b, m.m_xy})) / (2 * h),
                               (f3({a, b + h, m.m_xy}) - f3({a, b - h, m.m_xy})) / (2 * h),
                               (f3({a, b, m.m_xy + h}) - f3({a, b, m.m_xy - h})) / (2 * h)};
        for (int k = 0; k < 3; ++k) CHECK(std::abs(fds[k] - grad[k]) <= 1e-6 * std::max(1.0, std::abs(grad[k])));
    }
}

TEST_CASE("one-sample variance reproduces the textbook delta method") {
    for (double rho : {0.0, 0.3, -0.7}) {
        std::vector<double> x, y;
        bivariate_normal(400, rho, 7, x, y);
        for (auto& v : y) v = v + 0.3 * v * v;  // non-Gaussian fourth moments
        const auto est = sigma2_chi_case1(x, y);
        const double n = 400.0;
        CHECK(est.sigma2 * (n - 1) / n == doctest::Approx(textbook_correlation_variance(x, y)).epsilon(1e-10));
        CHECK(est.estimate == doctest::Approx(pearson(x, y)).epsilon(1e-12));
        CHECK(est.kind == AsymptoticCase::one_sample);
    }
}

TEST_CASE("one-sample variance under independence") {
    std::vector<double> x, y;
    bivariate_normal(5000, 0.0, 3, x, y);
    const auto est = sigma2_chi_case1(x, y);
    CHECK(est.sigma2 >= 0.8);
    CHECK(est.sigma2 <= 1.2);
}

TEST_CASE("boundary and degenerate inputs") {
    const std::vector<double> x{1, 2, 3, 4, 5};
    CHECK_THROWS_AS(sigma2_chi_case1(x, x), DegenerateError);
    CHECK_THROWS_AS(tau_asymptotics_case1(x, x), DegenerateError);
    CHECK_THROWS_AS(sigma2_chi_case1(x, std::vector<double>{1, 1, 1, 1, 1}), DegenerateError);
    CHECK_THROWS_AS(sigma2_chi_case1(std::vector<double>{1, 2}, std::vector<double>{2, 1}), InvalidArgument);

    Matrix flat(6, 2, std::vector<double>(12, 1.0));
    const auto ps = pair_series(flat, CollapseSpec::distance());
    CHECK_THROWS_AS(sigma2_chi_case2(ps, ps), DegenerateError);
}

TEST_CASE("pairwise variance is four times the conditional-mean quadratic form") {
    const auto d = testing::gaussian_groups(60, 3, 2, 0.5, 5);
    for (auto spec : {CollapseSpec::distance(), CollapseSpec::kernel_similarity(), CollapseSpec::multivariate_rank()}) {
        const auto px = pair_series(d.block("X"), spec);
        const auto py = pair_series(d.block("Y"), spec);
        const auto g = conditional_mean_series(px, py);
        const std::vector<std::vector<double>> series(g.begin(), g.end());
        const double q = quadratic_form(gradient_f5(moments_case2(px, py)), sample_covariance(series));
        const auto est = sigma2_chi_case2(px, py);
        CHECK(est.sigma2 == doctest::Approx(4.0 * q).epsilon(1e-14));
        CHECK(est.kind == AsymptoticCase::pairwise);
    }
}

TEST_CASE("pairwise moments of symmetric collapses match the collapsed sample") {
    const auto d = testing::gaussian_groups(40, 2, 2, 0.5, 6);
    const auto spec = CollapseSpec::distance();
    const auto px = pair_series(d.block("X"), spec);
    const auto py = pair_series(d.block("Y"), spec);
    CHECK(px.symmetric());
    const auto m = moments_case2(px, py);
    CHECK(f5(m) == doctest::Approx(pearson(px.forward, py.forward)).epsilon(1e-12));
}

TEST_CASE("symmetrised rank kernel moments do not depend on row orientation") {
    const auto d = testing::gaussian_groups(30, 2, 2, 0.5, 7);
    const auto spec = CollapseSpec::multivariate_rank();
    const auto px = pair_series(d.block("X"), spec);
    const auto py = pair_series(d.block("Y"), spec);
    CHECK_FALSE(px.symmetric());
    const auto rx = pair_series(reversed_rows(d.block("X")), spec);
    const auto ry = pair_series(reversed_rows(d.block("Y")), spec);
    const auto a = moments_case2(px, py), b = moments_case2(rx, ry);
    CHECK(a.m_x == doctest::Approx(b.m_x).epsilon(1e-12));
    CHECK(a.m_xy == doctest::Approx(b.m_xy).epsilon(1e-12));
    CHECK(sigma2_chi_case2(px, py).sigma2 == doctest::Approx(sigma2_chi_case2(rx, ry).sigma2).epsilon(1e-10));
}

TEST_CASE("variances are invariant to relabelling observations") {
    const auto d = testing::gaussian_groups(80, 2, 3, 0.4, 8);
    std::vector<std::size_t> perm(80);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), Rng(9));
    const auto p = d.select_rows(perm);

    const auto avg = CollapseSpec::weighted_average();
    const auto s = [&](const GroupedData& g, const char* name) { return collapse_group(g, name, avg).values; };
    CHECK(sigma2_chi_case1(s(d, "X"), s(d, "Y")).sigma2 ==
          doctest::Approx(sigma2_chi_case1(s(p, "X"), s(p, "Y")).sigma2).epsilon(1e-10));
    CHECK(tau_asymptotics_case1(s(d, "X"), s(d, "Y")).variance.sigma2 ==
          doctest::Approx(tau_asymptotics_case1(s(p, "X"), s(p, "Y")).variance.sigma2).epsilon(1e-10));

    const auto dist = CollapseSpec::distance();
    CHECK(sigma2_chi_case2(pair_series(d.block("X"), dist), pair_series(d.block("Y"), dist)).sigma2 ==
          doctest::Approx(sigma2_chi_case2(pair_series(p.block("X"), dist), pair_series(p.block("Y"), dist)).sigma2)
              .epsilon(1e-10));
}

TEST_CASE("one-sample tau moments") {
    std::vector<double> x, y;
    bivariate_normal(300, 0.5, 10, x, y);
    const auto t = tau_asymptotics_case1(x, y);
    CHECK(t.moments.m_x == doctest::Approx(0.5));
    CHECK(t.moments.m_y == doctest::Approx(0.5));
    CHECK(t.variance.estimate == doctest::Approx(tau(x, y)).epsilon(1e-12));
    CHECK(t.variance.sigma2 > 0.0);

    // brute-force conditional series and their covariance
    const std::size_t n = x.size();
    std::vector<std::vector<double>> series(3, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        double a = 0, b = 0, c = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            a += 0.5 * ((x[j] <= x[i]) + (x[i] <= x[j]));
            b += 0.5 * ((y[j] <= y[i]) + (y[i] <= y[j]));
            c += 0.5 * ((x[j] <= x[i] && y[j] <= y[i]) + (x[i] <= x[j] && y[i] <= y[j]));
        }
        series[0][i] = a / (n - 1);
        series[1][i] = b / (n - 1);
        series[2][i] = c / (n - 1);
    }
    const double expected = 4.0 * quadratic_form(gradient_f3(t.moments), sample_covariance(series));
    CHECK(t.variance.sigma2 == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("incomplete U-statistic with every tuple equals exhaustive enumeration") {
    for (std::size_t n : {5u, 8u, 12u}) {
        const auto d = testing::gaussian_groups(n, 2, 2, 0.5, 20 + n);
        for (auto spec : {CollapseSpec::distance(), CollapseSpec::multivariate_rank()}) {
            const auto px = pair_series(d.block("X"), spec);
            const auto py = pair_series(d.block("Y"), spec);
            const auto ex = tau_asymptotics_case2_exhaustive(px, py);
            const std::uint64_t all = n * (n - 1) * (n - 2) * (n - 3) / 24;
            const auto in = tau_asymptotics_case2(px, py, {all, 77});
            CHECK(in.tuples == all);
            CHECK(ex.tuples == all);
            CHECK(in.moments.m_x == ex.moments.m_x);
            CHECK(in.moments.m_y == ex.moments.m_y);
            CHECK(in.moments.m_xy == ex.moments.m_xy);
            CHECK(in.variance.sigma2 == ex.variance.sigma2);
            // asking for more than exist is the same
            CHECK(tau_asymptotics_case2(px, py, {all * 10, 3}).variance.sigma2 == ex.variance.sigma2);
        }
    }
}

TEST_CASE("incomplete U-statistic approximates the exhaustive one") {
    const auto d = testing::gaussian_groups(30, 2, 2, 0.5, 40);
    const auto spec = CollapseSpec::distance();
    const auto px = pair_series(d.block("X"), spec);
    const auto py = pair_series(d.block("Y"), spec);
    const auto ex = tau_asymptotics_case2_exhaustive(px, py);
    const auto in = tau_asymptotics_case2(px, py, {10000, 1});
    CHECK(in.tuples == 10000);
    CHECK(in.moments.m_xy == doctest::Approx(ex.moments.m_xy).epsilon(0.02));
    CHECK(in.variance.sigma2 == doctest::Approx(ex.variance.sigma2).epsilon(0.2));
}

TEST_CASE("asymptotic interval") {
    const auto ci = asymptotic_interval(0.5, 1.0, 100, 0.95);
    CHECK(ci.first == doctest::Approx(0.5 - 0.1959963984540054).epsilon(1e-9));
    CHECK(ci.second == doctest::Approx(0.5 + 0.1959963984540054).epsilon(1e-9));
    const auto clipped = asymptotic_interval(0.95, 1.0, 10, 0.95);
    CHECK(clipped.second == 1.0);
    CHECK_THROWS_AS(asymptotic_interval(0.0, 1.0, 10, 1.0), InvalidArgument);
}

TEST_CASE("estimate_dependence dispatch") {
    const auto d = testing::gaussian_groups(200, 2, 2, 0.5, 50);
    CiOptions ci;
    ci.method = CiMethod::asymptotic;
    for (auto spec : {CollapseSpec::weighted_average(), CollapseSpec::distance()})
        for (auto k : {MeasureKind::pearson, MeasureKind::tau}) {
            const auto e = estimate_dependence(d, "X", "Y", spec, {k, {}}, ci);
            REQUIRE(e.ci.has_value());
            CHECK(e.ci->first <= e.value);
            CHECK(e.value <= e.ci->second);
            CHECK(e.method == CiMethod::asymptotic);
            CHECK(*e.std_error > 0.0);
        }
    CHECK_THROWS_AS(estimate_dependence(d, "X", "Y", CollapseSpec::pit(), {MeasureKind::pearson, {}}, ci),
                    InvalidArgument);
    CHECK_THROWS_AS(
        estimate_dependence(d, "X", "Y", CollapseSpec::weighted_average(), {MeasureKind::spearman, {}}, ci),
        InvalidArgument);
    const auto none = estimate_dependence(d, "X", "Y", CollapseSpec::pit(), {MeasureKind::spearman, {}}, {});
    CHECK_FALSE(none.ci.has_value());
    CHECK(none.value == chi_pit_spearman(d, "X", "Y").value);
}

TEST_CASE("bootstrap intervals") {
    ScenarioSpec co{ScenarioKind::comonotone, 2, 2, Margin::uniform, {}};
    const auto c = sample_scenario(co, 1000, 1);
    const Estimator pit = [](const GroupedData& g) { return chi_pit_pearson(g, "X", "Y").value; };
    const auto e = bootstrap_ci(c, pit, {200, 0.95, 3});
    REQUIRE(e.ci.has_value());
    CHECK(e.ci->second >= 0.99);

    const auto d = testing::gaussian_groups(300, 2, 2, 0.5, 2);
    const auto small = bootstrap_ci(d, pit, {100, 0.95, 5});
    const auto large = bootstrap_ci(d, pit, {1000, 0.95, 5});
    CHECK(std::abs(small.ci->first - large.ci->first) <= 0.05);
    CHECK(std::abs(small.ci->second - large.ci->second) <= 0.05);
    const auto again = bootstrap_ci(d, pit, {100, 0.95, 5});
    CHECK(again.ci == small.ci);
    CHECK(again.std_error == small.std_error);
    CHECK(small.ci->first <= small.value);
    CHECK(small.value <= small.ci->second);
    CHECK_THROWS_AS(bootstrap_ci(d, pit, {99, 0.95, 5}), InvalidArgument);
}

TEST_CASE("bootstrap fails when resamples fail too often") {
    const auto d = testing::gaussian_groups(50, 1, 1, 0.5, 3);
    // the full sample succeeds, every resample fails
    const Estimator fragile = [&](const GroupedData& g) -> double {
        if (!(g.values() == d.values())) throw DegenerateError("resample");
        return 0.5;
    };
    CHECK_THROWS_AS(bootstrap_ci(d, fragile, {100, 0.95, 1}), DegenerateError);
}

TEST_CASE("bootstrap coverage under independence") {
    int covered = 0;
    const int reps = 200;
    for (int r = 0; r < reps; ++r) {
        const auto d = testing::gaussian_groups(200, 2, 2, 0.0, 1000 + r);
        const Estimator est = [](const GroupedData& g) {
            return chi_collapsed(g, "X", "Y", CollapseSpec::weighted_average(), {MeasureKind::pearson, {}}).value;
        };
        const auto e = bootstrap_ci(d, est, {100, 0.95, static_cast<std::uint64_t>(r)});
        covered += e.ci->first <= 0.0 && 0.0 <= e.ci->second;
    }
    CHECK(covered >= 180);
    CHECK(covered <= 198);
}

TEST_CASE("one-sample tau interval coverage") {
    // bivariate normal with correlation 0.5 has tau = 2 asin(0.5) / pi = 1/3
    const double target = 1.0 / 3.0;
    int covered = 0;
    const int reps = 500;
    for (int r = 0; r < reps; ++r) {
        std::vector<double> x, y;
        bivariate_normal(500, 0.5, 7000 + r, x, y);
        const auto t = tau_asymptotics_case1(x, y);
        const auto ci = asymptotic_interval(t.variance.estimate, t.variance.sigma2, 500, 0.95);
        covered += ci.first <= target && target <= ci.second;
    }
    CHECK(covered >= 460);
    CHECK(covered <= 490);
}

}
