#pragma once

#include <span>

namespace vecdep {

double mean(std::span<const double> x);

/// Standard normal distribution function.
double normal_cdf(double x);

/// Standard normal quantile; rational initial guess refined by one Halley
/// step against erfc, accurate to ~1e-15 on (0, 1).
double normal_quantile(double p);

/// Kolmogorov-Smirnov distance between the empirical distribution of x and
/// the U(0,1) distribution function.
double ks_uniform_statistic(std::span<const double> x);

}  // namespace vecdep
