#pragma once

// Domain types shared by every module: the observation matrix, grouped
// column partitions, rank transforms and pseudo-observations.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vecdep {

/// Dense row-major matrix, observations by variables.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const noexcept { return {values_.data() + i * cols_, cols_}; }
    std::span<double> row(std::size_t i) noexcept { return {values_.data() + i * cols_, cols_}; }

    std::vector<double> column(std::size_t j) const;
    const std::vector<double>& data() const noexcept { return values_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

/// A named set of column indices into a GroupedData matrix.
struct Group {
    std::string name;
    std::vector<std::size_t> columns;

    std::size_t dim() const noexcept { return columns.size(); }
};

/// n x d sample with its columns partitioned into named groups (the random
/// vectors X, Y, ...). Groups reference columns by index.
///
/// Invariants (checked on construction): n >= 2, every group is non-empty,
/// groups are pairwise disjoint, every index is < d, names are unique.
class GroupedData {
public:
    GroupedData(Matrix values, std::vector<Group> groups);

    const Matrix& values() const noexcept { return values_; }
    const std::vector<Group>& groups() const noexcept { return groups_; }
    std::size_t n() const noexcept { return values_.rows(); }
    std::size_t d() const noexcept { return values_.cols(); }

    /// Throws InvalidArgument for an unknown name.
    const Group& group(std::string_view name) const;

    /// Copies the group's columns into a contiguous n x p matrix.
    Matrix block(const Group& g) const;
    Matrix block(std::string_view name) const { return block(group(name)); }

    /// New sample made of the given rows (in that order, repeats allowed).
    GroupedData select_rows(std::span<const std::size_t> rows) const;

    /// Rows [first, first + count).
    GroupedData slice_rows(std::size_t first, std::size_t count) const;

private:
    Matrix values_;
    std::vector<Group> groups_;
};

enum class Arity { one_sample, pairwise };

/// Output of a collapsing function: k = n values (one-sample) or
/// k = n(n-1)/2 values (pairwise, i<j lexicographic order).
struct CollapsedSample {
    std::vector<double> values;
    Arity arity = Arity::one_sample;
    std::size_t source_n = 0;

    std::size_t k() const noexcept { return values.size(); }
};

/// Number of unordered pairs, n(n-1)/2.
constexpr std::size_t pair_count(std::size_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Rank/(k+1) transform of a sample.
struct PseudoObservations {
    std::vector<double> u;
    bool has_ties = false;
};

/// Leave-one-out componentwise-domination fractions, each in {0, 1/(n-1), ..., 1}.
struct PitPseudoObservations {
    std::vector<double> w;
};

/// 1-based ranks; tied values receive the average of the ranks they span.
/// Throws InvalidArgument on empty input.
std::vector<double> ranks(std::span<const double> x);

bool has_ties(std::span<const double> x);

/// u_i = rank_i / (k + 1).
PseudoObservations pseudo_observations(std::span<const double> x);

/// Replaces every column of `data` by its pseudo-observations.
Matrix pseudo_observations_by_column(const Matrix& data);

/// #{k != i : row_k <= row_i componentwise} for every row; O(n log n) for
/// one or two columns, O(n^2 p) otherwise.
std::vector<std::size_t> dominated_counts(const Matrix& data);

/// w_i = #{k != i : row_k <= row_i componentwise} / (n - 1).
/// Throws InvalidArgument when n < 2.
PitPseudoObservations pit_pseudo_observations(const Matrix& data);

}  // namespace vecdep
