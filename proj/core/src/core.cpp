#include "vecdep/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "vecdep/error.hpp"
#include "vecdep/parallel.hpp"

namespace vecdep {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows * cols)
        throw InvalidArgument("matrix storage size does not match its shape");
}

std::vector<double> Matrix::column(std::size_t j) const {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

GroupedData::GroupedData(Matrix values, std::vector<Group> groups)
    : values_(std::move(values)), groups_(std::move(groups)) {
    if (values_.rows() < 2) throw InvalidArgument("grouped data needs n >= 2 observations");
    std::vector<bool> used(values_.cols(), false);
    std::set<std::string> names;
    for (const auto& g : groups_) {
        if (g.columns.empty()) throw InvalidArgument("group '" + g.name + "' has no columns");
        if (!names.insert(g.name).second) throw InvalidArgument("duplicate group name '" + g.name + "'");
        for (std::size_t c : g.columns) {
            if (c >= values_.cols())
                throw InvalidArgument("group '" + g.name + "' references column " + std::to_string(c) +
                                      " but d = " + std::to_string(values_.cols()));
            if (used[c]) throw InvalidArgument("column " + std::to_string(c) + " belongs to more than one group");
            used[c] = true;
        }
    }
}

const Group& GroupedData::group(std::string_view name) const {
    for (const auto& g : groups_)
        if (g.name == name) return g;
    throw InvalidArgument("unknown group '" + std::string(name) + "'");
}

Matrix GroupedData::block(const Group& g) const {
    Matrix out(n(), g.dim());
    for (std::size_t i = 0; i < n(); ++i)
        for (std::size_t j = 0; j < g.dim(); ++j) out(i, j) = values_(i, g.columns[j]);
    return out;
}

GroupedData GroupedData::select_rows(std::span<const std::size_t> rows) const {
    Matrix out(rows.size(), d());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r] >= n()) throw InvalidArgument("row index out of range");
        std::copy_n(values_.row(rows[r]).begin(), d(), out.row(r).begin());
    }
    return GroupedData(std::move(out), groups_);
}

GroupedData GroupedData::slice_rows(std::size_t first, std::size_t count) const {
    if (first + count > n()) throw InvalidArgument("row slice out of range");
    std::vector<std::size_t> rows(count);
    std::iota(rows.begin(), rows.end(), first);
    return select_rows(rows);
}

std::vector<double> ranks(std::span<const double> x) {
    if (x.empty()) throw InvalidArgument("ranks of an empty sample");
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> r(x.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i + 1;
        while (j < order.size() && x[order[j]] == x[order[i]]) ++j;
        // positions i..j-1 (0-based) share the average 1-based rank
        const double avg = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t t = i; t < j; ++t) r[order[t]] = avg;
        i = j;
    }
    return r;
}

bool has_ties(std::span<const double> x) {
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

PseudoObservations pseudo_observations(std::span<const double> x) {
    PseudoObservations out;
    out.u = ranks(x);
    const double denom = static_cast<double>(x.size() + 1);
    for (double& v : out.u) v /= denom;
    out.has_ties = has_ties(x);
    return out;
}

Matrix pseudo_observations_by_column(const Matrix& data) {
    Matrix out(data.rows(), data.cols());
    for (std::size_t j = 0; j < data.cols(); ++j) {
        const auto col = data.column(j);
        const auto u = pseudo_observations(col).u;
        for (std::size_t i = 0; i < data.rows(); ++i) out(i, j) = u[i];
    }
    return out;
}

namespace {

// #{k != i : x_k <= x_i}
std::vector<std::size_t> dominated_counts_1d(const Matrix& data) {
    const std::size_t n = data.rows();
    std::vector<double> sorted = data.column(0);
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> counts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto le = std::upper_bound(sorted.begin(), sorted.end(), data(i, 0)) - sorted.begin();
        counts[i] = static_cast<std::size_t>(le) - 1;
    }
    return counts;
}

// Sweep over the first coordinate with a Fenwick tree over ranks of the
// second; rows sharing a first coordinate are inserted before any of them is
// queried so that weak inequality holds in both coordinates.
std::vector<std::size_t> dominated_counts_2d(const Matrix& data) {
    const std::size_t n = data.rows();
    std::vector<double> ys = data.column(1);
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    std::vector<std::size_t> yrank(n);  // 1-based position among distinct values
    for (std::size_t i = 0; i < n; ++i)
        yrank[i] = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), data(i, 1)) - ys.begin()) + 1;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return data(a, 0) < data(b, 0); });

    std::vector<std::size_t> tree(ys.size() + 1, 0);
    auto add = [&](std::size_t pos) {
        for (; pos < tree.size(); pos += pos & (~pos + 1)) ++tree[pos];
    };
    auto prefix = [&](std::size_t pos) {
        std::size_t s = 0;
        for (; pos > 0; pos -= pos & (~pos + 1)) s += tree[pos];
        return s;
    };

    std::vector<std::size_t> counts(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && data(order[j], 0) == data(order[i], 0)) ++j;
        for (std::size_t t = i; t < j; ++t) add(yrank[order[t]]);
        for (std::size_t t = i; t < j; ++t) counts[order[t]] = prefix(yrank[order[t]]) - 1;
        i = j;
    }
    return counts;
}

std::vector<std::size_t> dominated_counts_brute(const Matrix& data) {
    const std::size_t n = data.rows();
    const std::size_t p = data.cols();
    std::vector<std::size_t> counts(n);
    parallel_for(n, [&](std::size_t i) {
        const auto xi = data.row(i);
        std::size_t c = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            const auto xk = data.row(k);
            bool le = true;
            for (std::size_t j = 0; j < p && le; ++j) le = xk[j] <= xi[j];
            c += le ? 1 : 0;
        }
        counts[i] = c;
    });
    return counts;
}

}  // namespace

std::vector<std::size_t> dominated_counts(const Matrix& data) {
    if (data.cols() == 0) throw InvalidArgument("domination counts need at least one column");
    if (data.rows() == 0) return {};
    switch (data.cols()) {
        case 1: return dominated_counts_1d(data);
        case 2: return dominated_counts_2d(data);
        default: return dominated_counts_brute(data);
    }
}

PitPseudoObservations pit_pseudo_observations(const Matrix& data) {
    const std::size_t n = data.rows();
    if (n < 2) throw InvalidArgument("PIT pseudo-observations need n >= 2");
    if (data.cols() == 0) throw InvalidArgument("PIT pseudo-observations need at least one column");
    const std::vector<std::size_t> counts = dominated_counts(data);
    PitPseudoObservations out;
    out.w.resize(n);
    const double denom = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out.w[i] = static_cast<double>(counts[i]) / denom;
    return out;
}

}  // namespace vecdep
