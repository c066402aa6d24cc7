#pragma once

// Graphical assessment of independence between G groups: every group is
// collapsed to a scalar sample, turned into pseudo-observations, and each
// pair of groups yields a panel of paired points in (0,1)^2.

#include <cstddef>
#include <string>
#include <vector>

#include "vecdep/collapse.hpp"
#include "vecdep/core.hpp"

namespace vecdep {

struct Panel {
    std::string group_a;
    std::string group_b;
    std::vector<double> u_a;
    std::vector<double> u_b;
    double spearman = 0.0;
    double tau = 0.0;
    double tail_upper = 0.0;
    double tail_lower = 0.0;
    std::size_t tail_k = 0;

    std::size_t k() const noexcept { return u_a.size(); }
};

struct AssessmentResult {
    std::vector<std::string> groups;
    std::vector<Panel> panels;  ///< (g, h), g < h, lexicographic in group order
    std::size_t n = 0;
    std::size_t k = 0;
    Arity arity = Arity::one_sample;
    std::vector<std::string> warnings;
};

/// Collapses every group with the same spec and builds all G(G-1)/2 panels.
/// Throws InvalidArgument for fewer than two groups.
AssessmentResult assess_independence(const GroupedData& data, const CollapseSpec& cspec);

struct SvgOptions {
    int cell = 160;       ///< side of one scatter cell in pixels
    int margin = 40;
    double radius = 1.2;  ///< point radius
};

/// Lower-triangle grid of scatter cells: row h, column g holds panel (g, h).
std::string render_svg(const AssessmentResult& result, const SvgOptions& opt = {});

}  // namespace vecdep
