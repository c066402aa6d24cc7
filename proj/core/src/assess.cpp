#include "vecdep/assess.hpp"

#include <cstdio>
#include <string>

#include "vecdep/error.hpp"
#include "vecdep/measures.hpp"
#include "vecdep/parallel.hpp"

namespace vecdep {

AssessmentResult assess_independence(const GroupedData& data, const CollapseSpec& cspec) {
    const auto& groups = data.groups();
    const std::size_t g = groups.size();
    if (g < 2) throw InvalidArgument("assessment needs at least two groups");

    AssessmentResult out;
    out.n = data.n();
    out.arity = cspec.arity();
    std::vector<PseudoObservations> pobs(g);
    for (std::size_t a = 0; a < g; ++a) {
        out.groups.push_back(groups[a].name);
        const auto collapsed = collapse_group(data, groups[a].name, cspec);
        pobs[a] = pseudo_observations(collapsed.values);
        if (pobs[a].has_ties) out.warnings.push_back("ties in collapsed sample of group '" + groups[a].name + "'");
    }
    out.k = pobs[0].u.size();

    for (std::size_t a = 0; a < g; ++a)
        for (std::size_t b = a + 1; b < g; ++b) {
            Panel p;
            p.group_a = groups[a].name;
            p.group_b = groups[b].name;
            out.panels.push_back(std::move(p));
        }

    parallel_for(out.panels.size(), [&](std::size_t idx) {
        Panel& p = out.panels[idx];
        std::size_t a = 0, b = 0;
        for (std::size_t i = 0; i < g; ++i) {
            if (groups[i].name == p.group_a) a = i;
            if (groups[i].name == p.group_b) b = i;
        }
        p.u_a = pobs[a].u;
        p.u_b = pobs[b].u;
        p.spearman = pearson(p.u_a, p.u_b);
        p.tau = tau(p.u_a, p.u_b);
        p.tail_k = default_tail_k(p.k());
        p.tail_upper = tail_dependence(p.u_a, p.u_b, TailSide::upper, p.tail_k);
        p.tail_lower = tail_dependence(p.u_a, p.u_b, TailSide::lower, p.tail_k);
    });
    return out;
}

namespace {

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string render_svg(const AssessmentResult& result, const SvgOptions& opt) {
    const std::size_t g = result.groups.size();
    const int cells = g > 1 ? static_cast<int>(g - 1) : 1;
    const int side = 2 * opt.margin + cells * opt.cell;
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(side) + "\" height=\"" +
           std::to_string(side) + "\" viewBox=\"0 0 " + std::to_string(side) + " " + std::to_string(side) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    std::size_t idx = 0;
    for (std::size_t a = 0; a < g; ++a) {
        for (std::size_t b = a + 1; b < g; ++b, ++idx) {
            const Panel& p = result.panels[idx];
            const int x0 = opt.margin + static_cast<int>(a) * opt.cell;
            const int y0 = opt.margin + static_cast<int>(b - 1) * opt.cell;
            const double inner = opt.cell - 8.0;
            svg += "<g>\n<rect x=\"" + std::to_string(x0 + 4) + "\" y=\"" + std::to_string(y0 + 4) + "\" width=\"" +
                   fmt(inner) + "\" height=\"" + fmt(inner) + "\" fill=\"none\" stroke=\"#444\"/>\n";
            svg += "<title>" + escape_xml(p.group_a) + " vs " + escape_xml(p.group_b) + ": spearman " +
                   fmt(p.spearman) + ", tau " + fmt(p.tau) + "</title>\n";
            for (std::size_t i = 0; i < p.k(); ++i) {
                const double cx = x0 + 4 + p.u_a[i] * inner;
                const double cy = y0 + 4 + (1.0 - p.u_b[i]) * inner;
                svg += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(opt.radius) + "\"/>\n";
            }
            svg += "</g>\n";
        }
    }
    for (std::size_t a = 0; a + 1 < g; ++a) {
        const int x = opt.margin + static_cast<int>(a) * opt.cell + opt.cell / 2;
        svg += "<text x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(side - opt.margin / 3) +
               "\" text-anchor=\"middle\" font-size=\"12\">" + escape_xml(result.groups[a]) + "</text>\n";
    }
    for (std::size_t b = 1; b < g; ++b) {
        const int y = opt.margin + static_cast<int>(b - 1) * opt.cell + opt.cell / 2;
        svg += "<text x=\"" + std::to_string(opt.margin / 3) + "\" y=\"" + std::to_string(y) +
               "\" font-size=\"12\" transform=\"rotate(-90 " + std::to_string(opt.margin / 3) + " " +
               std::to_string(y) + ")\" text-anchor=\"middle\">" + escape_xml(result.groups[b]) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace vecdep
