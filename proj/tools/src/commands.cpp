#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vecdep/archimedean.hpp"
#include "vecdep/assess.hpp"
#include "vecdep/cli.hpp"
#include "vecdep/error.hpp"
#include "vecdep/kendall.hpp"

namespace vecdep::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct Dims {
    std::size_t p = 0;
    std::optional<std::size_t> q;
};

Dims parse_dims(const std::string& s) {
    Dims d;
    std::size_t comma = s.find(',');
    auto parse_one = [](const std::string& part) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(part, &pos);
        } catch (const std::exception&) {
            throw InvalidArgument("--dims expects 'p' or 'p,q' with positive integers");
        }
        if (pos != part.size() || v == 0) throw InvalidArgument("--dims expects 'p' or 'p,q' with positive integers");
        return static_cast<std::size_t>(v);
    };
    d.p = parse_one(s.substr(0, comma));
    if (comma != std::string::npos) d.q = parse_one(s.substr(comma + 1));
    return d;
}

ArchimedeanGenerator make_generator(const std::string& family, const std::optional<double>& theta,
                                    const std::optional<double>& tau) {
    const Family f = parse_family(family);
    if (theta && tau) throw InvalidArgument("give either --theta or --tau, not both");
    if (f == Family::independence) {
        if ((theta && *theta != 1.0) || (tau && *tau != 0.0))
            throw InvalidArgument("the independence family takes no parameter");
        return {};
    }
    if (!theta && !tau) throw InvalidArgument("family '" + family + "' needs --theta or --tau");
    return ArchimedeanGenerator(f, theta ? *theta : tau_to_theta(f, *tau));
}

Margin parse_margin(const std::string& name) {
    if (name == "uniform") return Margin::uniform;
    if (name == "normal") return Margin::normal;
    if (name == "exponential") return Margin::exponential;
    throw InvalidArgument("unknown margin '" + name + "'");
}

// Writes to --output when given, otherwise to the default stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw DataError("cannot write '" + path + "'");
            stream_ = file_.get();
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write '" + path + "'");
    f << content;
}

ordered_json nullable(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json estimate_json(const DependenceEstimate& est) {
    ordered_json j;
    j["estimate"] = est.value;
    j["std_error"] = nullable(est.std_error);
    j["ci"] = est.ci ? ordered_json::array({est.ci->first, est.ci->second}) : ordered_json(nullptr);
    j["method"] = std::string(to_string(est.method));
    j["level"] = est.ci ? ordered_json(est.level) : ordered_json(nullptr);
    j["n"] = est.n;
    j["k"] = est.k;
    j["warnings"] = est.warnings;
    return j;
}

std::string pick_group(const GroupedData& data, const std::string& given, std::size_t fallback) {
    if (!given.empty()) return given;
    if (data.groups().size() <= fallback) throw InvalidArgument("the groups configuration needs at least two groups");
    return data.groups()[fallback].name;
}

CiMethod parse_ci(const std::string& s) {
    if (s == "none") return CiMethod::none;
    if (s == "asymptotic") return CiMethod::asymptotic;
    if (s == "bootstrap") return CiMethod::bootstrap;
    throw InvalidArgument("--ci must be none, asymptotic or bootstrap");
}

// Options shared by measure and rolling.
struct EstimateFlags {
    std::string input, groups, group_a, group_b, collapse = "weighted-average", collapse_params;
    std::string measure = "pearson", ci = "none", output;
    std::optional<std::size_t> tail_k;
    double level = 0.95;
    std::size_t replicates = 1000;
    std::uint64_t seed = 0;
    std::uint64_t max_tuples = 200000;

    void attach(CLI::App* cmd) {
        cmd->add_option("--input,-i", input, "CSV file with a header row")->required();
        cmd->add_option("--groups,-g", groups, "groups configuration: JSON file or inline JSON")->required();
        cmd->add_option("--group-a", group_a, "first group (default: first configured group)");
        cmd->add_option("--group-b", group_b, "second group (default: second configured group)");
        cmd->add_option("--collapse,-c", collapse, "collapsing function")->capture_default_str();
        cmd->add_option("--collapse-params", collapse_params, "collapse parameters as a JSON object");
        cmd->add_option("--measure,-m", measure, "pearson | spearman | tau | tail-upper | tail-lower")
            ->capture_default_str();
        cmd->add_option("--tail-k", tail_k, "tail level k (default ceil(sqrt(k)))");
        cmd->add_option("--ci", ci, "none | asymptotic | bootstrap")->capture_default_str();
        cmd->add_option("--level", level, "confidence level")->capture_default_str();
        cmd->add_option("--replicates,-B", replicates, "bootstrap replicates")->capture_default_str();
        cmd->add_option("--seed", seed, "seed for bootstrap and tuple sampling")->capture_default_str();
        cmd->add_option("--max-tuples", max_tuples, "4-tuples for pairwise tau intervals")->capture_default_str();
        cmd->add_option("--output,-o", output, "output file (default stdout)");
    }

    MeasureSpec measure_spec() const { return {parse_measure_kind(measure), tail_k}; }
    CiOptions ci_options() const { return {parse_ci(ci), level, replicates, seed, max_tuples}; }
};

int cmd_simulate(const std::string& family, const std::optional<double>& theta, const std::optional<double>& tau,
                 const std::string& dims_s, const std::optional<std::size_t>& dim, std::size_t n, std::uint64_t seed,
                 const std::string& margin_s, const std::string& within, const std::string& groups_out,
                 const std::string& output, std::ostream& out) {
    const Margin margin = parse_margin(margin_s);
    std::optional<Dims> dims;
    if (!dims_s.empty()) dims = parse_dims(dims_s);
    if (dims && dim) throw InvalidArgument("give either --dims or --dim, not both");
    if (n < 1) throw InvalidArgument("--n must be >= 1");

    Matrix values;
    std::size_t p = 0, q = 0;
    const bool scenario = family == "comonotone" || family == "countermonotone" || family == "independent-groups";
    if (scenario) {
        if (!dims || !dims->q) throw InvalidArgument("scenario families need --dims p,q");
        if (family != "independent-groups" && (theta || tau))
            throw InvalidArgument("--theta/--tau do not apply to the " + family + " scenario");
        ScenarioSpec spec;
        spec.kind = family == "comonotone"        ? ScenarioKind::comonotone
                    : family == "countermonotone" ? ScenarioKind::countermonotone
                                                  : ScenarioKind::independent_groups;
        spec.p = dims->p;
        spec.q = *dims->q;
        spec.margin = margin;
        if (spec.kind == ScenarioKind::independent_groups) spec.within = make_generator(within, theta, tau);
        if (n < 2) throw InvalidArgument("scenarios need --n >= 2");
        values = sample_scenario(spec, n, seed).values();
        p = spec.p;
        q = spec.q;
    } else {
        const ArchimedeanGenerator gen = make_generator(family, theta, tau);
        if (dims) {
            p = dims->p;
            q = dims->q.value_or(0);
        } else if (dim) {
            if (*dim < 1) throw InvalidArgument("--dim must be >= 1");
            p = *dim;
        } else {
            throw InvalidArgument("give --dims p,q or --dim d");
        }
        values = sample_archimedean(gen, p + q, n, seed);
        for (std::size_t i = 0; i < values.rows(); ++i)
            for (double& x : values.row(i)) x = apply_margin(margin, x);
    }

    GroupsConfig cfg;
    cfg.groups.push_back({"X", {}});
    for (std::size_t j = 0; j < p; ++j) cfg.groups[0].columns.push_back("x" + std::to_string(j + 1));
    if (q > 0) {
        cfg.groups.push_back({"Y", {}});
        for (std::size_t j = 0; j < q; ++j) cfg.groups[1].columns.push_back("y" + std::to_string(j + 1));
    }

    Sink sink(output, out);
    std::ostream& os = *sink;
    bool first = true;
    for (const auto& g : cfg.groups)
        for (const auto& c : g.columns) {
            os << (first ? "" : ",") << c;
            first = false;
        }
    os << '\n';
    for (std::size_t i = 0; i < values.rows(); ++i) {
        const auto row = values.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_number(row[j]);
        os << '\n';
    }
    if (!groups_out.empty()) write_file(groups_out, to_json(cfg));
    return ExitCode::ok;
}

int cmd_collapse(const std::string& input, const std::string& groups, const std::string& group,
                 const std::string& collapse, const std::string& params, const std::string& output, std::ostream& out) {
    const GroupedData data = ingest_csv(input, load_groups(groups));
    const std::string name = pick_group(data, group, 0);
    const CollapsedSample s = collapse_group(data, name, parse_collapse(collapse, params));
    Sink sink(output, out);
    std::ostream& os = *sink;
    if (s.arity == Arity::one_sample) {
        os << "index,value\n";
        for (std::size_t i = 0; i < s.k(); ++i) os << i << ',' << format_number(s.values[i]) << '\n';
    } else {
        os << "index,i,j,value\n";
        const std::size_t n = s.source_n;
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j, ++idx)
                os << idx << ',' << i << ',' << j << ',' << format_number(s.values[idx]) << '\n';
    }
    return ExitCode::ok;
}

int cmd_measure(const EstimateFlags& f, std::ostream& out) {
    const GroupedData data = ingest_csv(f.input, load_groups(f.groups));
    const std::string a = pick_group(data, f.group_a, 0);
    const std::string b = pick_group(data, f.group_b, 1);
    const CollapseSpec cspec = parse_collapse(f.collapse, f.collapse_params);
    const MeasureSpec mspec = f.measure_spec();
    const DependenceEstimate est = estimate_dependence(data, a, b, cspec, mspec, f.ci_options());

    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = "measure";
    j["measure"] = std::string(to_string(mspec.kind));
    j["collapse"] = std::string(to_string(cspec.kind));
    j["groups"] = {a, b};
    const ordered_json body = estimate_json(est);
    for (const auto& [key, value] : body.items()) j[key] = value;
    Sink sink(f.output, out);
    *sink << j.dump(2) << '\n';
    return ExitCode::ok;
}

int cmd_rolling(const EstimateFlags& f, std::size_t window, std::size_t step, std::ostream& out) {
    const GroupedData data = ingest_csv(f.input, load_groups(f.groups));
    const std::string a = pick_group(data, f.group_a, 0);
    const std::string b = pick_group(data, f.group_b, 1);
    const auto rows =
        rolling(data, a, b, parse_collapse(f.collapse, f.collapse_params), f.measure_spec(), f.ci_options(), window, step);
    Sink sink(f.output, out);
    std::ostream& os = *sink;
    os << "window_end,estimate,std_error,ci_lo,ci_hi\n";
    for (const auto& r : rows) {
        os << r.window_end << ',' << format_number(r.estimate.value) << ',';
        if (r.estimate.std_error) os << format_number(*r.estimate.std_error);
        os << ',';
        if (r.estimate.ci) os << format_number(r.estimate.ci->first) << ',' << format_number(r.estimate.ci->second);
        else os << ',';
        os << '\n';
    }
    return ExitCode::ok;
}

int cmd_assess(const std::string& input, const std::string& groups, const std::string& collapse,
               const std::string& params, const std::string& format, const std::string& svg_path,
               const std::string& output, std::ostream& out) {
    if (format != "csv" && format != "json" && format != "svg")
        throw InvalidArgument("--format must be csv, json or svg");
    const GroupedData data = ingest_csv(input, load_groups(groups));
    const CollapseSpec cspec = parse_collapse(collapse, params);
    const AssessmentResult res = assess_independence(data, cspec);
    if (!svg_path.empty()) write_file(svg_path, render_svg(res));

    Sink sink(output, out);
    std::ostream& os = *sink;
    if (format == "csv") {
        os << "group_a,group_b,index,u_a,u_b\n";
        for (const auto& p : res.panels)
            for (std::size_t i = 0; i < p.k(); ++i)
                os << p.group_a << ',' << p.group_b << ',' << i << ',' << format_number(p.u_a[i]) << ','
                   << format_number(p.u_b[i]) << '\n';
    } else if (format == "json") {
        ordered_json j;
        j["schema"] = kSchema;
        j["command"] = "assess";
        j["collapse"] = std::string(to_string(cspec.kind));
        j["arity"] = res.arity == Arity::one_sample ? "one-sample" : "pairwise";
        j["n"] = res.n;
        j["k"] = res.k;
        j["groups"] = res.groups;
        j["panels"] = ordered_json::array();
        for (const auto& p : res.panels) {
            ordered_json pj;
            pj["group_a"] = p.group_a;
            pj["group_b"] = p.group_b;
            pj["k"] = p.k();
            pj["spearman"] = p.spearman;
            pj["tau"] = p.tau;
            pj["tail_upper"] = p.tail_upper;
            pj["tail_lower"] = p.tail_lower;
            pj["tail_k"] = p.tail_k;
            j["panels"].push_back(pj);
        }
        j["warnings"] = res.warnings;
        os << j.dump(2) << '\n';
    } else {
        os << render_svg(res);
    }
    return ExitCode::ok;
}

std::vector<double> grid_points(std::size_t count) {
    if (count < 2) throw InvalidArgument("--grid needs at least 2 points");
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i) g[i] = static_cast<double>(i) / static_cast<double>(count - 1);
    return g;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            v.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidArgument("--at expects comma-separated numbers");
        }
    }
    if (v.empty()) throw InvalidArgument("--at expects comma-separated numbers");
    return v;
}

int cmd_kendall(const std::string& family, const std::optional<double>& theta, const std::optional<double>& tau,
                const std::string& dims_s, const std::string& mode, std::size_t grid, const std::string& at,
                const std::optional<std::size_t>& n, const std::optional<std::uint64_t>& seed,
                const std::string& format, const std::string& output, std::ostream& out) {
    if (format != "csv" && format != "json") throw InvalidArgument("--format must be csv or json");
    const ArchimedeanGenerator gen = make_generator(family, theta, tau);
    const Dims dims = parse_dims(dims_s);
    const std::vector<double> pts = at.empty() ? grid_points(grid) : parse_list(at);

    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = "kendall";
    j["mode"] = mode;
    j["family"] = std::string(to_string(gen.family()));
    j["theta"] = gen.theta();
    j["p"] = dims.p;
    j["q"] = dims.q ? ordered_json(*dims.q) : ordered_json(nullptr);

    std::ostringstream csv;
    ordered_json points = ordered_json::array();
    if (mode == "univariate") {
        csv << "t,K\n";
        for (double t : pts) {
            const double k = kendall_univariate(gen, dims.p, t);
            csv << format_number(t) << ',' << format_number(k) << '\n';
            points.push_back({{"t", t}, {"value", k}});
        }
    } else if (mode == "joint" || mode == "copula" || mode == "sample") {
        if (!dims.q) throw InvalidArgument("--mode " + mode + " needs --dims p,q");
        const JointKendallModel model{gen, dims.p, *dims.q};
        if (mode == "sample") {
            if (!n || !seed) throw InvalidArgument("--mode sample needs --n and --seed");
            if (*n < 1) throw InvalidArgument("--n must be >= 1");
            const Matrix s = sample_kendall_copula(model, *n, *seed);
            csv << "u1,u2\n";
            for (std::size_t i = 0; i < s.rows(); ++i) {
                csv << format_number(s(i, 0)) << ',' << format_number(s(i, 1)) << '\n';
                points.push_back({s(i, 0), s(i, 1)});
            }
        } else {
            const bool joint = mode == "joint";
            csv << (joint ? "t1,t2,K\n" : "u1,u2,C\n");
            for (double a : pts)
                for (double b : pts) {
                    const double v = joint ? kendall_joint(model, a, b) : kendall_copula_eval(model, a, b);
                    csv << format_number(a) << ',' << format_number(b) << ',' << format_number(v) << '\n';
                    points.push_back(joint ? ordered_json{{"t1", a}, {"t2", b}, {"value", v}}
                                           : ordered_json{{"u1", a}, {"u2", b}, {"value", v}});
                }
        }
    } else {
        throw InvalidArgument("--mode must be univariate, joint, copula or sample");
    }

    Sink sink(output, out);
    if (format == "csv") {
        *sink << csv.str();
    } else {
        j[mode == "sample" ? "sample" : "points"] = points;
        *sink << j.dump(2) << '\n';
    }
    return ExitCode::ok;
}

}  // namespace

std::vector<RollingRow> rolling(const GroupedData& data, std::string_view group_a, std::string_view group_b,
                                const CollapseSpec& cspec, const MeasureSpec& mspec, const CiOptions& ci,
                                std::size_t window, std::size_t step) {
    if (window < 10) throw InvalidArgument("rolling window must be at least 10 rows");
    if (window > data.n()) throw InvalidArgument("rolling window is longer than the series");
    if (step < 1) throw InvalidArgument("rolling step must be >= 1");
    std::vector<RollingRow> rows;
    for (std::size_t end = window; end <= data.n(); end += step) {
        const GroupedData w = data.slice_rows(end - window, window);
        rows.push_back({end - 1, estimate_dependence(w, group_a, group_b, cspec, mspec, ci)});
    }
    return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dependence between random vectors through collapsing functions.", "vecdep"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "vecdep 0.1.0");

    // simulate
    auto* sim = app.add_subcommand("simulate", "sample an Archimedean copula or a dependence scenario as CSV");
    std::string sim_family, sim_dims, sim_margin = "uniform", sim_within = "independence", sim_groups_out, sim_out;
    std::optional<double> sim_theta, sim_tau;
    std::optional<std::size_t> sim_dim;
    std::size_t sim_n = 0;
    std::uint64_t sim_seed = 0;
    sim->add_option("--family,-f", sim_family,
                    "clayton | gumbel | independence | comonotone | countermonotone | independent-groups")
        ->required();
    sim->add_option("--theta", sim_theta, "generator parameter");
    sim->add_option("--tau", sim_tau, "Kendall's tau of the generator (alternative to --theta)");
    sim->add_option("--dims", sim_dims, "group dimensions p,q");
    sim->add_option("--dim", sim_dim, "single dimension d (one group)");
    sim->add_option("--n,-n", sim_n, "number of rows")->required();
    sim->add_option("--seed", sim_seed, "random seed")->required();
    sim->add_option("--margin", sim_margin, "uniform | normal | exponential")->capture_default_str();
    sim->add_option("--within", sim_within, "within-group family for independent-groups")->capture_default_str();
    sim->add_option("--groups-out", sim_groups_out, "also write the matching groups configuration");
    sim->add_option("--output,-o", sim_out, "output file (default stdout)");

    // collapse
    auto* col = app.add_subcommand("collapse", "collapse one group to a scalar sample");
    std::string col_input, col_groups, col_group, col_kind = "weighted-average", col_params, col_out;
    col->add_option("--input,-i", col_input, "CSV file")->required();
    col->add_option("--groups,-g", col_groups, "groups configuration")->required();
    col->add_option("--group", col_group, "group name (default: first group)");
    col->add_option("--collapse,-c", col_kind, "collapsing function")->capture_default_str();
    col->add_option("--collapse-params", col_params, "collapse parameters as a JSON object");
    col->add_option("--output,-o", col_out, "output file (default stdout)");

    // measure
    auto* mea = app.add_subcommand("measure", "collapsed measure of association with an optional interval");
    EstimateFlags mea_flags;
    mea_flags.attach(mea);

    // assess
    auto* ass = app.add_subcommand("assess", "pairwise pseudo-observation panels for all groups");
    std::string ass_input, ass_groups, ass_kind = "weighted-average", ass_params, ass_format = "csv", ass_svg, ass_out;
    ass->add_option("--input,-i", ass_input, "CSV file")->required();
    ass->add_option("--groups,-g", ass_groups, "groups configuration")->required();
    ass->add_option("--collapse,-c", ass_kind, "collapsing function")->capture_default_str();
    ass->add_option("--collapse-params", ass_params, "collapse parameters as a JSON object");
    ass->add_option("--format", ass_format, "csv | json | svg")->capture_default_str();
    ass->add_option("--svg", ass_svg, "additionally write the SVG grid to this file");
    ass->add_option("--output,-o", ass_out, "output file (default stdout)");

    // kendall
    auto* ken = app.add_subcommand("kendall", "Kendall distributions and Kendall copulas of Archimedean models");
    std::string ken_family, ken_dims, ken_mode = "univariate", ken_at, ken_format = "csv", ken_out;
    std::optional<double> ken_theta, ken_tau;
    std::size_t ken_grid = 11;
    std::optional<std::size_t> ken_n;
    std::optional<std::uint64_t> ken_seed;
    ken->add_option("--family,-f", ken_family, "clayton | gumbel | independence")->required();
    ken->add_option("--theta", ken_theta, "generator parameter");
    ken->add_option("--tau", ken_tau, "Kendall's tau of the generator");
    ken->add_option("--dims", ken_dims, "p or p,q")->required();
    ken->add_option("--mode", ken_mode, "univariate | joint | copula | sample")->capture_default_str();
    ken->add_option("--grid", ken_grid, "evaluation points per axis on [0,1]")->capture_default_str();
    ken->add_option("--at", ken_at, "explicit comma-separated evaluation points");
    ken->add_option("--n,-n", ken_n, "sample size (sample mode)");
    ken->add_option("--seed", ken_seed, "random seed (sample mode)");
    ken->add_option("--format", ken_format, "csv | json")->capture_default_str();
    ken->add_option("--output,-o", ken_out, "output file (default stdout)");

    // rolling
    auto* rol = app.add_subcommand("rolling", "measure over moving windows of time-ordered rows");
    EstimateFlags rol_flags;
    rol_flags.attach(rol);
    std::size_t rol_window = 0, rol_step = 1;
    rol->add_option("--window,-w", rol_window, "window length W")->required();
    rol->add_option("--step,-s", rol_step, "step between window ends")->capture_default_str();

    std::vector<const char*> argv{"vecdep"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::usage_error;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(sim_family, sim_theta, sim_tau, sim_dims, sim_dim, sim_n, sim_seed, sim_margin,
                                sim_within, sim_groups_out, sim_out, out);
        if (col->parsed()) return cmd_collapse(col_input, col_groups, col_group, col_kind, col_params, col_out, out);
        if (mea->parsed()) return cmd_measure(mea_flags, out);
        if (ass->parsed())
            return cmd_assess(ass_input, ass_groups, ass_kind, ass_params, ass_format, ass_svg, ass_out, out);
        if (ken->parsed())
            return cmd_kendall(ken_family, ken_theta, ken_tau, ken_dims, ken_mode, ken_grid, ken_at, ken_n, ken_seed,
                               ken_format, ken_out, out);
        if (rol->parsed()) return cmd_rolling(rol_flags, rol_window, rol_step, out);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::usage_error;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << '\n';
        return ExitCode::data_error;
    } catch (const DegenerateError& e) {
        err << "numeric error: " << e.what() << '\n';
        return ExitCode::numeric_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return ExitCode::internal_error;
    }
    return ExitCode::usage_error;
}

}  // namespace vecdep::cli
