#include <sixj/error_metrics.hpp>
#include <sixj/exact_sixj.hpp>
#include <sixj/sphere.hpp>
#include <sixj/uniform.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace {

using namespace sixj;
using nlohmann::ordered_json;

constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 3;

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts "39/2", "23" and "4.5".
HalfInt parse_label(const std::string& name, const std::string& s) {
    try {
        if (s.find('.') == std::string::npos) return parse_half_int(s);
        std::size_t used = 0;
        const double x = std::stod(s, &used);
        const double twice = 2 * x;
        if (used != s.size() || twice != std::round(twice)) throw std::invalid_argument(s);
        return HalfInt::from_twice(static_cast<std::int64_t>(twice));
    } catch (const std::exception&) {
        throw InvalidInput("--" + name + ": not a half-integer: '" + s + "'");
    }
}

// A cell of an output table; monostate is an empty cell (null in JSON).
using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> summary;
};

struct Output {
    std::string format = "csv";
    std::string out;
    int digits = 17;
};

std::string format_number(double x, int digits) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::string csv_cell(const Cell& c, int digits) {
    struct V {
        int digits;
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(double x) const { return format_number(x, digits); }
        std::string operator()(std::int64_t x) const { return std::to_string(x); }
        std::string operator()(bool x) const { return x ? "true" : "false"; }
        std::string operator()(const std::string& s) const {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string q = "\"";
            for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            return q + "\"";
        }
    };
    return std::visit(V{digits}, c);
}

ordered_json json_cell(const Cell& c) {
    struct V {
        ordered_json operator()(std::monostate) const { return nullptr; }
        ordered_json operator()(double x) const { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }
        ordered_json operator()(std::int64_t x) const { return x; }
        ordered_json operator()(bool x) const { return x; }
        ordered_json operator()(const std::string& s) const { return s; }
    };
    return std::visit(V{}, c);
}

void write_csv(std::ostream& os, const Table& t, const std::string& kind, int digits) {
    os << "# sixj-" << kind << " v1\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i], digits);
        os << '\n';
    }
    for (const auto& [key, value] : t.summary) os << "# " << key << " = " << csv_cell(value, digits) << '\n';
}

ordered_json table_json(const Table& t) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : t.rows) {
        ordered_json r = ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = json_cell(row[i]);
        rows.push_back(std::move(r));
    }
    ordered_json j = {{"table", t.name}, {"rows", rows}};
    if (!t.summary.empty()) {
        ordered_json s = ordered_json::object();
        for (const auto& [key, value] : t.summary) s[key] = json_cell(value);
        j["summary"] = s;
    }
    return j;
}

std::ofstream open_file(const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw InvalidInput("cannot write " + p.string());
    return f;
}

// One table goes to --out or stdout. Several tables go to files <out>/<kind>-<name>.csv, or to stdout
// one after another; JSON always holds all tables in one document.
void emit(const std::vector<Table>& tables, const std::string& kind, const Output& o) {
    if (o.format == "json") {
        ordered_json doc = {{"format", "sixj-" + kind + " v1"}};
        if (tables.size() == 1) doc.update(table_json(tables[0]));
        else {
            doc["tables"] = ordered_json::array();
            for (const auto& t : tables) doc["tables"].push_back(table_json(t));
        }
        const std::string text = doc.dump(2) + "\n";
        if (o.out.empty()) std::cout << text;
        else open_file(o.out) << text;
        return;
    }
    if (o.out.empty()) {
        for (std::size_t i = 0; i < tables.size(); ++i) {
            if (i) std::cout << '\n';
            write_csv(std::cout, tables[i], tables.size() == 1 ? kind : kind + "-" + tables[i].name, o.digits);
        }
        return;
    }
    if (tables.size() == 1) {
        auto f = open_file(o.out);
        write_csv(f, tables[0], kind, o.digits);
        return;
    }
    std::filesystem::create_directories(o.out);
    for (const auto& t : tables) {
        auto f = open_file(std::filesystem::path(o.out) / (kind + "-" + t.name + ".csv"));
        write_csv(f, t, kind + "-" + t.name, o.digits);
    }
}

void add_output_options(CLI::App* app, Output& o) {
    app->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--out", o.out, "Output file (directory for multi-table CSV); stdout when omitted");
    app->add_option("--digits", o.digits, "Significant digits in CSV")->check(CLI::Range(1, 17));
}

constexpr const char* kLabelNames[6] = {"j1", "j2", "j12", "j3", "j4", "j23"};

struct LabelOptions {
    std::string text[6];
    CLI::Option* opt[6] = {};

    void add(CLI::App* app, bool all) {
        for (int i = 0; i < 6; ++i) {
            if (!all && (i == 2 || i == 5)) continue;
            opt[i] = app->add_option(std::string("--") + kLabelNames[i], text[i], "Quantum number, e.g. 39/2");
        }
    }
    bool given(int i) const { return opt[i] && opt[i]->count() > 0; }
    HalfInt get(int i) const {
        if (!given(i)) throw InvalidInput(std::string("--") + kLabelNames[i] + " is required");
        return parse_label(kLabelNames[i], text[i]);
    }
};

HalfInt& label_slot(SixJLabels& l, int i) {
    HalfInt* s[6] = {&l.j1, &l.j2, &l.j12, &l.j3, &l.j4, &l.j23};
    return *s[i];
}

struct Methods {
    bool exact = false, pr = false, uniform = false;
};

Methods parse_methods(const std::string& s) {
    Methods m;
    std::stringstream ss(s);
    std::string item;
    int n = 0;
    while (std::getline(ss, item, ',')) {
        if (item == "exact") m.exact = true;
        else if (item == "pr") m.pr = true;
        else if (item == "uniform") m.uniform = true;
        else throw InvalidInput("--methods: unknown method '" + item + "'");
        ++n;
    }
    if (n == 0) throw InvalidInput("--methods: empty");
    return m;
}

void require_valid_input(const SixJLabels& l) {
    const ValidationReport r = validate(l);
    if (!r.ok) throw InvalidInput(r.message);
}

Cell opt_double(const std::optional<double>& x) { return x ? Cell(*x) : Cell(); }

// ---------------------------------------------------------------- eval

Table eval_table(const SixJLabels& l, const Methods& m) {
    require_valid_input(l);
    const Bounds b = bounds(l);
    Table t{"eval", {"symbol", "D", "region", "column", "exact", "exact_sqrt_rational", "pr", "pr_phase",
                     "pr_amplitude", "nu_6j", "uniform", "j", "m", "mp", "nu_ex", "phi0", "beta", "amp_ratio",
                     "d_value", "near_caustic", "degenerate", "solver_iterations", "solver_residual",
                     "solver_bisection", "at_turning_point"},
            {}, {}};
    std::vector<Cell> row(t.columns.size());
    row[0] = l.str();
    row[1] = static_cast<std::int64_t>(b.D);
    const RegionClass rc = classify(lengths(l));
    row[2] = std::string(region_name(rc.kind));
    row[3] = std::string(column_name(rc.column));
    std::optional<double> exact;
    if (m.exact) {
        const ExactValue e = exact_sixj(l);
        exact = e.to_double();
        row[4] = *exact;
        row[5] = e.rational_string();
    }
    if (m.pr && rc.kind != Region::Caustic) {
        const PRResult r = pr_value(l);
        row[6] = r.value;
        row[7] = r.phase;
        row[8] = r.amplitude;
        row[9] = r.nu6j;
    }
    if (m.uniform) {
        const UniformResult u = uniform_6j(l);
        row[10] = u.value;
        row[11] = u.map.j.str();
        row[12] = u.map.m.str();
        row[13] = u.map.mp.str();
        row[14] = u.map.nu_ex;
        row[15] = u.map.Phi0;
        row[16] = u.map.beta;
        row[17] = u.amp_ratio;
        row[18] = u.d_value;
        row[19] = u.near_caustic;
        row[20] = u.degenerate;
        row[21] = static_cast<std::int64_t>(u.map.solver.iterations);
        row[22] = u.map.solver.residual;
        row[23] = u.map.solver.bisection_used;
        row[24] = u.map.solver.at_turning_point;
    }
    t.rows.push_back(std::move(row));
    return t;
}

// ---------------------------------------------------------------- sweep

Table sweep_table(SixJLabels l, int swept, const Methods& m, std::optional<HalfInt> from, std::optional<HalfInt> to) {
    // Every value with the right parity up to the sum of the fixed labels; validate() keeps the rest.
    std::int64_t total = 0;
    for (int i = 0; i < 6; ++i)
        if (i != swept) total += label_slot(l, i).twice;
    const std::int64_t lo = from ? from->twice : 0, hi = to ? to->twice : total;
    Table t{"sweep", {kLabelNames[swept], "exact", "pr", "uniform", "abs_err_pr", "abs_err_uniform", "pr_amplitude",
                      "region", "beta"}, {}, {}};
    for (std::int64_t tw = std::max<std::int64_t>(lo, 0); tw <= hi; ++tw) {
        label_slot(l, swept) = HalfInt::from_twice(tw);
        if (!validate(l).ok) continue;
        std::vector<Cell> row(t.columns.size());
        row[0] = HalfInt::from_twice(tw).str();
        const RegionClass rc = classify(lengths(l));
        std::optional<double> exact, pr, un;
        if (m.exact) exact = exact_sixj(l).to_double();
        if (m.pr && rc.kind != Region::Caustic) {
            const PRResult r = pr_value(l);
            pr = r.value;
            row[6] = std::abs(r.amplitude);
        }
        if (m.uniform) {
            const UniformResult u = uniform_6j(l);
            un = u.value;
            row[8] = u.map.beta;
        }
        row[1] = opt_double(exact);
        row[2] = opt_double(pr);
        row[3] = opt_double(un);
        if (exact && pr) row[4] = std::abs(*pr - *exact);
        if (exact && un) row[5] = std::abs(*un - *exact);
        row[7] = std::string(region_name(rc.kind));
        t.rows.push_back(std::move(row));
    }
    if (t.rows.empty()) throw InvalidInput(std::string("sweep: no valid value of ") + kLabelNames[swept]);
    return t;
}

// ---------------------------------------------------------------- figure

SixJLabels outer_labels(const LabelOptions& lo) {
    SixJLabels l{lo.get(0), lo.get(1), HalfInt(0), lo.get(3), lo.get(4), HalfInt(0)};
    Bounds b;
    try {
        b = bounds(l);
    } catch (const DegenerateRange& e) {
        throw InvalidInput(e.what());
    } catch (const std::invalid_argument& e) {
        throw InvalidInput(e.what());
    }
    l.j12 = b.j12_min;
    l.j23 = b.j23_min;
    return l;
}

Table caustic_table(const SixJLabels& outer, int grid) {
    Table t{"caustic", {"J12", "J23"}, {}, {}};
    for (const PlanePoint& p : caustic_curve(outer, grid)) t.rows.push_back({p.J12, p.J23});
    return t;
}

Table touching_table(const SixJLabels& outer) {
    static const char* sides[4] = {"J12_min", "J12_max", "J23_min", "J23_max"};
    Table t{"touching", {"side", "J12", "J23", "det_scaled"}, {}, {}};
    const auto pts = touching_points(outer);
    for (std::size_t i = 0; i < pts.size(); ++i)
        t.rows.push_back({std::string(sides[i]), pts[i].at.J12, pts[i].at.J23, pts[i].det_scaled});
    return t;
}

std::vector<Table> figure_spots(const SixJLabels& outer, int grid) {
    const Bounds b = bounds(outer);
    Table s{"points", {"j12", "j23", "J12", "J23", "region", "margin"}, {}, {}};
    double min_margin = 1e300;
    for (const Spot& p : spots(outer)) {
        s.rows.push_back({p.j12.str(), p.j23.str(), p.J12, p.J23, std::string(region_name(p.region)), p.margin});
        min_margin = std::min(min_margin, p.margin);
    }
    s.summary = {{"count", static_cast<std::int64_t>(s.rows.size())},
                 {"min_margin", min_margin},
                 {"J12_range", std::to_string(b.J12_min) + ".." + std::to_string(b.J12_max)},
                 {"J23_range", std::to_string(b.J23_min) + ".." + std::to_string(b.J23_max)}};
    return {s, caustic_table(outer, grid), touching_table(outer)};
}

std::vector<Table> figure_beta(const SixJLabels& outer, int grid) {
    const BetaGrid g = beta_grid(outer, grid);
    Table t{"grid", {"J12", "J23", "region", "beta_deg"}, {}, {}};
    for (std::size_t i = 0; i < g.J12.size(); ++i)
        for (std::size_t k = 0; k < g.J23.size(); ++k)
            t.rows.push_back({g.J12[i], g.J23[k], std::string(region_name(g.region[i][k])),
                              g.beta[i][k] * 180 / std::numbers::pi});
    return {t, caustic_table(outer, grid)};
}

void push_contour(Table& t, const std::string& kind, const std::string& label, std::int64_t piece, const Contour& c) {
    std::int64_t n = 0;
    for (const auto& v : c.points)
        t.rows.push_back({kind, label, c.level, piece, n++, v.J12, v.phi12, v.K[0], v.K[1], v.K[2]});
}

std::vector<Table> figure_orbits(const SixJLabels& outer, int grid) {
    const Bounds b = bounds(outer);
    const J23Grid g = j23_contour_grid(outer, grid, 2 * grid);
    Table t{"orbits", {"kind", "label", "level", "piece", "index", "J12", "phi12", "Kx", "Ky", "Kz"}, {}, {}};
    std::int64_t piece = 0;
    for (std::int64_t n = 0; n < b.D; ++n) {
        const HalfInt j12 = b.j12_min + half(2 * n);
        push_contour(t, "j12", j12.str(), n, j12_orbit(b, j12.value() + 0.5, 2 * grid));
    }
    for (const Contour& c : g.contours) push_contour(t, "j23", c.j23.str(), piece++, c);
    t.summary = {{"D", static_cast<std::int64_t>(b.D)},
                 {"j23_contours", static_cast<std::int64_t>(g.contours.size())}};
    return {t};
}

std::vector<Table> figure_caustics(const SixJLabels& outer, int grid) {
    const Bounds b = bounds(outer);
    Table pts{"points", {"segment", "J12", "J23", "lune_area", "j23_cap_area"}, {}, {}};
    Table orb{"orbits", {"segment", "kind", "level", "piece", "index", "J12", "phi12", "Kx", "Ky", "Kz"}, {}, {}};
    const std::pair<const char*, Region> corners[4] = {
        {"A", Region::ForbiddenA}, {"B", Region::ForbiddenB}, {"C", Region::ForbiddenC}, {"D", Region::ForbiddenD}};
    for (const auto& [name, r] : corners) {
        const PlanePoint p = caustic_toward_corner(outer, r);
        pts.rows.push_back({std::string(name), p.J12, p.J23, lune_area(outer, p.J12, p.J23),
                            j23_orbit_area(outer, p.J23)});
        auto push = [&](const std::string& kind, std::int64_t piece, const Contour& c) {
            std::int64_t n = 0;
            for (const auto& v : c.points)
                orb.rows.push_back({std::string(name), kind, c.level, piece, n++, v.J12, v.phi12, v.K[0], v.K[1], v.K[2]});
        };
        push("j12", 0, j12_orbit(b, p.J12, 2 * grid));
        std::int64_t piece = 0;
        for (const Contour& c : j23_orbit(outer, p.J23, grid, 2 * grid)) push("j23", piece++, c);
    }
    return {pts, orb};
}

// ---------------------------------------------------------------- worstcase

std::vector<Cell> relative_row(const SixJLabels& l) {
    const Comparison c = compare(l);
    const RelativeError e = relative_error(c);
    return {l.str(), std::string(zone_name(e.zone)), e.reference, c.exact, c.uniform.value,
            c.pr ? Cell(c.pr->value) : Cell(), e.uniform, std::isnan(e.pr) ? Cell() : Cell(e.pr)};
}

Table worst_family(const std::string& family, int jmax) {
    Table t{family, {"symbol", "zone", "reference", "exact", "uniform", "pr", "rel_err_uniform", "rel_err_pr"}, {},
            {}};
    double worst_u = -1, worst_p = -1;
    std::string arg_u, arg_p;
    for (std::int64_t tw = 1; tw <= 2 * jmax; ++tw) {
        const HalfInt j = HalfInt::from_twice(tw), z(0);
        const SixJLabels l = family == "equal-pairs" ? SixJLabels{j, j, z, j, j, z} : SixJLabels{z, z, z, j, j, j};
        if (!validate(l).ok) continue;
        auto row = relative_row(l);
        const double u = std::get<double>(row[6]);
        if (u > worst_u) worst_u = u, arg_u = l.str();
        if (const double* p = std::get_if<double>(&row[7]); p && *p > worst_p) worst_p = *p, arg_p = l.str();
        t.rows.push_back(std::move(row));
    }
    t.summary = {{"max_rel_err_uniform", worst_u}, {"argmax_uniform", arg_u}};
    if (worst_p >= 0) {
        t.summary.push_back({"max_rel_err_pr", worst_p});
        t.summary.push_back({"argmax_pr", arg_p});
    }
    t.summary.push_back({"lobe_reference", std::string("PR amplitude at the nearest other allowed grid point")});
    return t;
}

// Random allowed symbols with all j <= jmax, compared by the amplitude-normalized error envelope.
Table worst_random(int jmax, int count, std::uint64_t seed) {
    Table t{"random", {"symbol", "region", "pr_amplitude", "env_err_uniform", "env_err_pr", "ratio"}, {}, {}};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> twice(1, 2 * jmax);
    double worst = -1, worst_u = -1;
    std::string arg, arg_u;
    int attempts = 0;
    while (static_cast<int>(t.rows.size()) < count) {
        if (++attempts > 1000 * count) throw InvalidInput("worstcase random: too few allowed symbols for --jmax");
        const HalfInt j1 = HalfInt::from_twice(twice(rng)), j2 = HalfInt::from_twice(twice(rng));
        const HalfInt j3 = HalfInt::from_twice(twice(rng)), j4 = HalfInt::from_twice(twice(rng));
        Bounds b;
        try {
            b = bounds(j1, j2, j3, j4);
        } catch (const DegenerateRange&) {
            continue;
        }
        std::uniform_int_distribution<std::int64_t> k(0, b.D - 1);
        const SixJLabels l{j1, j2, b.j12_min + half(2 * k(rng)), j3, j4, b.j23_min + half(2 * k(rng))};
        if (!validate(l).ok || classify(lengths(l)).kind != Region::Allowed) continue;
        const AmplitudeError e = amplitude_error_envelope(l);
        const double ratio = e.uniform / e.pr;
        t.rows.push_back({l.str(), std::string("allowed"), e.amplitude, e.uniform, e.pr, ratio});
        if (ratio > worst) worst = ratio, arg = l.str();
        if (e.uniform > worst_u) worst_u = e.uniform, arg_u = l.str();
    }
    t.summary = {{"max_ratio", worst}, {"argmax_ratio", arg}, {"max_env_err_uniform", worst_u},
                 {"argmax_uniform", arg_u}};
    return t;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wigner 6j symbols: exact values, Ponzano-Regge and uniform approximations"};
    app.require_subcommand(1);

    Output out;
    LabelOptions eval_labels, sweep_labels, figure_labels;
    std::string methods = "exact,pr,uniform";

    auto* eval = app.add_subcommand("eval", "Evaluate one symbol");
    eval_labels.add(eval, true);
    eval->add_option("--methods", methods, "Comma-separated subset of exact,pr,uniform");
    add_output_options(eval, out);

    std::string swept, from, to;
    auto* sweep = app.add_subcommand("sweep", "Evaluate every value of one label with the other five fixed");
    sweep_labels.add(sweep, true);
    sweep->add_option("--sweep", swept, "Label to sweep")->required()->check(CLI::IsMember({"j1", "j2", "j12", "j3", "j4", "j23"}));
    sweep->add_option("--from", from, "First value (default: full triangle range)");
    sweep->add_option("--to", to, "Last value (default: full triangle range)");
    sweep->add_option("--methods", methods, "Comma-separated subset of exact,pr,uniform");
    add_output_options(sweep, out);

    std::string kind;
    int grid = 48;
    auto* figure = app.add_subcommand("figure", "Emit plot data for a quadruple (j1, j2, j3, j4)");
    figure->add_option("kind", kind, "spots | beta-contours | j23-orbits | caustic-diagrams")
        ->required()
        ->check(CLI::IsMember({"spots", "beta-contours", "j23-orbits", "caustic-diagrams"}));
    figure_labels.add(figure, false);
    figure->add_option("--grid", grid, "Grid resolution")->check(CLI::Range(8, 4096));
    add_output_options(figure, out);

    std::string family;
    int jmax = 20, count = 200;
    std::uint64_t seed = 1;
    auto* worst = app.add_subcommand("worstcase", "Scan a family for the largest relative error");
    worst->add_option("family", family, "equal-pairs | three-zeros | random")
        ->required()
        ->check(CLI::IsMember({"equal-pairs", "three-zeros", "random"}));
    worst->add_option("--jmax", jmax, "Largest j")->check(CLI::Range(1, 100000));
    worst->add_option("--count", count, "Symbols in the random corpus")->check(CLI::Range(1, 1000000));
    worst->add_option("--seed", seed, "Seed of the random corpus");
    add_output_options(worst, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }
    if (out.format == "csv" && eval->parsed() && !eval->get_option("--format")->count()) out.format = "json";

    try {
        if (eval->parsed()) {
            SixJLabels l;
            for (int i = 0; i < 6; ++i) label_slot(l, i) = eval_labels.get(i);
            emit({eval_table(l, parse_methods(methods))}, "eval", out);
        } else if (sweep->parsed()) {
            const int s = static_cast<int>(std::find(std::begin(kLabelNames), std::end(kLabelNames), swept) -
                                           std::begin(kLabelNames));
            const LabelOptions& labels = sweep_labels;
            if (labels.given(s)) throw InvalidInput("--" + swept + " is swept and cannot be fixed");
            SixJLabels l;
            for (int i = 0; i < 6; ++i)
                if (i != s) label_slot(l, i) = labels.get(i);
            std::optional<HalfInt> f, t;
            if (!from.empty()) f = parse_label("from", from);
            if (!to.empty()) t = parse_label("to", to);
            emit({sweep_table(l, s, parse_methods(methods), f, t)}, "sweep", out);
        } else if (figure->parsed()) {
            const SixJLabels outer = outer_labels(figure_labels);
            std::vector<Table> tables;
            if (kind == "spots") tables = figure_spots(outer, grid);
            else if (kind == "beta-contours") tables = figure_beta(outer, grid);
            else if (kind == "j23-orbits") tables = figure_orbits(outer, grid);
            else tables = figure_caustics(outer, grid);
            emit(tables, kind, out);
        } else if (worst->parsed()) {
            const Table t = family == "random" ? worst_random(jmax, count, seed) : worst_family(family, jmax);
            emit({t}, "worstcase-" + family, out);
        }
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const InvariantViolation& e) {
        std::cerr << "internal invariant violated: " << e.what() << '\n';
        return kExitInternal;
    } catch (const NoConvergence& e) {
        std::cerr << "internal invariant violated: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return 0;
}
