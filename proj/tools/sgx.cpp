// sgx: command-line front end for the gasket extension library.
//
// Subcommands: graph, trace, extend, bottom, haar, biharm, verify, resolvent.
// All rationally-computed numbers print as exact fractions "p/q"; float paths
// print decimals with 12 significant digits.  Every CSV has a --json mirror.
// Exit codes: 0 success, 1 usage/input error, 2 verification mismatch.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sg/biharmonic.hpp"
#include "sg/energy.hpp"
#include "sg/haar.hpp"
#include "sg/network.hpp"
#include "sg/special.hpp"

using nlohmann::json;
using namespace sg;

namespace {

constexpr int kRationalLevelCap = 6;
constexpr int kFloatLevelCap = 10;
constexpr int kSplineRationalCap = 3;
constexpr int kSplineFloatCap = 4;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string fmt(const Rational& q) { return to_fraction_string(q); }

/// Rows of labeled strings; rendered as CSV or a JSON array of objects.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }

    void write_csv(std::ostream& os) const {
        for (size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << "\n";
        for (const auto& r : rows) {
            for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
            os << "\n";
        }
    }

    json to_json() const {
        json arr = json::array();
        for (const auto& r : rows) {
            json obj;
            for (size_t i = 0; i < r.size() && i < columns.size(); ++i) obj[columns[i]] = r[i];
            arr.push_back(std::move(obj));
        }
        return arr;
    }
};

void emit(const Table& t, bool as_json, const std::string& out_path) {
    std::ostringstream buf;
    if (as_json)
        buf << t.to_json().dump(2) << "\n";
    else
        t.write_csv(buf);
    if (out_path.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot open output file: " + out_path);
        f << buf.str();
    }
}

void check_level(int m, int cap, const char* what) {
    if (m < 0 || m > cap)
        throw std::invalid_argument(std::string(what) + ": level must be in [0, " + std::to_string(cap) + "]");
}

std::vector<VertexId> parse_address_list(const std::string& csv) {
    std::vector<VertexId> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_address(item));
    return out;
}

std::map<VertexId, Rational> parse_constraints(const std::vector<std::string>& specs) {
    std::map<VertexId, Rational> out;
    for (const auto& s : specs) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("constraint needs addr=value: " + s);
        out[parse_address(s.substr(0, eq))] = parse_fraction(s.substr(eq + 1));
    }
    return out;
}

std::map<VertexId, Rational> parse_values_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read values file: " + path);
    std::map<VertexId, Rational> out;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("values file needs addr,value lines: " + line);
        out[parse_address(line.substr(0, comma))] = parse_fraction(line.substr(comma + 1));
    }
    return out;
}

std::vector<Rational> parse_fraction_list(const std::string& csv) {
    std::vector<Rational> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_fraction(item));
    return out;
}

// ---- subcommand bodies ----

int run_graph(int level, bool as_json, const std::string& out) {
    check_level(level, kRationalLevelCap, "graph");
    const LevelGraph g(level);
    const auto w = measure_weights(g);
    Table t;
    t.columns = {"kind", "x", "y", "value"};
    for (int v = 0; v < g.vertex_count(); ++v)
        t.add({"vertex", g.vertex(v).to_string(), std::to_string(g.neighbors(v).size()),
               fmt(w[static_cast<size_t>(v)])});
    for (const auto& [a, b] : g.edges())
        t.add({"edge", g.vertex(a).to_string(), g.vertex(b).to_string(), fmt(g.conductance())});
    emit(t, as_json, out);
    return 0;
}

int run_trace(int level, const std::string& keep_csv, bool as_json, const std::string& out) {
    check_level(level, kRationalLevelCap, "trace");
    const auto keep = parse_address_list(keep_csv);
    if (keep.size() < 2) throw std::invalid_argument("trace: need at least two --keep addresses");
    const LevelGraph g(level);
    const Network net = effective_form(g, keep);
    Table t;
    t.columns = {"x", "y", "c"};
    for (size_t i = 0; i < keep.size(); ++i)
        for (size_t j = i + 1; j < keep.size(); ++j) {
            const Rational c = net.conductance(net.index_of(lift(keep[i], level).to_string()),
                                               net.index_of(lift(keep[j], level).to_string()));
            t.add({keep[i].to_string(), keep[j].to_string(), fmt(c)});
        }
    emit(t, as_json, out);
    return 0;
}

int run_extend(int level, const std::string& lambda_str, const std::vector<std::string>& constraints,
               bool dirichlet, bool as_json, const std::string& out) {
    const Rational lambda = parse_fraction(lambda_str);
    if (lambda < 0) throw std::invalid_argument("extend: lambda must be >= 0");
    const bool exact = (lambda == 0);
    check_level(level, exact ? kRationalLevelCap : kFloatLevelCap, "extend");
    const LevelGraph g(level);
    const auto cons = parse_constraints(constraints);
    if (cons.empty() && !dirichlet) throw std::invalid_argument("extend: need at least one --constraint");
    Table t;
    t.columns = {"address", "value"};
    if (exact) {
        ExtensionProblem<Rational> p{level, cons, Rational(0), dirichlet};
        const auto u = minimize_energy_lambda(g, p);
        for (int v = 0; v < g.vertex_count(); ++v)
            t.add({g.vertex(v).to_string(), fmt(u[static_cast<size_t>(v)])});
    } else {
        ExtensionProblem<double> p;
        p.level = level;
        p.lambda = to_double(lambda);
        p.dirichlet = dirichlet;
        for (const auto& [k, v] : cons) p.constraints[k] = to_double(v);
        const auto u = minimize_energy_lambda(g, p);
        for (int v = 0; v < g.vertex_count(); ++v)
            t.add({g.vertex(v).to_string(), fmt(u[static_cast<size_t>(v)])});
    }
    emit(t, as_json, out);
    return 0;
}

int run_bottom(int level, bool as_json, const std::string& out, const std::string& plot_path) {
    if (level < 1) throw std::invalid_argument("bottom: level must be >= 1");
    check_level(level, kRationalLevelCap, "bottom");
    const auto bc = bottom_row_coeffs(level);
    Table t;
    t.columns = {"problem", "i", "j", "value"};
    t.add({"scalar", "a", "", fmt(bc.a)});
    t.add({"scalar", "b", "", fmt(bc.b)});
    t.add({"scalar", "tilde_b", "", fmt(bc.tilde_b)});
    t.add({"scalar", "l", "", fmt(bc.l)});
    t.add({"scalar", "m", "", fmt(bc.m)});
    for (const auto& [key, c] : bc.with_top)
        t.add({"top", std::to_string(key.first), std::to_string(key.second), fmt(c)});
    for (const auto& [key, c] : bc.without_top)
        t.add({"notop", std::to_string(key.first), std::to_string(key.second), fmt(c)});
    emit(t, as_json, out);
    if (!plot_path.empty()) {
        // profile of the q_0 couplings along the row: x = j / 2^n
        Table p;
        p.columns = {"x", "y"};
        const long full = 1L << level;
        for (long j = 0; j <= full; ++j) {
            const auto it = bc.with_top.find({-1, static_cast<int>(j)});
            if (it == bc.with_top.end()) continue;
            p.add({fmt(static_cast<double>(j) / static_cast<double>(full)), fmt(to_double(it->second))});
        }
        emit(p, false, plot_path);
    }
    return 0;
}

int run_haar(int level, const std::string& values_csv, bool gamma_table, bool as_json,
             const std::string& out, const std::string& plot_path) {
    if (level < 1) throw std::invalid_argument("haar: level must be >= 1");
    check_level(level, kRationalLevelCap, "haar");
    const auto gd = gamma_decomposition(level);
    if (!gd.consistent) {
        std::cerr << "haar: traced form is not diagonal in Haar coordinates\n";
        return 2;
    }
    Table t;
    if (gamma_table || values_csv.empty()) {
        t.columns = {"level", "gamma"};
        for (int n = 0; n <= level; ++n)
            t.add({std::to_string(n), fmt(gd.gamma[static_cast<size_t>(n)])});
    } else {
        const auto tvals = parse_fraction_list(values_csv);
        if (static_cast<long>(tvals.size()) != (1L << level) + 1)
            throw std::invalid_argument("haar: need 2^m+1 bottom values");
        t.columns = {"n", "k", "D", "gamma_n"};
        std::vector<double> td(tvals.size());
        for (size_t i = 0; i < tvals.size(); ++i) td[i] = to_double(tvals[i]);
        for (int n = 0; n <= level; ++n)
            for (int k = 0; k < (1 << n); ++k)
                t.add({std::to_string(n), std::to_string(k), fmt(haar_coefficient(level, n, k, td)),
                       fmt(gd.gamma[static_cast<size_t>(n)])});
    }
    emit(t, as_json, out);
    if (!plot_path.empty()) {
        // gamma-vs-m curves, one row per (m, Haar level)
        Table p;
        p.columns = {"x", "series", "y"};
        for (int m = 1; m <= kRationalLevelCap; ++m) {
            const auto ge = gamma_expected(m);
            for (int n = 0; n <= m; ++n)
                p.add({std::to_string(m), std::to_string(n), fmt(to_double(ge[static_cast<size_t>(n)]))});
        }
        emit(p, false, plot_path);
    }
    return 0;
}

template <class T>
int run_biharm_typed(const LevelGraph& g, const std::map<VertexId, Rational>& values,
                     const std::map<VertexId, Rational>& normals, bool values_only, bool as_json,
                     const std::string& out) {
    const int m = g.level();
    Table t;
    t.columns = {"word", "a0", "a1", "a2", "b0", "b1", "b2", "c0", "c1", "c2", "theta"};
    T total(0);
    std::vector<CellBoundary<T>> cells;
    if (values_only) {
        NodeValues<T> u(static_cast<size_t>(g.vertex_count()), T(0));
        for (int v = 0; v < g.vertex_count(); ++v) {
            const auto it = values.find(g.vertex(v));
            if (it == values.end())
                throw std::invalid_argument("biharm --values-only: missing value at " + g.vertex(v).to_string());
            u[static_cast<size_t>(v)] = from_rational<T>(it->second);
        }
        const auto sol = values_only_solve(g, u);
        total = sol.total;
        const T five_m_inv = from_rational<T>(rat_pow(rational(5), -m));
        for (size_t c = 0; c < g.cells().size(); ++c) {
            CellBoundary<T> cell;
            std::array<T, 3> c_loc{};
            for (int i = 0; i < 3; ++i) {
                const int vi = g.cells()[c][static_cast<size_t>(i)];
                cell.a[static_cast<size_t>(i)] = u[static_cast<size_t>(vi)];
                c_loc[static_cast<size_t>(i)] = five_m_inv * sol.delta_u[static_cast<size_t>(vi)];
            }
            cell.b = normal_from_laplacian(cell.a, c_loc);
            cells.push_back(cell);
        }
    } else {
        SplineProblem<T> p;
        p.level = m;
        for (const auto& [k, v] : values) p.values[k] = from_rational<T>(v);
        for (const auto& [k, v] : normals) p.normals[k] = from_rational<T>(v);
        const auto sol = spline_solve(g, p);
        total = sol.total;
        cells = sol.cells;
    }
    for (size_t c = 0; c < cells.size(); ++c) {
        const auto lap = solve_cell(cells[c].a, cells[c].b);
        std::vector<std::string> row{g.cell_word(static_cast<int>(c)).empty() ? "-" : g.cell_word(static_cast<int>(c))};
        for (int i = 0; i < 3; ++i) row.push_back(fmt(cells[c].a[static_cast<size_t>(i)]));
        for (int i = 0; i < 3; ++i) row.push_back(fmt(cells[c].b[static_cast<size_t>(i)]));
        for (int i = 0; i < 3; ++i) row.push_back(fmt(lap[static_cast<size_t>(i)]));
        row.push_back(fmt(theta(cells[c].a, cells[c].b)));
        t.add(row);
    }
    t.add({"total", "", "", "", "", "", "", "", "", "", fmt(total)});
    emit(t, as_json, out);
    return 0;
}

int run_biharm(int level, const std::string& values_path, const std::string& normals_path,
               bool values_only, bool use_float, bool as_json, const std::string& out) {
    if (!values_only && !normals_path.empty() && level > kSplineFloatCap)
        throw std::invalid_argument("biharm: spline mode supports level <= " + std::to_string(kSplineFloatCap));
    check_level(level, use_float ? kFloatLevelCap : kRationalLevelCap, "biharm");
    const bool spline_mode = !values_only;
    const bool rational_ok = spline_mode ? level <= kSplineRationalCap : level <= kRationalLevelCap;
    const LevelGraph g(level);
    const auto values = parse_values_file(values_path);
    std::map<VertexId, Rational> normals;
    if (!normals_path.empty()) normals = parse_values_file(normals_path);
    if (use_float || !rational_ok)
        return run_biharm_typed<double>(g, values, normals, values_only, as_json, out);
    return run_biharm_typed<Rational>(g, values, normals, values_only, as_json, out);
}

// verification report helpers: every row carries expected and oracle values.

struct Report {
    Table t;
    bool all_match = true;

    Report() { t.columns = {"family", "level", "x", "y", "expected", "oracle", "match"}; }

    void row(const std::string& fam, int lev, const std::string& x, const std::string& y,
             const std::optional<Rational>& expected, const Rational& oracle) {
        const bool match = expected.has_value() && *expected == oracle;
        if (expected.has_value() && !match) all_match = false;
        t.add({fam, std::to_string(lev), x, y, expected ? fmt(*expected) : "uncovered", fmt(oracle),
               expected ? (match ? "true" : "false") : "n/a"});
    }
};

Rational oracle_pair(const Network& net, const VertexId& x, const VertexId& y, int lev) {
    return net.conductance(net.index_of(lift(x, lev).to_string()),
                           net.index_of(lift(y, lev).to_string()));
}

void verify_beta(Report& rep, int max_level) {
    for (int m = 0; m <= max_level; ++m) {
        const int lev = m + 2;
        check_level(lev, kRationalLevelCap, "verify beta");
        const auto pts = beta_points(m);
        const LevelGraph g(lev);
        const Network net = effective_form(g, pts);
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j)
                rep.row("beta", m, pts[i].to_string(), pts[j].to_string(),
                        beta_expected(m, pts[i], pts[j]), oracle_pair(net, pts[i], pts[j], lev));
    }
}

void verify_newlevel(Report& rep, int max_level) {
    for (int n = 1; n <= max_level; ++n) {
        check_level(n, kRationalLevelCap, "verify newlevel");
        const auto pts = new_level_points(n);
        const LevelGraph g(n);
        const Network net = effective_form(g, pts);
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j)
                rep.row("newlevel", n, pts[i].to_string(), pts[j].to_string(),
                        new_level_expected(n, pts[i], pts[j]), oracle_pair(net, pts[i], pts[j], n));
    }
}

void verify_bottom(Report& rep, int max_level) {
    for (int n = 1; n <= max_level; ++n) {
        check_level(n, kRationalLevelCap, "verify bottom");
        const LevelGraph g(n);
        auto keep = bottom_row(n);
        const VertexId top = boundary_vertex(0, 0);
        auto keep_top = keep;
        keep_top.push_back(top);
        const Network with_top = effective_form(g, keep_top);
        const Network without_top = effective_form(g, keep);
        const auto bc = bottom_row_coeffs(n);
        auto id_of = [&](int i) { return i < 0 ? top : keep[static_cast<size_t>(i)]; };
        auto name = [&](int i) { return i < 0 ? std::string("q0") : "x" + std::to_string(i); };
        const int full = 1 << n;
        for (int i = -1; i <= full; ++i)
            for (int j = i + 1; j <= full; ++j) {
                const auto it = bc.with_top.find({i, j});
                rep.row("bottom-top", n, name(i), name(j),
                        it == bc.with_top.end() ? std::optional<Rational>{} : it->second,
                        oracle_pair(with_top, id_of(i), id_of(j), n));
            }
        for (int i = 0; i <= full; ++i)
            for (int j = i + 1; j <= full; ++j) {
                const auto it = bc.without_top.find({i, j});
                rep.row("bottom-notop", n, name(i), name(j),
                        it == bc.without_top.end() ? std::optional<Rational>{} : it->second,
                        oracle_pair(without_top, id_of(i), id_of(j), n));
            }
    }
}

int run_verify(const std::string& family, int max_level, bool as_json, const std::string& out) {
    Report rep;
    if (family == "beta")
        verify_beta(rep, max_level);
    else if (family == "newlevel")
        verify_newlevel(rep, max_level);
    else if (family == "bottom")
        verify_bottom(rep, max_level);
    else
        throw std::invalid_argument("verify: unknown family " + family);
    emit(rep.t, as_json, out);
    return rep.all_match ? 0 : 2;
}

int run_resolvent(int level, const std::string& lambda_str, const std::vector<std::string>& constraints,
                  bool as_json, const std::string& out) {
    const Rational lambda = parse_fraction(lambda_str);
    if (lambda < 0) throw std::invalid_argument("resolvent: lambda must be >= 0");
    const bool exact = (lambda == 0);
    check_level(level, exact ? kRationalLevelCap : kFloatLevelCap, "resolvent");
    const LevelGraph g(level);
    const auto cons = parse_constraints(constraints);
    if (cons.empty()) throw std::invalid_argument("resolvent: need at least one --constraint");
    std::vector<VertexId> pts;
    std::vector<Rational> a;
    for (const auto& [k, v] : cons) {
        pts.push_back(k);
        a.push_back(v);
    }
    Table t;
    t.columns = {"kind", "address", "value"};
    if (exact) {
        const auto sol = resolvent_construct<Rational>(g, pts, a, Rational(0));
        for (size_t i = 0; i < pts.size(); ++i)
            t.add({"coefficient", pts[i].to_string(), fmt(sol.coefficients[i])});
        for (int v = 0; v < g.vertex_count(); ++v)
            t.add({"value", g.vertex(v).to_string(), fmt(sol.minimizer[static_cast<size_t>(v)])});
        t.add({"objective", "", fmt(sol.value)});
    } else {
        std::vector<double> ad(a.size());
        for (size_t i = 0; i < a.size(); ++i) ad[i] = to_double(a[i]);
        const auto sol = resolvent_construct<double>(g, pts, ad, to_double(lambda));
        for (size_t i = 0; i < pts.size(); ++i)
            t.add({"coefficient", pts[i].to_string(), fmt(sol.coefficients[i])});
        for (int v = 0; v < g.vertex_count(); ++v)
            t.add({"value", g.vertex(v).to_string(), fmt(sol.minimizer[static_cast<size_t>(v)])});
        t.add({"objective", "", fmt(sol.value)});
    }
    emit(t, as_json, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-data extension problems on the Sierpinski gasket"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    std::string out_path;
    app.add_flag("--json", as_json, "emit JSON instead of CSV");
    app.add_option("--out", out_path, "write output to a file instead of stdout");

    int level = 1;
    std::string keep, lambda_str = "0", values_str, family = "beta";
    std::vector<std::string> constraints;
    bool dirichlet = false, gamma_table = false, values_only = false, use_float = false;
    int max_level = 1;
    std::string values_path, normals_path, plot_path;

    auto* cg = app.add_subcommand("graph", "emit the level-m graph (vertices, edges, weights)");
    cg->add_option("--level", level, "level m")->required();

    auto* ct = app.add_subcommand("trace", "Kron-reduce the level-m energy form onto a vertex set");
    ct->add_option("--level", level, "level m")->required();
    ct->add_option("--keep", keep, "comma-separated addresses to keep")->required();

    auto* ce = app.add_subcommand("extend", "constrained E_lambda minimization");
    ce->add_option("--level", level, "level m")->required();
    ce->add_option("--lambda", lambda_str, "lambda >= 0 (fraction)");
    ce->add_option("--constraint", constraints, "addr=value (repeatable)");
    ce->add_flag("--dirichlet", dirichlet, "pin V_0 to zero");

    auto* cb = app.add_subcommand("bottom", "bottom-row coefficient tables");
    cb->add_option("--level", level, "row level n")->required();
    cb->add_option("--plot-data", plot_path, "write (x, y) profile data to a CSV file");

    auto* ch = app.add_subcommand("haar", "Haar analysis of the bottom-row form");
    ch->add_option("--level", level, "level m")->required();
    ch->add_option("--values", values_str, "comma-separated bottom data t_0..t_{2^m}");
    ch->add_flag("--gamma-table", gamma_table, "print gamma per Haar level");
    ch->add_option("--plot-data", plot_path, "write gamma-vs-m curve data to a CSV file");

    auto* cbi = app.add_subcommand("biharm", "piecewise-biharmonic extension");
    cbi->add_option("--level", level, "level m")->required();
    cbi->add_option("--values", values_path, "CSV file of addr,value rows")->required();
    cbi->add_option("--normals", normals_path, "CSV file of addr,normal rows");
    cbi->add_flag("--values-only", values_only, "minimize over all normal data");
    cbi->add_flag("--float", use_float, "force the floating-point path");

    auto* cv = app.add_subcommand("verify", "closed forms vs exact Kron oracle");
    cv->add_option("--family", family, "beta | newlevel | bottom")->required();
    cv->add_option("--max-level", max_level, "largest level to verify");
    cv->add_option("--report", out_path, "report file (alias of --out)");

    auto* cr = app.add_subcommand("resolvent", "Dirichlet resolvent-column construction");
    cr->add_option("--level", level, "level m")->required();
    cr->add_option("--lambda", lambda_str, "lambda >= 0 (fraction)");
    cr->add_option("--constraint", constraints, "addr=value (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // normalize CLI11's error-code family: usage errors are always 1
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (cg->parsed()) return run_graph(level, as_json, out_path);
        if (ct->parsed()) return run_trace(level, keep, as_json, out_path);
        if (ce->parsed()) return run_extend(level, lambda_str, constraints, dirichlet, as_json, out_path);
        if (cb->parsed()) return run_bottom(level, as_json, out_path, plot_path);
        if (ch->parsed()) return run_haar(level, values_str, gamma_table, as_json, out_path, plot_path);
        if (cbi->parsed())
            return run_biharm(level, values_path, normals_path, values_only, use_float, as_json, out_path);
        if (cv->parsed()) return run_verify(family, max_level, as_json, out_path);
        if (cr->parsed()) return run_resolvent(level, lambda_str, constraints, as_json, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
