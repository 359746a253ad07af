// Command-line front end: map parsing, chaos classification, pair scans,
// hyperspace pair construction, orbits, and SVG graphs.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperchaos/constructors.hpp"
#include "hyperchaos/map_io.hpp"
#include "hyperchaos/shift_space.hpp"

using namespace hyperchaos;

namespace {

PLMap resolve_map(const std::string& source) {
    if (source == "tent") return build_tent();
    if (source == "identity") return build_identity();
    if (source.rfind("snoha:", 0) == 0) {
        const int depth = std::stoi(source.substr(6));
        if (depth < 0) throw std::domain_error("snoha depth must be >= 0");
        return build_snoha_example(static_cast<std::size_t>(depth));
    }
    std::ifstream in(source);
    if (!in) throw std::runtime_error("cannot open map file: " + source);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_map_json(buffer.str());
}

Interval parse_interval(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) return Interval::point(Rational::parse(text));
    return Interval(Rational::parse(text.substr(0, dots)), Rational::parse(text.substr(dots + 2)));
}

// Boxes as semicolon-separated open intervals: "0..1/4;1/2..3/4".
VietorisBox parse_box(const std::string& text) {
    std::vector<OpenInterval> opens;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t semi = text.find(';', pos);
        if (semi == std::string::npos) semi = text.size();
        const std::string item = text.substr(pos, semi - pos);
        const auto dots = item.find("..");
        if (dots == std::string::npos)
            throw std::invalid_argument("box component must be 'lo..hi': " + item);
        opens.emplace_back(Rational::parse(item.substr(0, dots)),
                           Rational::parse(item.substr(dots + 2)));
        pos = semi + 1;
        if (semi == text.size()) break;
    }
    return VietorisBox(std::move(opens));
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << content;
}

// Exact decimal pixel coordinate (3 fractional digits), so identical inputs
// produce byte-identical SVG on every platform.
std::string svg_coord(const Rational& value, long scale, long offset) {
    mpz_class num = value.num() * scale * 1000;
    mpz_class q = num / value.den();  // truncation is fine at millipixel resolution
    q += offset * 1000;
    mpz_class whole = q / 1000, frac = q % 1000;
    std::ostringstream os;
    os << whole.get_str() << '.';
    const std::string f = frac.get_str();
    os << std::string(3 - f.size(), '0') << f;
    return os.str();
}

std::string render_svg(const PLMap& m) {
    const long size = 512, margin = 24;
    const auto X = [&](const Rational& v) { return svg_coord(v, size, margin); };
    const auto Y = [&](const Rational& v) { return svg_coord(Rational(1) - v, size, margin); };
    std::ostringstream os;
    const long total = size + 2 * margin;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total << "\" height=\"" << total
       << "\" viewBox=\"0 0 " << total << " " << total << "\">\n";
    os << "  <rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size
       << "\" height=\"" << size << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "  <line x1=\"" << X(Rational(0)) << "\" y1=\"" << Y(Rational(0)) << "\" x2=\""
       << X(Rational(1)) << "\" y2=\"" << Y(Rational(1))
       << "\" stroke=\"gray\" stroke-dasharray=\"4 3\" stroke-width=\"1\"/>\n";
    os << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < m.nodes().size(); ++i) {
        if (i) os << ' ';
        os << X(m.nodes()[i].x) << ',' << Y(m.nodes()[i].y);
    }
    os << "\"/>\n";
    for (const auto& n : m.nodes())
        os << "  <circle cx=\"" << X(n.x) << "\" cy=\"" << Y(n.y)
           << "\" r=\"2\" fill=\"black\"/>\n";
    os << "</svg>\n";
    return os.str();
}

std::string verdict_table(const ChaosVerdict& v) {
    std::ostringstream os;
    os << "verdict        status\n";
    os << "generic        " << v.generic.status() << "\n";
    os << "generic-eps    " << v.generic_eps.status() << "\n";
    os << "dense          " << v.dense.status() << "\n";
    os << "dense-eps      " << v.dense_eps.status() << "\n";
    if (v.eps_estimate) os << "eps-estimate   " << v.eps_estimate->str() << "\n";
    if (v.witness_box)
        os << "witness-box    " << v.witness_box->first.str() << " x "
           << v.witness_box->second.str() << "\n";
    os << "\ncondition      status     detail\n";
    for (const auto& [name, cond] : v.evidence)
        os << name << std::string(name.size() < 15 ? 15 - name.size() : 1, ' ')
           << cond.status() << "  " << cond.detail << "\n";
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact dynamics of piecewise-linear interval maps and their hyperspace systems"};
    app.require_subcommand(1);

    std::string map_source = "tent", out_path, eps_text, tol_text = "1/1048576";
    std::size_t horizon = 512;

    const auto add_common = [&](CLI::App* cmd, bool needs_eps) {
        cmd->add_option("--map", map_source, "tent | identity | snoha:N | path to JSON map file");
        cmd->add_option("--horizon", horizon, "iteration horizon");
        cmd->add_option("--tol", tol_text, "closeness tolerance (rational)");
        cmd->add_option("--out", out_path, "output file ('-' for stdout)");
        auto* eps_opt = cmd->add_option("--eps", eps_text, "epsilon of the claim under test");
        if (needs_eps) eps_opt->required();
    };

    // classify
    auto* classify = app.add_subcommand("classify", "run the chaos classifier");
    add_common(classify, true);
    std::size_t interval_grid = 64, pair_grid = 8;
    classify->add_option("--grid", interval_grid, "interval grid resolution");
    classify->add_option("--pair-grid", pair_grid, "interval-pair grid resolution");

    // pair
    auto* pair = app.add_subcommand("pair", "classify a point pair or a set pair");
    add_common(pair, true);
    std::vector<std::string> pair_args;
    pair->add_option("items", pair_args, "two rationals, or two set expressions with --sets")
        ->expected(2);
    bool pair_sets = false;
    pair->add_flag("--sets", pair_sets, "treat the two arguments as compact sets");
    std::optional<std::size_t> tail_start;
    pair->add_option("--tail-start", tail_start, "start of the liminf/limsup window");
    bool pair_csv = false;
    pair->add_flag("--csv", pair_csv, "print the distance series as CSV");

    // construct
    auto* construct = app.add_subcommand("construct", "build a hyperspace Li-Yorke pair");
    add_common(construct, false);
    std::string box_u_text, box_v_text;
    construct->add_option("--box-u", box_u_text, "Vietoris box, e.g. '0..1/4;1/2..3/4'")->required();
    construct->add_option("--box-v", box_v_text, "Vietoris box")->required();

    // scan
    auto* scan = app.add_subcommand("scan", "grid scan for Li-Yorke pairs");
    add_common(scan, true);
    std::string region_text = "0..1,0..1", scan_box_u, scan_box_v;
    std::size_t scan_grid = 8, scan_samples = 16;
    scan->add_option("--region", region_text, "product region 'a..b,c..d'");
    scan->add_option("--grid", scan_grid, "cells per side");
    scan->add_option("--box-u", scan_box_u, "scan set pairs between Vietoris boxes instead");
    scan->add_option("--box-v", scan_box_v, "second box for the hyperspace scan");
    scan->add_option("--samples", scan_samples, "members per box in the hyperspace scan");
    bool scan_json = false;
    scan->add_flag("--json", scan_json, "emit JSON instead of CSV");

    // plot
    auto* plot = app.add_subcommand("plot", "render the map graph as SVG");
    add_common(plot, false);

    // shift-demo
    auto* shift_demo = app.add_subcommand("shift-demo", "the asymptotic shift system whose induced system has a Li-Yorke pair");
    std::size_t shift_k = 6, shift_horizon = 19;
    shift_demo->add_option("--k", shift_k, "number of elements of the set N");
    shift_demo->add_option("--horizon", shift_horizon, "number of shifts (must stay below n_{k-1})");
    shift_demo->add_option("--out", out_path, "output file ('-' for stdout)");

    // hausdorff
    auto* hausdorff = app.add_subcommand("hausdorff", "Hausdorff distance of two compact sets");
    std::vector<std::string> hd_args;
    hausdorff->add_option("sets", hd_args, "two set expressions, e.g. '0..1/2' '1/4;1'")->expected(2);

    // orbit
    auto* orbit = app.add_subcommand("orbit", "iterate a point, interval, or compact set");
    add_common(orbit, false);
    std::string orbit_start = "0";
    std::size_t orbit_steps = 16;
    orbit->add_option("--start", orbit_start, "point 'p/q', interval 'a..b', or set 'a..b;c'");
    orbit->add_option("--steps", orbit_steps, "number of iterates");

    // dump-map
    auto* dump = app.add_subcommand("dump-map", "print the resolved map as canonical JSON");
    add_common(dump, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed()) {
            const PLMap m = resolve_map(map_source);
            CriteriaParams params;
            params.horizon = horizon;
            params.tol_low = Rational::parse(tol_text);
            params.eps = Rational::parse(eps_text);
            params.interval_grid = interval_grid;
            params.pair_grid = pair_grid;
            const ChaosVerdict v = classify_chaos(m, params);
            std::cout << verdict_table(v);
            if (!out_path.empty()) write_output(out_path, to_json(v).dump(2) + "\n");
            return 0;
        }
        if (pair->parsed()) {
            const PLMap m = resolve_map(map_source);
            PairParams params;
            params.horizon = horizon;
            params.tol_low = Rational::parse(tol_text);
            params.eps = Rational::parse(eps_text);
            params.tail_start = tail_start;
            const PairVerdict v =
                pair_sets ? classify_set_pair(m, CompactSet::parse(pair_args[0]),
                                              CompactSet::parse(pair_args[1]), params)
                          : classify_point_pair(m, Rational::parse(pair_args[0]),
                                                Rational::parse(pair_args[1]), params);
            std::cout << "class: " << to_string(v.cls) << "\ntail_min: " << v.stats.tail_min.str()
                      << "\ntail_max: " << v.stats.tail_max.str()
                      << "\ntail_start: " << v.stats.tail_start << "\n";
            if (pair_csv || !out_path.empty()) {
                std::ostringstream csv;
                csv << "n,distance\n";
                for (std::size_t n = 0; n < v.stats.values.size(); ++n)
                    csv << n << ',' << v.stats.values[n].str() << '\n';
                write_output(out_path.empty() ? "-" : out_path, csv.str());
            }
            return 0;
        }
        if (construct->parsed()) {
            const PLMap m = resolve_map(map_source);
            CriteriaParams params;
            params.horizon = horizon;
            params.tol_low = Rational::parse(tol_text);
            const VietorisBox bu = parse_box(box_u_text);
            const VietorisBox bv = parse_box(box_v_text);
            const HyperPairResult r =
                eps_text.empty() ? construct_hyper_ly_pair(m, bu, bv, params)
                                 : construct_hyper_eps_ly_pair(m, bu, bv,
                                                               Rational::parse(eps_text), params);
            for (const auto& stage : r.trace.stages) std::cout << stage << "\n";
            if (!r.ok) {
                std::cout << "construction not found: " << r.trace.failed_stage << "\n";
                return 2;
            }
            std::cout << "U = " << r.u.str() << "\nV = " << r.v.str()
                      << "\nclass: " << to_string(r.verification->cls)
                      << "\ntail_min: " << r.verification->stats.tail_min.str()
                      << "\ntail_max: " << r.verification->stats.tail_max.str() << "\n";
            if (!out_path.empty()) write_output(out_path, to_json(r).dump(2) + "\n");
            return 0;
        }
        if (scan->parsed()) {
            const PLMap m = resolve_map(map_source);
            PairParams params;
            params.horizon = horizon;
            params.tol_low = Rational::parse(tol_text);
            params.eps = Rational::parse(eps_text);
            params.tail_start = 0;
            DensityReport report;
            if (!scan_box_u.empty() || !scan_box_v.empty()) {
                if (scan_box_u.empty() || scan_box_v.empty())
                    throw std::invalid_argument("hyperspace scan needs both --box-u and --box-v");
                report = scan_hyper_pairs(m, parse_box(scan_box_u), parse_box(scan_box_v),
                                          scan_samples, params);
            } else {
                const auto comma = region_text.find(',');
                if (comma == std::string::npos)
                    throw std::invalid_argument("region must be 'a..b,c..d'");
                report = scan_pairs(m, parse_interval(region_text.substr(0, comma)),
                                    parse_interval(region_text.substr(comma + 1)), scan_grid,
                                    params);
            }
            std::cout << "li-yorke fraction: " << report.ly_fraction().str()
                      << "\neps-li-yorke fraction: " << report.eps_ly_fraction().str()
                      << "\ncounterexample cells: " << report.counterexample_cells.size() << "\n";
            if (!out_path.empty())
                write_output(out_path,
                             scan_json ? to_json(report).dump(2) + "\n" : to_csv(report));
            return 0;
        }
        if (plot->parsed()) {
            const PLMap m = resolve_map(map_source);
            write_output(out_path, render_svg(m));
            return 0;
        }
        if (shift_demo->parsed()) {
            const ShiftExampleReport r = verify_example(shift_k, shift_horizon);
            std::cout << "t,dH,expected\n";
            for (std::size_t t = 0; t < r.dh_series.size(); ++t)
                std::cout << t << ',' << r.dh_series[t].str() << ','
                          << r.expected_series[t].str() << '\n';
            std::cout << "census pairs asymptotic: " << (r.census_asymptotic ? "yes" : "no")
                      << "\nseries matches closed form: " << (r.series_matches ? "yes" : "no")
                      << "\nresult: " << (r.passed() ? "pass" : "fail") << "\n";
            if (!out_path.empty()) write_output(out_path, to_json(r).dump(2) + "\n");
            return r.passed() ? 0 : 2;
        }
        if (hausdorff->parsed()) {
            const CompactSet a = CompactSet::parse(hd_args[0]);
            const CompactSet b = CompactSet::parse(hd_args[1]);
            std::cout << hausdorff_distance(a, b).str() << "\n";
            return 0;
        }
        if (orbit->parsed()) {
            const PLMap m = resolve_map(map_source);
            std::ostringstream csv;
            csv << "n,value\n";
            if (orbit_start.find("..") == std::string::npos &&
                orbit_start.find(';') == std::string::npos) {
                const auto pts = m.iterate_point(Rational::parse(orbit_start), orbit_steps);
                for (std::size_t n = 0; n < pts.size(); ++n)
                    csv << n << ',' << pts[n].str() << '\n';
            } else {
                const auto sets = induced_orbit(m, CompactSet::parse(orbit_start), orbit_steps);
                for (std::size_t n = 0; n < sets.size(); ++n)
                    csv << n << ',' << sets[n].str() << '\n';
            }
            write_output(out_path.empty() ? "-" : out_path, csv.str());
            return 0;
        }
        if (dump->parsed()) {
            write_output(out_path, dump_map_json(resolve_map(map_source)));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
