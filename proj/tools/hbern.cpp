// Command-line front end: builds surfaces from flags or a config file,
// runs curvature / variation / instability / reduction / cylinder
// workflows, and emits deterministic JSON records and CSV tables.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hbern/bernstein.hpp"
#include "hbern/bump.hpp"
#include "hbern/frame.hpp"
#include "hbern/highdim.hpp"
#include "hbern/instability.hpp"
#include "hbern/surface.hpp"
#include "hbern/variation.hpp"

using json = nlohmann::json;
using namespace hbern;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNotApplicable = 3;
constexpr int kExitNumeric = 4;

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& s, size_t expect_min, size_t expect_max,
                                  const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw CliError("cannot parse number '" + tok + "' in " + what);
        }
    }
    if (out.size() < expect_min || out.size() > expect_max)
        throw CliError(what + ": expected " + std::to_string(expect_min) + ".." +
                       std::to_string(expect_max) + " comma-separated numbers");
    return out;
}

std::string strip_named_prefix(const std::string& s) {
    const auto eq = s.find('=');
    if (eq != std::string::npos && eq <= 4) return s.substr(eq + 1);
    return s;
}

// line-oriented config: top-level `key = value` plus [section] groups;
// stored flat as "section.key"
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError("cannot open config file " + path);
    std::map<std::string, std::string> out;
    std::string line, section;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto trim = [](std::string v) {
            const auto b = v.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = v.find_last_not_of(" \t\r");
            return v.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw CliError("config line without '=': " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        out[section.empty() ? key : section + "." + key] = val;
    }
    return out;
}

struct RunConfig {
    // surface
    std::string strip_expr, graph_xy_expr, graph_yt_expr, vplane_spec, type2_spec;
    std::string seed_circle_spec, seed_line_spec;
    std::string interval_spec, window_spec, strict_spec;
    // numerics
    double quad_tol = 1e-10;
    double fd_step = 1e-2;
    unsigned seed = 0;
    int grid = 40;
    int k_max = 1 << 12;
    // variation
    std::string x_family = "normal";
    std::string support_spec;
    int n_random = 5;
    // reduce
    std::string probe_spec;
    bool then_certify = false;
    // highdim
    std::string sphere_spec, perimeter_spec, minimal_spec;
    // output
    std::string json_path, csv_path;
};

Interval parse_interval(const std::string& s, const std::string& what) {
    const auto v = parse_numbers(s, 2, 2, what);
    if (!(v[0] < v[1])) throw CliError(what + ": empty interval");
    return {v[0], v[1]};
}

Rect parse_rect(const std::string& s, const std::string& what) {
    const auto v = parse_numbers(s, 4, 4, what);
    return {v[0], v[1], v[2], v[3]};
}

struct BuiltSurface {
    Surface surface;
    std::string description;
};

BuiltSurface build_surface(const RunConfig& cfg) {
    int given = 0;
    for (const std::string& s : {cfg.strip_expr, cfg.graph_xy_expr, cfg.graph_yt_expr,
                                 cfg.vplane_spec, cfg.type2_spec, cfg.seed_circle_spec,
                                 cfg.seed_line_spec})
        if (!s.empty()) ++given;
    if (given == 0) throw CliError("no surface given (use --strip/--graph-xy/... )");
    if (given > 1) throw CliError("more than one surface given");

    Rect window{-6, 6, -3, 3};
    if (!cfg.window_spec.empty()) {
        const auto w = parse_numbers(cfg.window_spec, 2, 4, "--window");
        if (w.size() == 2)
            window = Rect{w[0], w[1], w[0], w[1]};
        else
            window = Rect{w[0], w[1], w[2], w[3]};
    }
    auto split_h0 = [](std::string spec, std::string& h0src) {
        h0src = "0*s";
        const auto h = spec.find("h0=");
        if (h != std::string::npos) {
            h0src = spec.substr(h + 3);
            spec = spec.substr(0, h);
            while (!spec.empty() && (spec.back() == ',' || spec.back() == ' ')) spec.pop_back();
        }
        return spec;
    };

    if (!cfg.strip_expr.empty()) {
        const std::string src = strip_named_prefix(cfg.strip_expr);
        const ScalarFn G = parse(src, {"t"});
        Interval I{-8.0, 8.0};
        if (!cfg.interval_spec.empty()) I = parse_interval(cfg.interval_spec, "--I");
        Surface s = surface_from_strip(strip_new(G, I));
        if (!cfg.window_spec.empty()) {
            const auto w = parse_numbers(cfg.window_spec, 2, 4, "--window");
            if (w.size() == 2)
                s.default_window = Rect{w[0], w[1], std::max(I.lo, -8.0), std::min(I.hi, 8.0)};
            else
                s.default_window = window;
        }
        return {s, "strip x = y G(t), G = " + src};
    }
    if (!cfg.graph_xy_expr.empty()) {
        const std::string src = strip_named_prefix(cfg.graph_xy_expr);
        return {graph_xy_new(parse(src, {"x", "y"}), window), "graph t = " + src};
    }
    if (!cfg.graph_yt_expr.empty()) {
        const std::string src = strip_named_prefix(cfg.graph_yt_expr);
        return {graph_yt_new(parse(src, {"y", "t"}), window), "graph x = " + src};
    }
    if (!cfg.vplane_spec.empty()) {
        const auto v = parse_numbers(cfg.vplane_spec, 3, 3, "--vertical-plane");
        Surface s = vertical_plane(v[0], v[1], v[2]);
        if (!cfg.window_spec.empty()) s.default_window = window;
        return {s, "vertical plane"};
    }
    if (!cfg.type2_spec.empty()) {
        std::string h0src;
        const auto v =
            parse_numbers(split_h0(cfg.type2_spec, h0src), 5, 5, "--type2 (a,b,x0,y0,t0)");
        return {type2_xygraph(v[0], v[1], {v[2], v[3], v[4]}, parse(h0src, {"s"}), window),
                "entire graph of the second kind"};
    }
    if (!cfg.seed_circle_spec.empty()) {
        std::string h0src;
        const auto v = parse_numbers(split_h0(cfg.seed_circle_spec, h0src), 4, 4,
                                     "--seed-circle (cx,cy,R,phase)");
        const SeedData sd =
            make_circle_seed({v[0], v[1]}, v[2], v[3], parse(h0src, {"s"}), {-8, 8});
        Surface s;
        s.kind = "seed";
        s.patch_factory = [sd](const Rect& w) {
            return seed_surface(sd, Interval{w.u0, w.u1}, Interval{w.v0, w.v1});
        };
        s.default_window = cfg.window_spec.empty() ? Rect{-3, 3, -2, 2} : window;
        return {s, "ruled surface from a circle seed"};
    }
    std::string h0src;
    const auto v = parse_numbers(split_h0(cfg.seed_line_spec, h0src), 4, 4,
                                 "--seed-line (x0,y0,a1,a2)");
    const SeedData sd = make_line_seed({v[0], v[1]}, {v[2], v[3]}, parse(h0src, {"s"}), {-8, 8});
    Surface s;
    s.kind = "seed";
    s.patch_factory = [sd](const Rect& w) {
        return seed_surface(sd, Interval{w.u0, w.u1}, Interval{w.v0, w.v1});
    };
    s.default_window = cfg.window_spec.empty() ? Rect{-3, 3, -2, 2} : window;
    return {s, "ruled surface from a line seed"};
}

void write_outputs(const RunConfig& cfg, const json& record, const std::string& csv) {
    std::cout << record.dump(2) << "\n";
    if (!cfg.json_path.empty()) {
        std::ofstream out(cfg.json_path);
        out << record.dump(2) << "\n";
    }
    if (!cfg.csv_path.empty()) {
        std::ofstream out(cfg.csv_path);
        out << csv;
    }
}

QuadratureSpec quad_spec(const RunConfig& cfg) {
    QuadratureSpec q;
    q.rel_tol = cfg.quad_tol;
    return q;
}

// ---------------------------------------------------------------- curvature

int cmd_curvature(const RunConfig& cfg) {
    const BuiltSurface bs = build_surface(cfg);
    const ParamPatch patch = bs.surface.patch();
    const Rect d = patch.domain();
    const int n = cfg.grid;

    double max_abs_h = 0.0;
    long points = 0, skipped = 0;
    std::ostringstream csv;
    csv << "u,v,W,H\n";
    csv.precision(17);
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            const double u = d.u0 + (d.u1 - d.u0) * i / n;
            const double v = d.v0 + (d.v1 - d.v0) * j / n;
            const FrameData f = frame_from_patch(patch, u, v);
            if (f.characteristic) {
                ++skipped;
                csv << u << "," << v << "," << f.W << ",\n";
                continue;
            }
            double H;
            if (bs.surface.defining.has_value())
                H = hmean(*bs.surface.defining, patch.eval(u, v).point());
            else
                H = hmean(patch, u, v);
            max_abs_h = std::max(max_abs_h, std::abs(H));
            ++points;
            csv << u << "," << v << "," << f.W << "," << H << "\n";
        }

    const auto zeros = characteristic_scan(patch, std::max(24, n / 2), 1e-6);
    json rec;
    rec["command"] = "curvature";
    rec["surface"] = bs.description;
    rec["grid"] = n;
    rec["points"] = points;
    rec["characteristic_skipped"] = skipped;
    rec["max_abs_H"] = max_abs_h;
    rec["error_estimate"] = 1e-12;  // analytic jets, roundoff level
    json zs = json::array();
    for (const auto& z : zeros) zs.push_back({{"u", z.u}, {"v", z.v}, {"W", z.W}});
    rec["characteristic_scan"] = zs;
    write_outputs(cfg, rec, csv.str());
    return kExitOk;
}

// ---------------------------------------------------------------- variation

int cmd_variation(const RunConfig& cfg) {
    const BuiltSurface bs = build_surface(cfg);
    const ParamPatch patch = bs.surface.patch();
    const Rect d = patch.domain();
    const Rect sup = cfg.support_spec.empty()
                         ? Rect{d.u0 + 0.2 * (d.u1 - d.u0), d.u1 - 0.2 * (d.u1 - d.u0),
                                d.v0 + 0.2 * (d.v1 - d.v0), d.v1 - 0.2 * (d.v1 - d.v0)}
                         : parse_rect(cfg.support_spec, "--support");
    const QuadratureSpec q = quad_spec(cfg);
    const FdOptions fd{cfg.fd_step};

    std::vector<Deformation> fams;
    std::vector<std::string> names;
    if (cfg.x_family == "normal") {
        fams.push_back(normal_deformation(patch, bump_field(sup, 1.0), sup));
        names.push_back("normal-bump");
    } else if (cfg.x_family == "x1") {
        fams.push_back(x1_deformation(bump_field(sup, 1.0), sup));
        names.push_back("x1-bump");
    } else if (cfg.x_family == "random") {
        std::mt19937 rng(cfg.seed);
        std::uniform_real_distribution<double> amp(-1.0, 1.0), freq(0.0, 2.0), ph(0.0, 6.28);
        for (int i = 0; i < cfg.n_random; ++i) {
            fams.push_back(frame_deformation(
                modulated_bump_field(sup, amp(rng), freq(rng), freq(rng), ph(rng)),
                modulated_bump_field(sup, amp(rng), freq(rng), freq(rng), ph(rng)),
                modulated_bump_field(sup, amp(rng), freq(rng), freq(rng), ph(rng)), sup));
            names.push_back("random-" + std::to_string(i));
        }
    } else {
        throw CliError("unknown deformation family '" + cfg.x_family + "'");
    }

    json rec;
    rec["command"] = "variation";
    rec["surface"] = bs.description;
    rec["family"] = cfg.x_family;
    json entries = json::array();
    std::ostringstream csv;
    csv.precision(17);
    csv << "family,lambda,perimeter,error\n";
    for (size_t i = 0; i < fams.size(); ++i) {
        const Deformation& X = fams[i];
        json e;
        e["name"] = names[i];
        const VariationValue v1 = first_variation_numeric(patch, X, q, fd);
        e["v1_numeric"] = v1.value;
        e["v1_uncertainty"] = v1.uncertainty;
        const VariationValue v1f = first_variation_formula(patch, bs.surface.defining, X, q);
        e["v1_formula"] = v1f.value;
        e["v1_formula_error"] = v1f.uncertainty;
        const VariationValue v2 = second_variation_numeric(patch, X, q, fd);
        e["v2_numeric"] = v2.value;
        e["v2_uncertainty"] = v2.uncertainty;
        if (cfg.x_family == "normal" && bs.surface.defining.has_value()) {
            const AmbientScalar h = [sup](const GroupPoint& g) {
                const Jet1 bu = window_bump_jet(g.y, sup.u0, sup.u1);
                const Jet1 bt = window_bump_jet(g.t, sup.v0, sup.v1);
                return AmbientJet1{bu.v * bt.v, 0.0, bu.d1 * bt.v, bu.v * bt.d1};
            };
            e["v2_formula"] =
                second_variation_normal_formula(patch, *bs.surface.defining, h, sup, q);
        }
        const std::vector<double> lams = {-2 * fd.scale, -fd.scale, 0.0, fd.scale,
                                          2 * fd.scale};
        for (const auto& pp : perimeter_profile(patch, X, lams, q))
            csv << names[i] << "," << pp.lambda << "," << pp.perimeter << "," << pp.error
                << "\n";
        entries.push_back(e);
    }
    rec["results"] = entries;
    write_outputs(cfg, rec, csv.str());
    return kExitOk;
}

// -------------------------------------------------------------- instability

json certificate_json(const InstabilityCertificate& cert) {
    return json::parse(cert.to_json_string());
}

int cmd_instability(const RunConfig& cfg) {
    const BuiltSurface bs = build_surface(cfg);
    if (!bs.surface.strip.has_value())
        throw CliError("instability needs a strip surface (--strip)");
    std::optional<Interval> J;
    if (!cfg.strict_spec.empty()) J = parse_interval(cfg.strict_spec, "--J");
    QuadratureSpec q = quad_spec(cfg);
    q.rel_tol = std::max(q.rel_tol, 1e-9);
    try {
        const InstabilityCertificate cert =
            certify_instability(*bs.surface.strip, q, J, cfg.k_max);
        json rec;
        rec["command"] = "instability";
        rec["surface"] = bs.description;
        rec["certificate"] = certificate_json(cert);
        rec["unstable"] = cert.gap < 0.0;
        std::ostringstream csv;
        csv.precision(17);
        csv << "k0,lhs,rhs,gap,v2\n"
            << cert.k0 << "," << cert.lhs << "," << cert.rhs << "," << cert.gap << ","
            << cert.v2 << "\n";
        write_outputs(cfg, rec, csv.str());
        return kExitOk;
    } catch (const NotStrictError& e) {
        json rec;
        rec["command"] = "instability";
        rec["surface"] = bs.description;
        rec["applicable"] = false;
        rec["reason"] = e.what();
        write_outputs(cfg, rec, "");
        return kExitNotApplicable;
    }
}

// ------------------------------------------------------------------- reduce

json stability_report(const Surface& plane, unsigned seed) {
    const ParamPatch patch = plane.patch(Rect{-2, 2, -2, 2});
    const Rect sup{-1.5, 1.5, -1.5, 1.5};
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0), freq(0.0, 2.0), ph(0.0, 6.28);
    json vs = json::array();
    double vmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 8; ++i) {
        const Deformation X = frame_deformation(
            modulated_bump_field(sup, amp(rng), freq(rng), freq(rng), ph(rng)),
            modulated_bump_field(sup, amp(rng), freq(rng), freq(rng), ph(rng)),
            modulated_bump_field(sup, amp(rng), freq(rng), freq(rng), ph(rng)), sup);
        const VariationValue v2 = second_variation_numeric(patch, X);
        vs.push_back(v2.value);
        vmin = std::min(vmin, v2.value);
    }
    json rep;
    rep["kind"] = "stable_vertical_plane";
    rep["v2_samples"] = vs;
    rep["min_v2"] = vmin;
    rep["stable"] = vmin >= -1e-8;
    return rep;
}

int cmd_reduce(const RunConfig& cfg) {
    if (cfg.graph_yt_expr.empty())
        throw CliError("reduce needs a (y,t)-graph surface (--graph-yt \"psi=...\")");
    const std::string src = strip_named_prefix(cfg.graph_yt_expr);
    const ScalarFn psi = parse(src, {"y", "t"});

    ReduceOptions opts;
    if (!cfg.probe_spec.empty()) opts.probe = parse_rect(cfg.probe_spec, "--probe");
    const ReductionResult r = extract_strip(psi, opts);

    json rec;
    rec["command"] = "reduce";
    rec["surface"] = "graph x = " + src;
    json stages = json::array();
    for (const auto& st : r.stages)
        stages.push_back(
            {{"stage", st.stage}, {"ok", st.ok}, {"value", st.value}, {"detail", st.detail}});
    rec["stages"] = stages;
    rec["ok"] = r.ok;

    std::ostringstream csv;
    csv.precision(17);
    if (!r.ok) {
        rec["failure_stage"] = r.failure_stage;
        rec["reason"] = r.reason;
        if (std::isfinite(r.char_W)) rec["characteristic_W"] = r.char_W;
        if (r.failure_stage == "vertical_plane" && cfg.then_certify) {
            // the stable alternative of the dichotomy
            const auto v = psi.jet(0.0, 0.0);
            rec["stability_report"] =
                stability_report(vertical_plane(1.0, -v.x, v.v), cfg.seed);
            write_outputs(cfg, rec, csv.str());
            return kExitOk;
        }
        write_outputs(cfg, rec, csv.str());
        return kExitNotApplicable;
    }

    rec["radius"] = r.radius;
    rec["translation"] = {r.applied_translation.x, r.applied_translation.y};
    rec["t_window"] = {r.strip_t_window.lo, r.strip_t_window.hi};
    csv << "t,G\n";
    json gs = json::array();
    for (int i = 0; i <= 64; ++i) {
        const double t = r.strip_t_window.lo + r.strip_t_window.length() * i / 64.0;
        const double g = r.strip.G(t);
        csv << t << "," << g << "\n";
        if (i % 8 == 0) gs.push_back({{"t", t}, {"G", g}});
    }
    rec["profile_samples"] = gs;

    if (cfg.then_certify) {
        QuadratureSpec q = quad_spec(cfg);
        q.rel_tol = std::max(q.rel_tol, 1e-8);
        const InstabilityCertificate cert =
            certify_instability(r.strip, q, std::nullopt, cfg.k_max);
        rec["certificate"] = certificate_json(cert);
        rec["unstable"] = cert.gap < 0.0;
    }
    write_outputs(cfg, rec, csv.str());
    return kExitOk;
}

// ------------------------------------------------------------------ highdim

int cmd_highdim(const RunConfig& cfg) {
    json rec;
    rec["command"] = "highdim";
    std::ostringstream csv;
    csv.precision(17);
    bool did = false;

    if (!cfg.sphere_spec.empty()) {
        const auto v = parse_numbers(cfg.sphere_spec, 2, 2, "--sphere (n,R)");
        const int n = static_cast<int>(v[0]);
        if (n < 1 || v[0] != n) throw CliError("--sphere: n must be a positive integer");
        const double R = v[1];
        const CylinderSurface c = cylinder_sphere(n, R);
        csv << "angle,H,expected\n";
        json table = json::array();
        double worst = 0.0;
        for (int i = 0; i < 16; ++i) {
            const double a = 2.0 * M_PI * i / 16.0;
            std::vector<double> z(2 * n, 0.0);
            z[0] = R * std::cos(a);
            z[1] = R * std::sin(a);
            const double H = cylinder_hmean(c, z);
            const double expect = (2.0 * n - 1.0) / R;
            worst = std::max(worst, std::abs(H - expect));
            table.push_back({{"angle", a}, {"H", H}});
            csv << a << "," << H << "," << expect << "\n";
        }
        rec["sphere"] = {{"n", n},
                         {"R", R},
                         {"expected", (2.0 * n - 1.0) / R},
                         {"max_abs_err", worst},
                         {"table", table}};
        did = true;
    }
    if (!cfg.perimeter_spec.empty()) {
        const auto v = parse_numbers(cfg.perimeter_spec, 1, 1, "--perimeter (n)");
        const int n = static_cast<int>(v[0]);
        if (n < 1 || n > 4) throw CliError("--perimeter: n must be 1..4");
        json rows = json::array();
        csv << "window,sigma_h,hausdorff,rel_gap\n";
        const std::vector<double> lo(2 * n - 1, -0.4), hi(2 * n - 1, 0.4);
        std::vector<std::pair<std::string, FnN>> fns = {
            {"flat", graph_affine(2 * n - 1, std::vector<double>(2 * n - 1, 0.0), 0.0)},
            {"sloped", graph_affine(2 * n - 1, std::vector<double>(2 * n - 1, 0.3), 0.1)}};
        if (n >= 2) fns.push_back({"saddle", graph_periodic_saddle(2 * n - 1)});
        for (const auto& [name, f] : fns) {
            const PerimeterPair p = cylinder_perimeter_graph(n, f, lo, hi, 0.0, 1.0);
            rows.push_back({{"window", name},
                            {"sigma_h", p.sigma_h},
                            {"hausdorff", p.hausdorff},
                            {"rel_gap", p.rel_gap},
                            {"est_err", p.est_err}});
            csv << name << "," << p.sigma_h << "," << p.hausdorff << "," << p.rel_gap << "\n";
        }
        rec["perimeter"] = {{"n", n}, {"rows", rows}};
        did = true;
    }
    if (!cfg.minimal_spec.empty()) {
        const auto v = parse_numbers(cfg.minimal_spec, 1, 1, "--minimal-div (n)");
        const int n = static_cast<int>(v[0]);
        if (n < 2) throw CliError("--minimal-div: n must be >= 2");
        const FnN f = graph_periodic_saddle(2 * n - 1);
        double worst = 0.0;
        for (int i = 0; i <= 8; ++i)
            for (int j = 0; j <= 8; ++j) {
                std::vector<double> xyp(2 * n - 1, 0.1);
                xyp[0] = -0.5 + i / 8.0;
                xyp[1] = -0.5 + j / 8.0;
                worst = std::max(worst, std::abs(negative_example_div(n, f, xyp)));
            }
        rec["minimal_div"] = {{"n", n}, {"max_abs_div", worst}};
        did = true;
    }
    if (!did) throw CliError("highdim needs one of --sphere, --perimeter, --minimal-div");
    write_outputs(cfg, rec, csv.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Horizontal-perimeter verification workflows in the Heisenberg group"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file (key = value with [sections])");
        sub->add_option("--json", cfg.json_path, "write the JSON record here as well");
        sub->add_option("--csv", cfg.csv_path, "write the CSV table here");
        sub->add_option("--quad-tol", cfg.quad_tol, "relative quadrature tolerance");
        sub->add_option("--fd-step", cfg.fd_step, "finite-difference step scale");
        sub->add_option("--seed", cfg.seed, "seed for randomized samplings");
        sub->add_option("--window", cfg.window_spec, "patch window u0,u1,v0,v1");
        sub->add_option("--I", cfg.interval_spec, "strip interval lo,hi");
    };
    auto add_surface = [&](CLI::App* sub) {
        sub->add_option("--strip", cfg.strip_expr, "strip generator G=expr in t");
        sub->add_option("--graph-xy", cfg.graph_xy_expr, "height f=expr in (x,y)");
        sub->add_option("--graph-yt", cfg.graph_yt_expr, "chart psi=expr in (y,t)");
        sub->add_option("--vertical-plane", cfg.vplane_spec, "a,b,gamma");
        sub->add_option("--type2", cfg.type2_spec, "a,b,x0,y0,t0[,h0=expr]");
        sub->add_option("--seed-circle", cfg.seed_circle_spec, "cx,cy,R,phase[,h0=expr]");
        sub->add_option("--seed-line", cfg.seed_line_spec, "x0,y0,a1,a2[,h0=expr]");
    };

    CLI::App* curvature = app.add_subcommand("curvature", "grid of H values and a scan");
    add_common(curvature);
    add_surface(curvature);
    curvature->add_option("--grid", cfg.grid, "grid resolution");

    CLI::App* variation = app.add_subcommand("variation", "first/second variation report");
    add_common(variation);
    add_surface(variation);
    variation->add_option("--X", cfg.x_family, "deformation family: normal|x1|random");
    variation->add_option("--support", cfg.support_spec, "support rectangle u0,u1,v0,v1");
    variation->add_option("--n-random", cfg.n_random, "number of random deformations");

    CLI::App* instability = app.add_subcommand("instability", "destabilizing certificate");
    add_common(instability);
    add_surface(instability);
    instability->add_option("--J", cfg.strict_spec, "strict window override lo,hi");
    instability->add_option("--k-max", cfg.k_max, "largest k tested");

    CLI::App* reduce = app.add_subcommand("reduce", "strict-strip extraction pipeline");
    add_common(reduce);
    add_surface(reduce);
    reduce->add_option("--probe", cfg.probe_spec, "probe rectangle y0,y1,t0,t1");
    reduce->add_flag("--then-certify", cfg.then_certify, "chain the certificate");
    reduce->add_option("--k-max", cfg.k_max, "largest k tested when certifying");

    CLI::App* highdim = app.add_subcommand("highdim", "vertical cylinder checks");
    add_common(highdim);
    highdim->add_option("--sphere", cfg.sphere_spec, "n,R sphere cylinder table");
    highdim->add_option("--perimeter", cfg.perimeter_spec, "n: perimeter equality table");
    highdim->add_option("--minimal-div", cfg.minimal_spec, "n: divergence of the unit field");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (!config_path.empty()) {
            // file values fill only the slots no flag provided
            const auto file = read_config(config_path);
            auto maybe = [&](const std::string& key, std::string& slot) {
                const auto it = file.find(key);
                if (it != file.end() && slot.empty()) slot = it->second;
            };
            maybe("surface.G", cfg.strip_expr);
            maybe("surface.f", cfg.graph_xy_expr);
            maybe("surface.psi", cfg.graph_yt_expr);
            maybe("surface.vertical_plane", cfg.vplane_spec);
            maybe("surface.type2", cfg.type2_spec);
            maybe("surface.I", cfg.interval_spec);
            maybe("surface.window", cfg.window_spec);
            maybe("instability.J", cfg.strict_spec);
            maybe("reduce.probe", cfg.probe_spec);
            maybe("variation.X", cfg.x_family);
            maybe("variation.support", cfg.support_spec);
            maybe("output.json", cfg.json_path);
            maybe("output.csv", cfg.csv_path);
            if (file.count("reduce.then_certify"))
                cfg.then_certify = file.at("reduce.then_certify") == "true";
            if (file.count("quad.rel_tol")) cfg.quad_tol = std::stod(file.at("quad.rel_tol"));
            if (file.count("fd.step")) cfg.fd_step = std::stod(file.at("fd.step"));
            if (file.count("seed")) cfg.seed = std::stoul(file.at("seed"));
        }
        if (curvature->parsed()) return cmd_curvature(cfg);
        if (variation->parsed()) return cmd_variation(cfg);
        if (instability->parsed()) return cmd_instability(cfg);
        if (reduce->parsed()) return cmd_reduce(cfg);
        if (highdim->parsed()) return cmd_highdim(cfg);
        std::cerr << "no subcommand\n";
        return kExitInput;
    } catch (const CliError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ParseError& e) {
        std::cerr << "expression error: " << e.what() << "\n";
        return kExitInput;
    } catch (const NotStrictError& e) {
        std::cerr << "not applicable: " << e.what() << "\n";
        return kExitNotApplicable;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const QuadratureError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const K0ExhaustedError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
}
