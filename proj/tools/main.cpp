#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "clusterlab/cluster_net.hpp"
#include "clusterlab/density.hpp"
#include "clusterlab/functionals.hpp"
#include "clusterlab/optimizer.hpp"
#include "clusterlab/probes.hpp"
#include "clusterlab/render.hpp"
#include "clusterlab/report.hpp"
#include "clusterlab/scenario.hpp"
#include "clusterlab/steiner.hpp"
#include "clusterlab/verifier.hpp"

using namespace clusterlab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitPredicateFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolverFault = 3;

int env_threads() {
    const char* v = std::getenv("CLUSTERLAB_THREADS");
    if (!v) return 1;
    int n = std::atoi(v);
    return n > 0 ? n : 1;
}

std::vector<double> parse_csv_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::string join_command(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += " ";
        s += argv[i];
    }
    return s;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot write " + path);
    f << content;
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
    std::vector<double> out;
    for (int k = 0; k < n; ++k)
        out.push_back(lo * std::pow(hi / lo, n > 1 ? static_cast<double>(k) / (n - 1) : 0.0));
    return out;
}

double net_min_separation(const ClusterNet& net) {
    double m = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < net.nodes.size(); ++i)
        for (size_t j = i + 1; j < net.nodes.size(); ++j)
            m = std::min(m, dist(net.nodes[i].pos, net.nodes[j].pos));
    return m;
}

// Runs the verifier battery and the probes on a converged net.
void run_verification(RunReport& rep, const ClusterNet& net, const DensityField& field,
                      const SolveConfig& cfg, bool with_probes, bool with_local_probe) {
    double ell = cfg.spacing(net);
    double min_sep = net_min_separation(net);
    double r_max = std::isfinite(min_sep) ? min_sep / 8.0 : net.scale() / 10.0;
    r_max = std::min(r_max, 0.25 * net.scale());

    rep.junctions = junction_report(net);
    rep.has_junctions = true;

    rep.predicates.push_back(ball_length_check(net, 12, r_max, cfg.seed));
    rep.predicates.push_back(circle_crossing_check(net, 8, 14.0, r_max, cfg.seed + 1));
    rep.predicates.push_back(island_check(net, 4.0 * ell));

    if (with_probes) {
        std::vector<double> r_grid = geometric_grid(0.02 * net.scale(), 0.12 * net.scale(), 8);
        rep.growth = growth_probe(field, net.window, 24, r_grid, cfg.seed + 2);
        rep.has_growth = true;
        rep.predicates.push_back(isoperimetric_check(net, field, rep.growth));

        double a_min = *std::min_element(net.target_areas.begin(), net.target_areas.end());
        std::vector<double> t_grid = geometric_grid(1e-6 * a_min, 3e-4 * a_min, 12);
        try {
            rep.epsbeta = eps_beta_probe(net, field, net.window.center(),
                                         0.15 * net.scale(), t_grid, cfg, cfg.seed + 3);
            rep.has_epsbeta = true;
        } catch (const NoEligibleArcError& e) {
            PredicateLog log;
            log.predicate = "eps_beta_probe";
            log.pass = true;
            log.note = std::string("skipped: ") + e.what();
            rep.predicates.push_back(log);
        }
        if (rep.has_growth && rep.has_epsbeta) {
            rep.regularity =
                regularity_report(net, field, rep.growth, rep.epsbeta, 4.0 * ell);
            rep.has_regularity = true;
        }
    }
    if (with_local_probe)
        rep.predicates.push_back(local_optimality_probe(net, field, 6, cfg, cfg.seed + 4));
}

int cmd_solve(const std::string& command, Scenario scenario, SolveConfig cfg,
              const std::string& out_dir, double angle_tol_deg, bool with_probes,
              bool with_local_probe, bool emit_svg) {
    auto t0 = std::chrono::steady_clock::now();
    scenario = resolve_scenario_defaults(scenario);
    DensityField field = make_density(scenario.density);
    ClusterNet init = build_scenario(scenario, field);
    if (scenario.name == "custom") scenario.areas = init.target_areas;

    auto [net, trace] = solve(init, field, cfg);

    RunReport rep;
    rep.command = command;
    rep.scenario = scenario;
    rep.config = cfg;
    rep.threads = env_threads();
    rep.angle_tolerance_deg = angle_tol_deg;
    rep.functionals = evaluate_functionals(net, field);
    rep.trace = trace;
    rep.has_solve = true;

    if (trace.status != SolveStatus::TopologyFault)
        run_verification(rep, net, field, cfg, with_probes, with_local_probe);

    std::filesystem::create_directories(out_dir);
    save_cluster_file(net, out_dir + "/net.json");
    write_file(out_dir + "/report.json", report_json(rep) + "\n");
    if (emit_svg) write_file(out_dir + "/net.svg", render_svg(net));

    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "solve " << scenario.name << ": status=" << to_string(trace.status)
              << " iters=" << trace.iters << " perimeter=" << rep.functionals.perimeter
              << " wall=" << dt << "s\n";

    if (trace.status == SolveStatus::TopologyFault) {
        std::cerr << "fault: " << trace.fault << "\n";
        return kExitSolverFault;
    }
    return rep.all_hard_predicates_pass() ? kExitPass : kExitPredicateFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"clusterlab: weighted isoperimetric cluster solver and verifier"};
    app.require_subcommand(1);
    std::string command = join_command(argc, argv);

    // ---- solve ----
    auto* solve_cmd = app.add_subcommand("solve", "minimize a scenario, then verify it");
    std::string scenario_name = "circle", areas_csv, density_json, out_dir = "out";
    std::string config_file;
    double area_single = 0.0, angle_tol = 2.0;
    bool no_probes = false, no_local = false, no_svg = false;
    SolveConfig cfg;
    solve_cmd->add_option("--scenario", scenario_name, "scenario name");
    solve_cmd->add_option("--areas", areas_csv, "target areas a1,a2,...");
    solve_cmd->add_option("--area", area_single, "single target area (m=1)");
    solve_cmd->add_option("--density", density_json, "density spec JSON");
    std::string custom_file;
    solve_cmd->add_option("--custom-file", custom_file,
                          "cluster JSON for --scenario custom");
    solve_cmd->add_option("--seed", cfg.seed, "run seed");
    solve_cmd->add_option("--out", out_dir, "output directory");
    solve_cmd->add_option("--max-iters", cfg.max_iters, "iteration cap");
    solve_cmd->add_option("--grad-tol", cfg.grad_tol_rel,
                          "projected gradient tolerance (relative to window diagonal)");
    solve_cmd->add_option("--spacing", cfg.target_spacing, "target vertex spacing");
    solve_cmd->add_option("--remesh-every", cfg.remesh_every, "remesh period");
    solve_cmd->add_option("--angle-tol", angle_tol, "junction angle gate in degrees");
    solve_cmd->add_option("--config", config_file, "JSON config (flags win on conflict)");
    solve_cmd->add_flag("--no-probes", no_probes, "skip growth and eps-beta probes");
    solve_cmd->add_flag("--no-local-probe", no_local, "skip local optimality probe");
    solve_cmd->add_flag("--no-svg", no_svg, "skip SVG rendering");

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand("verify", "verification-only on a net file");
    std::string net_file, certs_file, check_list = "all";
    std::string v_density_json = "{\"kind\":\"constant\",\"c\":1}";
    uint64_t v_seed = 1;
    verify_cmd->add_option("--net", net_file, "cluster JSON file")->required();
    verify_cmd->add_option("--density", v_density_json, "density spec JSON");
    verify_cmd->add_option("--certs", certs_file, "certificates JSON file");
    verify_cmd->add_option("--check", check_list,
                           "all | junctions,ball_length,crossing,island,isoperimetric,"
                           "regularity,local");
    verify_cmd->add_option("--seed", v_seed, "sampling seed");
    double v_angle_tol = 2.0;
    verify_cmd->add_option("--angle-tol", v_angle_tol, "junction angle gate in degrees");

    // ---- probe ----
    auto* probe_cmd = app.add_subcommand("probe", "growth / epsbeta / dini probes");
    probe_cmd->require_subcommand(1);
    auto* growth_cmd = probe_cmd->add_subcommand("growth", "eta-growth certificate");
    std::string g_density = "{\"kind\":\"constant\",\"c\":1}", g_window = "-1,-1,1,1";
    int g_centers = 24, g_nr = 10;
    double g_rmin = 0.02, g_rmax = 0.3;
    uint64_t g_seed = 1;
    growth_cmd->add_option("--density", g_density, "density spec JSON");
    growth_cmd->add_option("--window", g_window, "xmin,ymin,xmax,ymax");
    growth_cmd->add_option("--centers", g_centers, "number of seeded centers");
    growth_cmd->add_option("--rmin", g_rmin, "smallest probe radius");
    growth_cmd->add_option("--rmax", g_rmax, "largest probe radius");
    growth_cmd->add_option("--nr", g_nr, "radii on the geometric grid");
    growth_cmd->add_option("--seed", g_seed, "sampling seed");

    auto* epsbeta_cmd = probe_cmd->add_subcommand("epsbeta", "eps-beta witness");
    std::string e_net, e_density = "{\"kind\":\"constant\",\"c\":1}", e_center = "0,0";
    double e_rbeta = 0.0, e_tmin = 1e-5, e_tmax = 1e-2;
    int e_nt = 12;
    uint64_t e_seed = 1;
    epsbeta_cmd->add_option("--net", e_net, "converged cluster JSON")->required();
    epsbeta_cmd->add_option("--density", e_density, "density spec JSON");
    epsbeta_cmd->add_option("--center", e_center, "protected ball center x,y");
    epsbeta_cmd->add_option("--rbeta", e_rbeta, "protected ball radius");
    epsbeta_cmd->add_option("--tmin", e_tmin, "smallest |eps|");
    epsbeta_cmd->add_option("--tmax", e_tmax, "largest |eps|");
    epsbeta_cmd->add_option("--nt", e_nt, "grid size");
    epsbeta_cmd->add_option("--seed", e_seed, "seed");

    auto* dini_cmd = probe_cmd->add_subcommand("dini", "Dini summability verdict");
    std::string d_modulus = "t^0.5", d_variant = "dini";
    std::string d_density = "{\"kind\":\"gaussian\"}", d_window = "-2,-2,2,2";
    double d_t0 = 0.5, d_ratio = 2.0;
    int d_n = 48;
    uint64_t d_seed = 1;
    dini_cmd->add_option("--modulus", d_modulus,
                         "t^A | 1/log | t*log | h (sampled from --density)");
    dini_cmd->add_option("--variant", d_variant, "dini | half_dini");
    dini_cmd->add_option("--density", d_density, "density for --modulus h");
    dini_cmd->add_option("--window", d_window, "window for --modulus h");
    dini_cmd->add_option("--t0", d_t0, "grid start");
    dini_cmd->add_option("--ratio", d_ratio, "grid ratio C");
    dini_cmd->add_option("--n", d_n, "sample count");
    dini_cmd->add_option("--seed", d_seed, "seed");

    // ---- oracle ----
    auto* oracle_cmd = app.add_subcommand("oracle", "Steiner geometry queries");
    oracle_cmd->require_subcommand(1);
    auto* fermat_cmd = oracle_cmd->add_subcommand("fermat", "Fermat point of a triangle");
    std::string f_points = "0,0,1,0,0,1";
    fermat_cmd->add_option("--points", f_points, "ax,ay,bx,by,cx,cy");
    auto* ltheta_cmd = oracle_cmd->add_subcommand("ltheta", "tripod length ratio");
    double l_theta_arg = 0.0;
    int l_grid = 0;
    ltheta_cmd->add_option("--theta", l_theta_arg, "angle in [0, 2pi/3]");
    ltheta_cmd->add_option("--grid", l_grid, "print N grid values instead");

    // ---- render ----
    auto* render_cmd = app.add_subcommand("render", "SVG rendering of a net file");
    std::string r_net, r_out = "net.svg";
    double r_width = 800.0;
    render_cmd->add_option("--net", r_net, "cluster JSON file")->required();
    render_cmd->add_option("--out", r_out, "output SVG path");
    render_cmd->add_option("--width", r_width, "SVG width in px");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (solve_cmd->parsed()) {
            // Optional config file; explicit flags take precedence.
            if (!config_file.empty()) {
                std::ifstream f(config_file);
                if (!f) {
                    std::cerr << "cannot open config " << config_file << "\n";
                    return kExitUsage;
                }
                nlohmann::json j;
                f >> j;
                auto absent = [&](const char* flag) { return solve_cmd->count(flag) == 0; };
                if (j.contains("scenario") && absent("--scenario"))
                    scenario_name = j["scenario"].get<std::string>();
                if (j.contains("areas") && absent("--areas")) {
                    areas_csv.clear();
                    for (const auto& a : j["areas"])
                        areas_csv += (areas_csv.empty() ? "" : ",") +
                                     format_double(a.get<double>());
                }
                if (j.contains("density") && absent("--density"))
                    density_json = j["density"].dump();
                if (j.contains("seed") && absent("--seed"))
                    cfg.seed = j["seed"].get<uint64_t>();
                if (j.contains("max_iters") && absent("--max-iters"))
                    cfg.max_iters = j["max_iters"].get<int>();
                if (j.contains("grad_tol_rel") && absent("--grad-tol"))
                    cfg.grad_tol_rel = j["grad_tol_rel"].get<double>();
                if (j.contains("spacing") && absent("--spacing"))
                    cfg.target_spacing = j["spacing"].get<double>();
                if (j.contains("out") && absent("--out"))
                    out_dir = j["out"].get<std::string>();
            }
            Scenario scenario;
            scenario.name = scenario_name;
            scenario.custom_file = custom_file;
            scenario.seed = cfg.seed;
            if (!areas_csv.empty()) scenario.areas = parse_csv_doubles(areas_csv);
            else if (area_single > 0.0) scenario.areas = {area_single};
            if (!density_json.empty()) scenario.density = parse_density_spec(density_json);
            else scenario.density.kind.clear();
            return cmd_solve(command, scenario, cfg, out_dir, angle_tol, !no_probes,
                             !no_local, !no_svg);
        }

        if (verify_cmd->parsed()) {
            ClusterNet net = load_cluster_file(net_file);
            DensityField field = make_density(parse_density_spec(v_density_json));
            SolveConfig cfg2;
            cfg2.seed = v_seed;
            RunReport rep;
            rep.command = command;
            rep.scenario.name = "custom";
            rep.scenario.custom_file = net_file;
            rep.scenario.density = parse_density_spec(v_density_json);
            rep.scenario.areas = net.target_areas;
            rep.scenario.seed = v_seed;
            rep.config = cfg2;
            rep.threads = env_threads();
            rep.angle_tolerance_deg = v_angle_tol;
            rep.functionals = evaluate_functionals(net, field);

            bool all = check_list == "all";
            auto wants = [&](const std::string& what) {
                return all || check_list.find(what) != std::string::npos;
            };
            double ell = cfg2.spacing(net);
            double min_sep = net_min_separation(net);
            double r_max = std::isfinite(min_sep) ? min_sep / 8.0 : net.scale() / 10.0;

            GrowthCertificate growth;
            EpsBetaCertificate epsbeta;
            bool have_certs = false;
            if (!certs_file.empty()) {
                std::ifstream f(certs_file);
                if (!f) {
                    std::cerr << "cannot open certs " << certs_file << "\n";
                    return kExitUsage;
                }
                nlohmann::json j;
                f >> j;
                if (j.contains("growth") && !j["growth"].is_null()) {
                    growth.eta = j["growth"]["eta"].get<double>();
                    growth.c_vol = j["growth"]["c_vol"].get<double>();
                    growth.r_eta = j["growth"]["r_eta"].get<double>();
                    have_certs = true;
                }
                if (j.contains("epsbeta") && !j["epsbeta"].is_null()) {
                    epsbeta.beta = j["epsbeta"]["beta"].get<double>();
                    epsbeta.c_per = j["epsbeta"]["c_per"].get<double>();
                }
            }

            if (wants("junctions")) {
                rep.junctions = junction_report(net);
                rep.has_junctions = true;
            }
            if (wants("ball_length"))
                rep.predicates.push_back(ball_length_check(net, 12, r_max, v_seed));
            if (wants("crossing"))
                rep.predicates.push_back(
                    circle_crossing_check(net, 8, 14.0, r_max, v_seed + 1));
            if (wants("island"))
                rep.predicates.push_back(island_check(net, 4.0 * ell));
            if ((wants("isoperimetric") || wants("regularity")) && !have_certs && !all) {
                std::cerr << "MissingCertificate: --check "
                          << (wants("regularity") ? "regularity" : "isoperimetric")
                          << " needs --certs\n";
                return kExitUsage;
            }
            if ((wants("isoperimetric") || wants("regularity")) && have_certs) {
                rep.growth = growth;
                rep.has_growth = true;
                if (wants("isoperimetric"))
                    rep.predicates.push_back(isoperimetric_check(net, field, growth));
                if (wants("regularity")) {
                    rep.epsbeta = epsbeta;
                    rep.has_epsbeta = true;
                    rep.regularity =
                        regularity_report(net, field, growth, epsbeta, 4.0 * ell);
                    rep.has_regularity = true;
                }
            }
            if (wants("local"))
                rep.predicates.push_back(
                    local_optimality_probe(net, field, 6, cfg2, v_seed + 4));

            std::cout << report_json(rep) << "\n";
            return rep.all_hard_predicates_pass() ? kExitPass : kExitPredicateFail;
        }

        if (growth_cmd->parsed()) {
            DensityField field = make_density(parse_density_spec(g_density));
            auto w = parse_csv_doubles(g_window);
            if (w.size() != 4) {
                std::cerr << "--window needs xmin,ymin,xmax,ymax\n";
                return kExitUsage;
            }
            Rect window{w[0], w[1], w[2], w[3]};
            auto cert = growth_probe(field, window, g_centers,
                                     geometric_grid(g_rmin, g_rmax, g_nr), g_seed);
            std::cout << "{\"eta\":" << format_double(cert.eta)
                      << ",\"c_vol\":" << format_double(cert.c_vol)
                      << ",\"r_eta\":" << format_double(cert.r_eta)
                      << ",\"fit_residual\":" << format_double(cert.fit_residual)
                      << ",\"n_centers\":" << cert.n_centers << ",\"seed\":" << cert.seed
                      << "}\n";
            return kExitPass;
        }

        if (epsbeta_cmd->parsed()) {
            ClusterNet net = load_cluster_file(e_net);
            DensityField field = make_density(parse_density_spec(e_density));
            auto c = parse_csv_doubles(e_center);
            if (c.size() != 2) {
                std::cerr << "--center needs x,y\n";
                return kExitUsage;
            }
            SolveConfig cfg3;
            cfg3.seed = e_seed;
            double rb = e_rbeta > 0.0 ? e_rbeta : 0.15 * net.scale();
            auto cert = eps_beta_probe(net, field, {c[0], c[1]}, rb,
                                       geometric_grid(e_tmin, e_tmax, e_nt), cfg3, e_seed);
            std::cout << "{\"beta\":" << format_double(cert.beta)
                      << ",\"beta_fitted\":" << format_double(cert.beta_fitted)
                      << ",\"c_per\":" << format_double(cert.c_per)
                      << ",\"eps_bar\":" << format_double(cert.eps_bar)
                      << ",\"r_beta\":" << format_double(cert.r_beta)
                      << ",\"fit_residual\":" << format_double(cert.fit_residual)
                      << ",\"label\":\"" << cert.label << "\",\"cper_curve\":[";
            for (size_t k = 0; k < cert.cper_curve.size(); ++k) {
                if (k) std::cout << ",";
                std::cout << "[" << format_double(cert.cper_curve[k].first) << ","
                          << format_double(cert.cper_curve[k].second) << "]";
            }
            std::cout << "]}\n";
            return kExitPass;
        }

        if (dini_cmd->parsed()) {
            ModulusSamples samples;
            samples.ratio = d_ratio;
            if (d_modulus == "h") {
                DensityField field = make_density(parse_density_spec(d_density));
                auto w = parse_csv_doubles(d_window);
                if (w.size() != 4) {
                    std::cerr << "--window needs xmin,ymin,xmax,ymax\n";
                    return kExitUsage;
                }
                samples = sample_h_modulus(field, {w[0], w[1], w[2], w[3]}, d_t0, d_ratio,
                                           d_n, d_seed);
            } else {
                double t = d_t0;
                for (int k = 0; k < d_n; ++k) {
                    double phi;
                    if (d_modulus == "1/log") phi = 1.0 / std::log(1.0 / t);
                    else if (d_modulus == "t*log") phi = t * std::log(1.0 / t);
                    else if (d_modulus.rfind("t^", 0) == 0)
                        phi = std::pow(t, std::stod(d_modulus.substr(2)));
                    else {
                        std::cerr << "unknown modulus " << d_modulus << "\n";
                        return kExitUsage;
                    }
                    samples.t.push_back(t);
                    samples.phi.push_back(phi);
                    t /= d_ratio;
                }
            }
            DiniVariant variant =
                d_variant == "half_dini" ? DiniVariant::HalfDini : DiniVariant::Dini;
            auto res = dini_test(samples, variant);
            std::cout << "{\"verdict\":\"" << to_string(res.verdict)
                      << "\",\"partial_sum\":" << format_double(res.partial_sum)
                      << ",\"tail_exponent\":" << format_double(res.tail_exponent)
                      << ",\"power_residual\":" << format_double(res.power_residual)
                      << ",\"log_residual\":" << format_double(res.log_residual)
                      << ",\"variant\":\"" << d_variant << "\"}\n";
            return kExitPass;
        }

        if (fermat_cmd->parsed()) {
            auto p = parse_csv_doubles(f_points);
            if (p.size() != 6) {
                std::cerr << "--points needs ax,ay,bx,by,cx,cy\n";
                return kExitUsage;
            }
            Tripod t = fermat_point({p[0], p[1]}, {p[2], p[3]}, {p[4], p[5]});
            std::cout << "{\"fermat_point\":[" << format_double(t.fermat_point.x) << ","
                      << format_double(t.fermat_point.y)
                      << "],\"total_length\":" << format_double(t.total_euclidean_length)
                      << ",\"degenerate\":" << (t.degenerate ? "true" : "false") << "}\n";
            return kExitPass;
        }

        if (ltheta_cmd->parsed()) {
            if (l_grid > 1) {
                std::cout << "[";
                for (int k = 0; k < l_grid; ++k) {
                    double theta = (2.0 * M_PI / 3.0) * k / (l_grid - 1);
                    if (k) std::cout << ",";
                    std::cout << "[" << format_double(theta) << ","
                              << format_double(l_theta(theta)) << "]";
                }
                std::cout << "]\n";
            } else {
                std::cout << format_double(l_theta(l_theta_arg)) << "\n";
            }
            return kExitPass;
        }

        if (render_cmd->parsed()) {
            ClusterNet net = load_cluster_file(r_net);
            RenderStyle style;
            style.width_px = r_width;
            write_file(r_out, render_svg(net, style));
            return kExitPass;
        }
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const SchemaVersionError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidSpecError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const MissingCertificateError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolverFault;
    }
    return kExitUsage;
}
