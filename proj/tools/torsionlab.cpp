// torsionlab command-line front end: orbit pipelines, cone reports,
// epsilon-continuation scans, bundled-example reproduction, and CSV/JSON
// emission for offline plotting.
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure,
// 4 golden mismatch.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torsionlab/cone.hpp"
#include "torsionlab/io.hpp"
#include "torsionlab/maps.hpp"
#include "torsionlab/order.hpp"
#include "torsionlab/orbits.hpp"
#include "torsionlab/scan.hpp"
#include "torsionlab/spectral.hpp"
#include "torsionlab/twist.hpp"

namespace tl = torsionlab;

namespace {

void emit(const tl::json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out)
            throw tl::ValidationError(tl::ErrorCode::InvalidArgument,
                                      "cannot write " + out_path);
        out << j.dump(2) << "\n";
    }
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out)
            throw tl::ValidationError(tl::ErrorCode::InvalidArgument,
                                      "cannot write " + out_path);
        out << text;
    }
}

tl::PeriodicOrbit checked_orbit(const tl::MapDef& map, const tl::PeriodicOrbit& orbit) {
    if (tl::orbit_consistency_error(map, orbit) > 1e-8)
        throw tl::ValidationError(tl::ErrorCode::InvalidArgument,
                                  "orbit file is not an orbit of the given map");
    return orbit;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"periodic-orbit twist and order analysis for standard-like maps"};
    app.require_subcommand(1);

    std::string map_path, orbit_path, minimizer_path, out_path, scan_id = "branch";
    std::vector<double> seed;
    int grid_n = 4096, p = 0, q = 1, line_index = -1, samples = 256;
    int iterations = 100, oracle_n = 0, example_n = 1, scan_steps = 50;
    double y_min = 0.0, y_max = 1.0, eps_min = 0.0, eps_max = 1.0;
    int surface_n = 0;
    bool minimizing = false, allow_gcd = false, want_naive = false;

    // cone
    auto* cone = app.add_subcommand("cone", "folding regions and USF/TSF class");
    cone->add_option("--map", map_path, "map definition JSON")->required();
    cone->add_option("--grid", grid_n, "samples per period");
    cone->add_flag("--surface", "emit a (x, y, delta) CSV grid instead");
    double sxmin = -0.5, sxmax = 0.5, symin = -1.0, symax = 1.0;
    cone->add_option("--xmin", sxmin);
    cone->add_option("--xmax", sxmax);
    cone->add_option("--ymin", symin);
    cone->add_option("--ymax", symax);
    cone->add_option("--n", surface_n, "surface grid points per axis");
    cone->add_option("--out", out_path);

    // orbit find / iterate
    auto* orbit_cmd = app.add_subcommand("orbit", "find or iterate orbits");
    orbit_cmd->require_subcommand(1);
    auto* find = orbit_cmd->add_subcommand("find", "locate a (p,q)-orbit");
    find->add_option("--map", map_path)->required();
    find->add_option("-p", p)->required();
    find->add_option("-q", q)->required();
    find->add_option("--line", line_index, "symmetry line 0..3 for a seed scan");
    find->add_option("--ymin", y_min);
    find->add_option("--ymax", y_max);
    find->add_option("--samples", samples);
    find->add_option("--seed", seed, "x0,y0 phase-point seed")->delimiter(',');
    find->add_flag("--minimizing", minimizing, "search for the minimizing orbit");
    find->add_flag("--allow-gcd", allow_gcd, "permit gcd(p,q) > 1 (doubled orbits)");
    find->add_option("--out", out_path);

    auto* iterate = orbit_cmd->add_subcommand("iterate", "emit iterates as CSV");
    iterate->add_option("--map", map_path)->required();
    iterate->add_option("--seed", seed)->delimiter(',')->required();
    iterate->add_option("-n", iterations, "number of steps");
    iterate->add_option("--out", out_path);

    // spectral
    auto* spectral = app.add_subcommand("spectral", "Hessian spectra and indices");
    spectral->add_option("--map", map_path)->required();
    spectral->add_option("--orbit", orbit_path)->required();
    spectral->add_option("--out", out_path);

    // twist
    auto* twist = app.add_subcommand("twist", "twist-number classification");
    twist->add_option("--map", map_path)->required();
    twist->add_option("--orbit", orbit_path)->required();
    twist->add_option("--oracle", oracle_n, "winding oracle periods");
    twist->add_flag("--naive", want_naive, "include the sign-change interval");
    twist->add_option("--out", out_path);

    // order
    auto* order = app.add_subcommand("order", "Birkhoff / Aubry order report");
    order->add_option("--map", map_path)->required();
    order->add_option("--orbit", orbit_path)->required();
    order->add_option("--minimizer", minimizer_path, "minimizer orbit JSON");
    order->add_option("--out", out_path);

    // scan
    auto* scan = app.add_subcommand("scan", "epsilon continuation of a branch");
    scan->add_option("--map", map_path)->required();
    scan->add_option("-p", p)->required();
    scan->add_option("-q", q)->required();
    scan->add_option("--emin", eps_min)->required();
    scan->add_option("--emax", eps_max)->required();
    scan->add_option("--steps", scan_steps);
    scan->add_option("--seed", seed, "x0,y0 seed at emin")->delimiter(',');
    scan->add_option("--seed-orbit", minimizer_path, "orbit JSON seed at emin");
    scan->add_option("--id", scan_id);
    scan->add_flag("--allow-gcd", allow_gcd);
    scan->add_option("--out", out_path);

    // example
    auto* example = app.add_subcommand("example", "reproduce a bundled example");
    example->add_option("n", example_n, "example number 1..5")->required();
    example->add_option("--out", out_path);

    // portrait
    auto* portrait = app.add_subcommand("portrait", "phase-portrait CSV");
    portrait->add_option("--map", map_path)->required();
    portrait->add_option("--seed", seed, "x,y[,x,y...] seeds")->delimiter(',');
    portrait->add_option("--iterations", iterations);
    portrait->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cone->parsed()) {
            const tl::MapDef map = tl::load_map(map_path);
            if (cone->count("--surface")) {
                if (surface_n < 2)
                    throw tl::ValidationError(tl::ErrorCode::InvalidArgument,
                                              "--surface requires --n >= 2");
                std::string csv = "x,y,delta\n";
                for (int i = 0; i < surface_n; ++i) {
                    const double y = symin + (symax - symin) * i / (surface_n - 1);
                    for (int j = 0; j < surface_n; ++j) {
                        const double x = sxmin + (sxmax - sxmin) * j / (surface_n - 1);
                        csv += tl::csv_num(x) + "," + tl::csv_num(y) + "," +
                               tl::csv_num(tl::delta(map, {x, y})) + "\n";
                    }
                }
                emit_text(csv, out_path);
            } else {
                emit(tl::cone_report_to_json(tl::classify_sf(map, grid_n)), out_path);
            }
        } else if (find->parsed()) {
            const tl::MapDef map = tl::load_map(map_path);
            tl::NewtonOptions opts;
            opts.allow_gcd = allow_gcd;
            if (minimizing) {
                emit(tl::orbit_to_json(tl::minimizing_orbit(map, p, q)), out_path);
            } else if (find->count("--line")) {
                const auto found = tl::symmetric_seed_scan(map, p, q, line_index, y_min,
                                                           y_max, samples, opts);
                tl::json arr = tl::json::array();
                for (const auto& o : found) arr.push_back(tl::orbit_to_json(o));
                emit(arr, out_path);
            } else if (seed.size() == 2) {
                auto zs = tl::iterate_orbit(map, {seed[0], seed[1]}, q);
                std::vector<double> config(q);
                for (int i = 0; i < q; ++i) config[i] = zs[i].x;
                emit(tl::orbit_to_json(tl::newton_refine(map, p, q, config, opts)),
                     out_path);
            } else {
                throw tl::ValidationError(tl::ErrorCode::InvalidArgument,
                                          "orbit find needs --seed, --line, or --minimizing");
            }
        } else if (iterate->parsed()) {
            const tl::MapDef map = tl::load_map(map_path);
            if (seed.size() != 2 || iterations < 1)
                throw tl::ValidationError(tl::ErrorCode::InvalidArgument,
                                          "orbit iterate needs --seed x,y and -n >= 1");
            std::string csv = "n,x,y\n";
            const auto zs = tl::iterate_orbit(map, {seed[0], seed[1]}, iterations);
            for (std::size_t i = 0; i < zs.size(); ++i)
                csv += std::to_string(i) + "," + tl::csv_num(tl::wrap_half(zs[i].x)) +
                       "," + tl::csv_num(zs[i].y) + "\n";
            emit_text(csv, out_path);
        } else if (spectral->parsed()) {
            const tl::MapDef map = tl::load_map(map_path);
            const auto orbit = checked_orbit(map, tl::load_orbit(orbit_path));
            emit(tl::spectral_to_json(map, orbit), out_path);
        } else if (twist->parsed()) {
            const tl::MapDef map = tl::load_map(map_path);
            const auto orbit = checked_orbit(map, tl::load_orbit(orbit_path));
            tl::TwistReport rep = tl::classify_twist(map, orbit);
            if (oracle_n > 0) rep.winding = tl::winding_estimate(map, orbit, oracle_n);
            if (want_naive) rep.naive = tl::naive_interval(map, orbit);
            emit(tl::twist_report_to_json(rep), out_path);
        } else if (order->parsed()) {
            const tl::MapDef map = tl::load_map(map_path);
            const auto orbit = checked_orbit(map, tl::load_orbit(orbit_path));
            tl::OrderReport rep = tl::cyclic_order_test(orbit);
            if (!minimizer_path.empty()) {
                const auto min_orbit = checked_orbit(map, tl::load_orbit(minimizer_path));
                rep.crossings_vs_minimizer = tl::aubry_crossings(orbit, min_orbit);
                rep.points_in_gap = tl::gap_count(orbit, min_orbit);
            }
            emit(tl::order_report_to_json(rep), out_path);
        } else if (scan->parsed()) {
            const tl::MapDef family = tl::load_map(map_path);
            if (scan_steps < 2 || !(eps_max > eps_min))
                throw tl::ValidationError(tl::ErrorCode::InvalidArgument,
                                          "scan needs --steps >= 2 and emax > emin");
            std::vector<double> grid(scan_steps);
            for (int i = 0; i < scan_steps; ++i)
                grid[i] = eps_min + (eps_max - eps_min) * i / (scan_steps - 1);
            std::vector<double> config;
            if (seed.size() == 2) {
                auto zs = tl::iterate_orbit(family.with_epsilon(eps_min),
                                            {seed[0], seed[1]}, q);
                config.resize(q);
                for (int i = 0; i < q; ++i) config[i] = zs[i].x;
            } else if (!minimizer_path.empty()) {
                config = tl::load_orbit(minimizer_path).config;
            } else {
                throw tl::ValidationError(tl::ErrorCode::InvalidArgument,
                                          "scan needs --seed or --seed-orbit");
            }
            tl::NewtonOptions opts;
            opts.allow_gcd = allow_gcd;
            emit(tl::scan_result_to_json(
                     tl::scan_epsilon(family, p, q, config, grid, scan_id, 1e-6, opts)),
                 out_path);
        } else if (example->parsed()) {
            const tl::ExampleReport rep = tl::run_example(example_n);
            tl::json j{{"example", rep.n}, {"pass", rep.pass}, {"detail", rep.detail}};
            tl::json fails = tl::json::array();
            for (const auto& f : rep.failures)
                fails.push_back({{"orbit", f.orbit_id},
                                 {"field", f.field},
                                 {"expected", f.expected},
                                 {"got", f.got},
                                 {"tol", f.tol}});
            j["failures"] = fails;
            emit(j, out_path);
            if (!rep.pass) return 4;
        } else if (portrait->parsed()) {
            const tl::MapDef map = tl::load_map(map_path);
            if (seed.size() % 2 != 0)
                throw tl::ValidationError(tl::ErrorCode::InvalidArgument,
                                          "portrait seeds come in x,y pairs");
            std::vector<tl::PhasePoint> seeds;
            for (std::size_t i = 0; i + 1 < seed.size(); i += 2)
                seeds.push_back({seed[i], seed[i + 1]});
            std::string csv = "seed_id,n,x,y\n";
            for (const auto& row : tl::phase_portrait(map, seeds, iterations))
                csv += std::to_string(row.seed_id) + "," + std::to_string(row.n) + "," +
                       tl::csv_num(row.x) + "," + tl::csv_num(row.y) + "\n";
            emit_text(csv, out_path);
        }
    } catch (const tl::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const tl::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
