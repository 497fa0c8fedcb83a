// JSON schemas for the CLI surface (map definitions, orbits, reports) and
// the bundled example fixtures with their golden-value comparison.
#ifndef TORSIONLAB_IO_HPP
#define TORSIONLAB_IO_HPP

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "torsionlab/cone.hpp"
#include "torsionlab/core.hpp"
#include "torsionlab/maps.hpp"
#include "torsionlab/order.hpp"
#include "torsionlab/orbits.hpp"
#include "torsionlab/scan.hpp"
#include "torsionlab/spectral.hpp"
#include "torsionlab/twist.hpp"

namespace torsionlab {

using json = nlohmann::json;

// ---- map definition: {"preset": .., "gamma": [..], "epsilon": .., "rational_a": ..}

inline MapDef map_from_json(const json& j) {
    if (!j.is_object())
        throw ValidationError(ErrorCode::InvalidArgument, "map definition must be an object");
    const double eps = j.value("epsilon", 0.0);
    MapDef m;
    if (j.contains("preset") && !j["preset"].is_null()) {
        const std::string preset = j["preset"].get<std::string>();
        if (preset == "standard") m = MapDef::standard(eps);
        else if (preset == "three-harmonic") m = MapDef::three_harmonic(eps);
        else if (preset == "rational-harmonic") {
            if (!j.contains("rational_a") || j["rational_a"].is_null())
                throw ValidationError(ErrorCode::InvalidArgument,
                                      "rational-harmonic preset requires rational_a");
            m = MapDef::rational_harmonic(eps, j["rational_a"].get<double>());
        } else {
            throw ValidationError(ErrorCode::InvalidArgument, "unknown preset: " + preset);
        }
        return m;
    }
    if (j.contains("rational_a") && !j["rational_a"].is_null()) {
        m = MapDef::rational_harmonic(eps, j["rational_a"].get<double>());
        return m;
    }
    if (!j.contains("gamma") || !j["gamma"].is_array() || j["gamma"].empty())
        throw ValidationError(ErrorCode::InvalidArgument,
                              "map definition needs a preset or a gamma array");
    m.gamma = j["gamma"].get<std::vector<double>>();
    m.epsilon = eps;
    m.name = j.value("name", std::string{});
    m.validate();
    return m;
}

inline json map_to_json(const MapDef& m) {
    json j;
    j["preset"] = m.name.empty() ? json(nullptr) : json(m.name);
    j["gamma"] = m.gamma;
    j["epsilon"] = m.epsilon;
    j["rational_a"] = m.rational_a ? json(*m.rational_a) : json(nullptr);
    return j;
}

inline MapDef load_map(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError(ErrorCode::InvalidArgument, "cannot open map file: " + path);
    json j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    return map_from_json(j);
}

// ---- orbit: {p, q, config[], points[][], residual}

inline json orbit_to_json(const PeriodicOrbit& o) {
    json pts = json::array();
    for (const auto& z : o.points) pts.push_back({z.x, z.y});
    return json{{"p", o.p},
                {"q", o.q},
                {"config", o.config},
                {"points", pts},
                {"residual", o.closure_residual}};
}

inline PeriodicOrbit orbit_from_json(const json& j) {
    PeriodicOrbit o;
    o.p = j.at("p").get<int>();
    o.q = j.at("q").get<int>();
    o.config = j.at("config").get<std::vector<double>>();
    for (const auto& pt : j.at("points"))
        o.points.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
    o.closure_residual = j.value("residual", 0.0);
    if (o.q < 1 || static_cast<int>(o.config.size()) != o.q ||
        static_cast<int>(o.points.size()) != o.q)
        throw ValidationError(ErrorCode::InvalidArgument,
                              "orbit file has inconsistent sizes");
    o.least_period = o.q;
    return o;
}

inline PeriodicOrbit load_orbit(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError(ErrorCode::InvalidArgument, "cannot open orbit file: " + path);
    json j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    return orbit_from_json(j);
}

// ---- reports

inline json twist_value_to_json(const TwistValue& t) {
    if (t.is_exact) return json{{"exact", t.value}};
    return json{{"interval", {t.lo, t.hi}}};
}

inline json twist_report_to_json(const TwistReport& r) {
    json j{{"dyn_type", to_string(r.dyn_type)},
           {"morse_I", r.morse_I},
           {"morse_Iprime", r.morse_Iprime},
           {"twist", twist_value_to_json(r.twist)},
           {"degenerate", r.degenerate},
           {"trace", r.trace},
           {"residue", r.residue}};
    if (r.winding) j["winding_estimate"] = *r.winding;
    if (r.naive) j["naive_interval"] = {r.naive->first, r.naive->second};
    return j;
}

inline json cone_report_to_json(const ConeReport& r) {
    auto intervals = [](const std::vector<XInterval>& v) {
        json a = json::array();
        for (const auto& iv : v)
            a.push_back({{"lo", iv.lo}, {"hi", iv.hi}, {"degenerate", iv.degenerate}});
        return a;
    };
    std::string cls = to_string(r.classification);
    if (r.classification == SFClass::MULTI)
        cls += "(" + std::to_string(r.component_count) + ")";
    json lines = json::array();
    if (r.includes_gamma0) lines.push_back("Gamma0");
    if (r.includes_gamma0p) lines.push_back("Gamma0p");
    return json{{"epsilon_prime", r.epsilon_prime},
                {"epsilon_star", r.epsilon_star},
                {"folding_intervals", intervals(r.folding_intervals)},
                {"strong_folding_intervals", intervals(r.strong_folding_intervals)},
                {"classification", cls},
                {"lines_included", lines},
                {"has_degenerate", r.has_degenerate}};
}

inline json order_report_to_json(const OrderReport& r) {
    json j{{"birkhoff", r.birkhoff}};
    if (r.violating_pair)
        j["violating_pair"] = {r.violating_pair->first, r.violating_pair->second};
    if (r.crossings_vs_minimizer) j["crossings_vs_minimizer"] = *r.crossings_vs_minimizer;
    if (r.points_in_gap) j["points_in_gap"] = *r.points_in_gap;
    return j;
}

inline json spectral_to_json(const MapDef& map, const PeriodicOrbit& orbit) {
    const PeriodicJacobiMatrix h = hessian_config(map, orbit);
    const auto eig = eigenvalues_sym(h);
    const auto eigm = eigenvalues_sym(companion_minus(h));
    const MorseIndex mi = morse_index(eig);
    const MorseIndex mip = morse_index(eigm);
    return json{{"alpha", h.alpha},          {"beta", h.beta},
                {"eig_H", eig},              {"eig_Hminus", eigm},
                {"morse_I", mi.index},       {"morse_Iprime", mip.index},
                {"has_zero", mi.has_zero}};
}

inline json scan_result_to_json(const ScanResult& s) {
    json rows = json::array();
    for (const auto& r : s.rows) {
        json j{{"epsilon", r.epsilon},
               {"orbit_id", r.orbit_id},
               {"continuation_lost", r.continuation_lost}};
        if (!r.continuation_lost) {
            j["trace"] = r.trace;
            j["residue"] = r.residue;
            j["twist"] = twist_value_to_json(r.twist);
            j["dyn_type"] = to_string(r.dyn_type);
            j["birkhoff"] = r.birkhoff;
            j["delta_min"] = r.delta_min;
        }
        rows.push_back(std::move(j));
    }
    json thresholds = json::array();
    for (const auto& t : s.thresholds)
        thresholds.push_back({{"epsilon", t.epsilon}, {"trace_level", t.trace_level}});
    return json{{"rows", rows}, {"thresholds", thresholds}};
}

// ---- bundled example fixtures

inline std::string fixtures_path() {
    if (const char* env = std::getenv("TORSIONLAB_FIXTURES")) return env;
#ifdef TORSIONLAB_FIXTURES_DEFAULT
    return TORSIONLAB_FIXTURES_DEFAULT;
#else
    return "fixtures/examples.json";
#endif
}

struct GoldenTolerances {
    double residue = 1e-8;
    double eig = 1e-8;
    double act = 1e-9;
};

struct FieldDiff {
    std::string orbit_id;
    std::string field;
    double expected = 0.0;
    double got = 0.0;
    double tol = 0.0;
};

struct ExampleReport {
    int n = 0;
    bool pass = true;
    std::vector<FieldDiff> failures;
    json detail;  // per-orbit computed values
};

/// Runs bundled example n end to end (refine, spectra, twist, order, action)
/// and diffs every expected value recorded in the fixtures file.
inline ExampleReport run_example(int n, const std::string& path = fixtures_path(),
                                 const GoldenTolerances& tol = {}) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError(ErrorCode::InvalidArgument,
                              "cannot open fixtures file: " + path);
    json all = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    const json* ex = nullptr;
    for (const auto& e : all.at("examples"))
        if (e.at("n").get<int>() == n) ex = &e;
    if (!ex)
        throw ValidationError(ErrorCode::InvalidArgument,
                              "no bundled example " + std::to_string(n));

    const MapDef map = map_from_json(ex->at("map"));
    const int p = ex->at("p").get<int>();
    const int q = ex->at("q").get<int>();

    ExampleReport report;
    report.n = n;
    auto check = [&](const std::string& id, const std::string& field, double expected,
                     double got, double tolerance) {
        if (!(std::abs(expected - got) <= tolerance)) {
            report.pass = false;
            report.failures.push_back({id, field, expected, got, tolerance});
        }
    };

    // First pass: refine all orbits (the minimizer is needed for gap counts).
    std::vector<PeriodicOrbit> orbits;
    std::vector<json> specs;
    const PeriodicOrbit* minimizer = nullptr;
    for (const auto& spec : ex->at("orbits")) {
        const double sx = spec.at("seed").at(0).get<double>();
        const double sy = spec.at("seed").at(1).get<double>();
        auto zs = iterate_orbit(map, {sx, sy}, q);
        std::vector<double> config(q);
        for (int i = 0; i < q; ++i) config[i] = zs[i].x;
        orbits.push_back(newton_refine(map, p, q, std::move(config)));
        specs.push_back(spec);
    }
    for (std::size_t i = 0; i < specs.size(); ++i)
        if (specs[i].value("role", std::string{}) == "minimizer") minimizer = &orbits[i];

    json detail = json::array();
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const json& spec = specs[i];
        const PeriodicOrbit& orbit = orbits[i];
        const std::string id = spec.value("id", "orbit" + std::to_string(i));
        const json expect = spec.value("expect", json::object());

        const TwistReport tw = classify_twist(map, orbit);
        const OrderReport ord = cyclic_order_test(orbit);
        const double w = action(map, orbit);
        const auto eig = eigenvalues_sym(hessian_config(map, orbit));

        json d{{"id", id},
               {"orbit", orbit_to_json(orbit)},
               {"twist", twist_report_to_json(tw)},
               {"birkhoff", ord.birkhoff},
               {"action", w},
               {"eig_H", eig}};

        if (expect.contains("residue"))
            check(id, "residue", expect["residue"].get<double>(), tw.residue, tol.residue);
        if (expect.contains("morse_I"))
            check(id, "morse_I", expect["morse_I"].get<int>(), tw.morse_I, 0.0);
        if (expect.contains("dyn_type") &&
            expect["dyn_type"].get<std::string>() != to_string(tw.dyn_type)) {
            report.pass = false;
            report.failures.push_back({id, "dyn_type", 0.0, 0.0, 0.0});
        }
        if (expect.contains("twist")) {
            TwistValue want;
            if (expect["twist"].contains("exact"))
                want = TwistValue::exact(expect["twist"]["exact"].get<double>());
            else
                want = TwistValue::interval(expect["twist"]["interval"].at(0).get<double>(),
                                            expect["twist"]["interval"].at(1).get<double>());
            if (!tw.twist.same_as(want)) {
                report.pass = false;
                report.failures.push_back({id, "twist", 0.0, 0.0, 0.0});
            }
        }
        if (expect.contains("birkhoff") &&
            expect["birkhoff"].get<bool>() != ord.birkhoff) {
            report.pass = false;
            report.failures.push_back(
                {id, "birkhoff", expect["birkhoff"].get<bool>() ? 1.0 : 0.0,
                 ord.birkhoff ? 1.0 : 0.0, 0.0});
        }
        if (expect.contains("eig_H")) {
            const auto want = expect["eig_H"].get<std::vector<double>>();
            for (std::size_t k = 0; k < want.size() && k < eig.size(); ++k)
                check(id, "eig_H[" + std::to_string(k) + "]", want[k], eig[k], tol.eig);
        }
        if (expect.contains("action"))
            check(id, "action", expect["action"].get<double>(), w, tol.act);
        if (expect.contains("gap_count")) {
            if (!minimizer) {
                report.pass = false;
                report.failures.push_back({id, "gap_count(no minimizer)", 0, 0, 0});
            } else {
                check(id, "gap_count", expect["gap_count"].get<int>(),
                      gap_count(orbit, *minimizer), 0.0);
            }
        }
        detail.push_back(std::move(d));
    }
    report.detail = std::move(detail);
    return report;
}

/// 17-significant-digit formatting used by all CSV emitters.
inline std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace torsionlab

#endif  // TORSIONLAB_IO_HPP
