// Parameter continuation: follows a (p,q)-orbit branch along an epsilon
// grid, classifies every row, and refines the epsilon values where the
// monodromy trace crosses +2 or -2 (bifurcation thresholds).  Also the
// phase-portrait row generator and a seeding helper for period-doubled
// orbits.
#ifndef TORSIONLAB_SCAN_HPP
#define TORSIONLAB_SCAN_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "torsionlab/cone.hpp"
#include "torsionlab/core.hpp"
#include "torsionlab/maps.hpp"
#include "torsionlab/order.hpp"
#include "torsionlab/orbits.hpp"
#include "torsionlab/twist.hpp"

namespace torsionlab {

struct ScanRow {
    double epsilon = 0.0;
    std::string orbit_id;
    double trace = 0.0;
    double residue = 0.0;
    TwistValue twist;
    DynType dyn_type = DynType::Elliptic;
    bool birkhoff = true;
    double delta_min = 0.0;  // min of the 1-cone function over the orbit
    bool continuation_lost = false;
    std::vector<double> config;
};

struct ThresholdEvent {
    double epsilon = 0.0;
    double trace_level = 0.0;  // +2 or -2
};

struct ScanResult {
    std::vector<ScanRow> rows;
    std::vector<ThresholdEvent> thresholds;
};

/// Continues the seed orbit across the epsilon grid by Newton, seeded from
/// the previous row.  A failed continuation ends the branch with a
/// CONTINUATION_LOST row.  Trace crossings of +-2 between consecutive rows
/// are bisection-refined in epsilon to eps_tol.
inline ScanResult scan_epsilon(const MapDef& family, int p, int q,
                               const std::vector<double>& seed_config,
                               const std::vector<double>& eps_grid,
                               const std::string& orbit_id = "branch",
                               double eps_tol = 1e-6,
                               const NewtonOptions& opts = {}) {
    if (eps_grid.size() < 2)
        throw ValidationError(ErrorCode::InvalidArgument, "grid needs >= 2 points");
    for (std::size_t i = 1; i < eps_grid.size(); ++i)
        if (!(eps_grid[i] > eps_grid[i - 1]))
            throw ValidationError(ErrorCode::InvalidArgument, "grid must be increasing");

    auto refine_at = [&](double eps, const std::vector<double>& from) {
        return newton_refine(family.with_epsilon(eps), p, q, from, opts);
    };

    ScanResult result;
    std::vector<double> config = seed_config;
    try {
        refine_at(eps_grid.front(), config);
    } catch (const NumericalError& e) {
        throw ValidationError(ErrorCode::SeedInvalid,
                              std::string("seed orbit invalid at the first grid point: ") +
                                  e.what());
    }

    for (double eps : eps_grid) {
        const MapDef map = family.with_epsilon(eps);
        ScanRow row;
        row.epsilon = eps;
        row.orbit_id = orbit_id;
        PeriodicOrbit orbit;
        try {
            orbit = refine_at(eps, config);
        } catch (const NumericalError&) {
            row.continuation_lost = true;
            result.rows.push_back(std::move(row));
            break;
        }
        config = orbit.config;
        const TwistReport tw = classify_twist(map, orbit);
        row.trace = tw.trace;
        row.residue = tw.residue;
        row.twist = tw.twist;
        row.dyn_type = tw.dyn_type;
        row.birkhoff = cyclic_order_test(orbit).birkhoff;
        row.delta_min = delta_profile(map, orbit.config[0]);
        for (double x : orbit.config)
            row.delta_min = std::min(row.delta_min, delta_profile(map, x));
        row.config = orbit.config;
        result.rows.push_back(std::move(row));
    }

    // Bisect the trace level crossings between consecutive converged rows.
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
        const ScanRow& a = result.rows[i - 1];
        const ScanRow& b = result.rows[i];
        if (a.continuation_lost || b.continuation_lost) continue;
        for (double level : {2.0, -2.0}) {
            if ((a.trace - level) * (b.trace - level) >= 0.0) continue;
            double lo = a.epsilon, hi = b.epsilon;
            std::vector<double> cfg = a.config;
            double flo = a.trace - level;
            while (hi - lo > eps_tol) {
                const double mid = 0.5 * (lo + hi);
                PeriodicOrbit orbit;
                try {
                    orbit = refine_at(mid, cfg);
                } catch (const NumericalError&) {
                    break;
                }
                cfg = orbit.config;
                const double fm =
                    residue_and_trace(family.with_epsilon(mid), orbit).trace - level;
                if (flo * fm <= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            result.thresholds.push_back({0.5 * (lo + hi), level});
        }
    }
    std::sort(result.thresholds.begin(), result.thresholds.end(),
              [](const ThresholdEvent& u, const ThresholdEvent& v) {
                  return u.epsilon < v.epsilon;
              });
    return result;
}

/// Seed for the period-doubled orbit near a doubling threshold: the doubled
/// configuration displaced along the near-kernel eigenvector of H_{2q}.
/// Returns the refined (2p, 2q)-orbit; throws NotFound if every displacement
/// collapses back onto the doubled base orbit.
inline PeriodicOrbit doubled_orbit(const MapDef& map, const PeriodicOrbit& base) {
    const int q2 = 2 * base.q;
    std::vector<double> doubled(q2);
    for (int i = 0; i < q2; ++i)
        doubled[i] = base.config[i % base.q] + base.p * (i / base.q);

    const Eigen::MatrixXd h = hessian_config(map, doubled, 2 * base.p).dense();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success)
        throw NumericalError(ErrorCode::IllConditioned, "eigensolver failed");
    int kmin = 0;
    for (int i = 1; i < q2; ++i)
        if (std::abs(solver.eigenvalues()[i]) < std::abs(solver.eigenvalues()[kmin]))
            kmin = i;
    const Eigen::VectorXd kernel = solver.eigenvectors().col(kmin);

    NewtonOptions opts;
    opts.allow_gcd = true;
    PeriodicOrbit doubled_base = make_orbit(map, 2 * base.p, q2, doubled);
    for (double s : {1e-2, -1e-2, 5e-2, -5e-2, 2e-1, -2e-1}) {
        std::vector<double> seed(q2);
        for (int i = 0; i < q2; ++i) seed[i] = doubled[i] + s * kernel[i];
        PeriodicOrbit orbit;
        try {
            orbit = newton_refine(map, 2 * base.p, q2, std::move(seed), opts);
        } catch (const NumericalError&) {
            continue;
        }
        if (orbit.closure_residual > 1e-10) continue;
        if (orbits_equivalent(orbit, doubled_base)) continue;
        return orbit;
    }
    throw NumericalError(ErrorCode::NotFound,
                         "no genuinely doubled orbit found near the base orbit");
}

struct PortraitRow {
    int seed_id = 0;
    int n = 0;
    double x = 0.0;  // in [-0.5, 0.5)
    double y = 0.0;
};

/// Orbit samples for phase portraits: rows (seed, n, x mod 1, y) including
/// the seed itself as n = 0.
inline std::vector<PortraitRow> phase_portrait(const MapDef& map,
                                               const std::vector<PhasePoint>& seeds,
                                               int iterations) {
    if (iterations < 1)
        throw ValidationError(ErrorCode::InvalidArgument, "iterations must be >= 1");
    std::vector<PortraitRow> rows;
    rows.reserve(seeds.size() * (iterations + 1));
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        PhasePoint z = seeds[s];
        for (int n = 0; n <= iterations; ++n) {
            rows.push_back({static_cast<int>(s), n, wrap_half(z.x), z.y});
            z = lift_step(map, z);
        }
    }
    return rows;
}

}  // namespace torsionlab

#endif  // TORSIONLAB_SCAN_HPP
