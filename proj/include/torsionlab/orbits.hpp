// (p,q)-periodic orbits: Newton refinement on the variational gradient,
// symmetry-line seeded searches, minimizing-orbit search, action and
// residue evaluation.
//
// A (p,q)-orbit is represented both by its configuration x_0..x_{q-1}
// (lift abscissas, x_q = x_0 + p) and by its phase points, related through
// y_i = -h1(x_i, x_{i+1}).
#ifndef TORSIONLAB_ORBITS_HPP
#define TORSIONLAB_ORBITS_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "torsionlab/core.hpp"
#include "torsionlab/maps.hpp"
#include "torsionlab/spectral.hpp"

namespace torsionlab {

struct PeriodicOrbit {
    int p = 0;
    int q = 1;
    std::vector<double> config;      // x_0 .. x_{q-1}
    std::vector<PhasePoint> points;  // (x_i, y_i)
    double closure_residual = 0.0;
    int least_period = 0;  // < q when the orbit closes early (gcd(p,q) > 1 seeds)
};

/// Gradient of the (p,q)-action at a configuration:
/// grad_i = h2(x_{i-1}, x_i) + h1(x_i, x_{i+1}), indices lifted cyclically.
inline std::vector<double> variational_gradient(const MapDef& map,
                                                const std::vector<double>& config, int p) {
    const int q = static_cast<int>(config.size());
    std::vector<double> g(q);
    for (int i = 0; i < q; ++i) {
        const double xp = (i > 0) ? config[i - 1] : config[q - 1] - p;
        const double xn = (i + 1 < q) ? config[i + 1] : config[0] + p;
        g[i] = gen_h2(map, xp, config[i]) + gen_h1(map, config[i], xn);
    }
    return g;
}

namespace detail {

inline double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline int detect_least_period(const std::vector<double>& config, int p) {
    const int q = static_cast<int>(config.size());
    for (int d = 1; d < q; ++d) {
        if (q % d != 0) continue;
        const int reps = q / d;
        if ((static_cast<long long>(p) * d) % q != 0) continue;
        const double shift = static_cast<double>(p) * d / q;
        bool closes = true;
        for (int i = 0; i + d < q && closes; ++i)
            closes = std::abs(config[i + d] - config[i] - shift) < 1e-9;
        if (closes && reps > 1) return d;
    }
    return q;
}

}  // namespace detail

/// Builds the orbit carried by a configuration: phase points via the
/// critical-sequence correspondence and the honest closure defect of F^q.
inline PeriodicOrbit make_orbit(const MapDef& map, int p, int q,
                                std::vector<double> config) {
    if (q < 1 || static_cast<int>(config.size()) != q)
        throw ValidationError(ErrorCode::InvalidArgument, "config size must equal q");
    PeriodicOrbit o;
    o.p = p;
    o.q = q;
    o.config = std::move(config);
    o.points.resize(q);
    for (int i = 0; i < q; ++i) {
        const double xn = (i + 1 < q) ? o.config[i + 1] : o.config[0] + p;
        o.points[i] = {o.config[i], -gen_h1(map, o.config[i], xn)};
    }
    const PhasePoint closed = lift_step(map, o.points[q - 1]);
    o.closure_residual = std::max(std::abs(closed.x - (o.config[0] + p)),
                                  std::abs(closed.y - o.points[0].y));
    o.least_period = detail::detect_least_period(o.config, p);
    return o;
}

/// z_0 .. z_q under the lift (q+1 points, no normalization).
inline std::vector<PhasePoint> iterate_orbit(const MapDef& map, PhasePoint z0, int q) {
    if (q < 1)
        throw ValidationError(ErrorCode::InvalidArgument, "iteration count must be >= 1");
    std::vector<PhasePoint> zs(q + 1);
    zs[0] = z0;
    for (int i = 0; i < q; ++i) zs[i + 1] = lift_step(map, zs[i]);
    return zs;
}

struct NewtonOptions {
    int max_iter = 50;
    double grad_tol = 1e-12;
    int max_halvings = 8;
    bool allow_gcd = false;  // permit gcd(p,q) > 1, e.g. period-doubled seeds
};

/// Damped Newton iteration on the variational gradient; the Jacobian of the
/// gradient is the configuration Hessian H_q.
inline PeriodicOrbit newton_refine(const MapDef& map, int p, int q,
                                   std::vector<double> config,
                                   const NewtonOptions& opts = {}) {
    if (q < 1 || static_cast<int>(config.size()) != q)
        throw ValidationError(ErrorCode::InvalidArgument, "config size must equal q");
    if (!opts.allow_gcd && std::gcd(std::abs(p), q) != 1)
        throw ValidationError(ErrorCode::InvalidArgument,
                              "gcd(p,q) > 1 requires the doubled-orbit flag");

    std::vector<double> grad = variational_gradient(map, config, p);
    double gnorm = detail::inf_norm(grad);
    for (int iter = 0; iter < opts.max_iter && gnorm > opts.grad_tol; ++iter) {
        std::vector<double> step(q);
        if (q == 1) {
            // W(x0) = h(x0, x0 + p): gradient g(x0), second derivative g'(x0)
            const double h = map.force_deriv(config[0]);
            if (std::abs(h) < 1e-14)
                throw NumericalError(ErrorCode::SingularJacobian,
                                     "degenerate critical point (q = 1)");
            step[0] = -grad[0] / h;
        } else {
            const Eigen::MatrixXd h = hessian_config(map, config, p).dense();
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(h);
            if (std::abs(lu.determinant()) < 1e-14)
                throw NumericalError(ErrorCode::SingularJacobian,
                                     "degenerate critical point: |det H_q| < 1e-14");
            Eigen::VectorXd rhs(q);
            for (int i = 0; i < q; ++i) rhs[i] = -grad[i];
            const Eigen::VectorXd s = lu.solve(rhs);
            for (int i = 0; i < q; ++i) step[i] = s[i];
        }

        // Full step, halved on gradient-norm increase (H_q may be indefinite).
        double t = 1.0;
        std::vector<double> trial(q), tgrad;
        double tnorm = 0.0;
        for (int h = 0; h <= opts.max_halvings; ++h) {
            for (int i = 0; i < q; ++i) trial[i] = config[i] + t * step[i];
            tgrad = variational_gradient(map, trial, p);
            tnorm = detail::inf_norm(tgrad);
            if (tnorm <= gnorm || h == opts.max_halvings) break;
            t *= 0.5;
        }
        config = trial;
        grad = tgrad;
        gnorm = tnorm;
    }
    if (gnorm > opts.grad_tol)
        throw NumericalError(ErrorCode::NoConvergence,
                             "Newton did not reach the gradient tolerance in " +
                                 std::to_string(opts.max_iter) + " iterations");
    return make_orbit(map, p, q, std::move(config));
}

/// Equality up to cyclic index shift and integer translation of the config.
inline bool orbits_equivalent(const PeriodicOrbit& a, const PeriodicOrbit& b,
                              double tol = 1e-8) {
    if (a.p != b.p || a.q != b.q) return false;
    const int q = a.q;
    auto lifted = [&](const PeriodicOrbit& o, int i) {
        return o.config[i % q] + o.p * static_cast<double>(i / q);
    };
    for (int s = 0; s < q; ++s) {
        const double m = std::round(lifted(b, s) - a.config[0]);
        double dist = 0.0;
        for (int i = 0; i < q; ++i)
            dist = std::max(dist, std::abs(lifted(b, s + i) - m - a.config[i]));
        if (dist < tol) return true;
    }
    return false;
}

/// Samples a symmetry line, brackets sign changes of the x-defect of F^q,
/// bisects, and keeps Newton-verified orbits (deduplicated).
inline std::vector<PeriodicOrbit> symmetric_seed_scan(const MapDef& map, int p, int q,
                                                      int line_index, double y_lo,
                                                      double y_hi, int n_samples,
                                                      const NewtonOptions& opts = {}) {
    if (n_samples < 2)
        throw ValidationError(ErrorCode::InvalidArgument, "need at least 2 samples");
    auto defect = [&](double y) {
        const PhasePoint z0 = point_on_symmetry_line(line_index, y);
        PhasePoint z = z0;
        for (int i = 0; i < q; ++i) z = lift_step(map, z);
        return z.x - z0.x - p;
    };

    std::vector<PeriodicOrbit> found;
    auto consider = [&](double y) {
        const PhasePoint z0 = point_on_symmetry_line(line_index, y);
        auto zs = iterate_orbit(map, z0, q);
        std::vector<double> config(q);
        for (int i = 0; i < q; ++i) config[i] = zs[i].x;
        PeriodicOrbit orbit;
        try {
            orbit = newton_refine(map, p, q, std::move(config), opts);
        } catch (const NumericalError&) {
            return;
        }
        if (orbit.closure_residual > 1e-10) return;
        for (const auto& prev : found)
            if (orbits_equivalent(prev, orbit)) return;
        found.push_back(std::move(orbit));
    };

    double y_prev = y_lo;
    double d_prev = defect(y_prev);
    for (int j = 1; j < n_samples; ++j) {
        const double y = y_lo + (y_hi - y_lo) * j / (n_samples - 1);
        const double d = defect(y);
        if (d_prev == 0.0) {
            consider(y_prev);
        } else if (d_prev * d < 0.0) {
            double lo = y_prev, hi = y, dlo = d_prev;
            for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi));
                 ++it) {
                const double mid = 0.5 * (lo + hi);
                const double dm = defect(mid);
                if (dm == 0.0) {
                    lo = hi = mid;
                } else if (dlo * dm < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    dlo = dm;
                }
            }
            consider(0.5 * (lo + hi));
        }
        y_prev = y;
        d_prev = d;
    }
    if (d_prev == 0.0) consider(y_prev);
    return found;
}

/// W_pq: sum of generating-function terms around the configuration.
inline double action(const MapDef& map, const PeriodicOrbit& orbit) {
    double w = 0.0;
    for (int i = 0; i < orbit.q; ++i) {
        const double xn =
            (i + 1 < orbit.q) ? orbit.config[i + 1] : orbit.config[0] + orbit.p;
        w += action_term(map, orbit.config[i], xn);
    }
    return w;
}

/// Largest defect of the orbit data: phase points must follow the lift and
/// the configuration must close as a (p,q)-sequence.
inline double orbit_consistency_error(const MapDef& map, const PeriodicOrbit& o) {
    double err = o.closure_residual;
    for (int i = 0; i < o.q; ++i) {
        err = std::max(err, std::abs(o.points[i].x - o.config[i]));
        const PhasePoint next = lift_step(map, o.points[i]);
        const PhasePoint want = (i + 1 < o.q)
                                    ? o.points[i + 1]
                                    : PhasePoint{o.points[0].x + o.p, o.points[0].y};
        err = std::max({err, std::abs(next.x - want.x), std::abs(next.y - want.y)});
    }
    return err;
}

struct ResidueTrace {
    double residue = 0.0;
    double trace = 0.0;
    Mat2 monodromy;
};

/// Ordered product of derivatives along the orbit; residue (2 - trace)/4.
inline ResidueTrace residue_and_trace(const MapDef& map, const PeriodicOrbit& orbit) {
    Mat2 m;  // identity
    for (const PhasePoint& z : orbit.points) m = derivative(map, z) * m;
    return {(2.0 - m.trace()) / 4.0, m.trace(), m};
}

/// Searches for the minimizing (p,q)-orbit: gradient descent on the action
/// from uniform configurations over several offsets, Newton polish, then a
/// Morse-index-0 verification.  The lowest-action verified orbit wins.
inline PeriodicOrbit minimizing_orbit(const MapDef& map, int p, int q,
                                      int n_offsets = 16) {
    if (q < 1)
        throw ValidationError(ErrorCode::InvalidArgument, "q must be >= 1");
    if (std::gcd(std::abs(p), q) != 1)
        throw ValidationError(ErrorCode::InvalidArgument, "gcd(p,q) must be 1");

    // Lipschitz bound for the gradient: row sums of H_q are at most 4 + max|g'|.
    double gmax = 0.0;
    for (int i = 0; i < 512; ++i)
        gmax = std::max(gmax, std::abs(map.force_deriv(i / 512.0)));
    const double step = 1.0 / (4.0 + gmax);

    bool have = false;
    PeriodicOrbit best;
    double best_action = 0.0;
    for (int off = 0; off < n_offsets; ++off) {
        std::vector<double> config(q);
        for (int i = 0; i < q; ++i)
            config[i] = static_cast<double>(off) / n_offsets +
                        static_cast<double>(i) * p / q;
        for (int it = 0; it < 4000; ++it) {
            const auto grad = variational_gradient(map, config, p);
            if (detail::inf_norm(grad) < 1e-6) break;
            for (int i = 0; i < q; ++i) config[i] -= step * grad[i];
        }
        PeriodicOrbit orbit;
        try {
            orbit = newton_refine(map, p, q, std::move(config));
        } catch (const NumericalError&) {
            continue;
        }
        if (orbit.closure_residual > 1e-10) continue;
        if (q >= 2) {
            const auto eigs = eigenvalues_sym(hessian_config(map, orbit.config, p));
            if (morse_index(eigs).index != 0) continue;
        } else if (!(map.force_deriv(orbit.config[0]) > 0.0)) {
            continue;
        }
        const double w = action(map, orbit);
        if (!have || w < best_action) {
            have = true;
            best = std::move(orbit);
            best_action = w;
        }
    }
    if (!have)
        throw NumericalError(ErrorCode::NotFound,
                             "no Morse-index-0 orbit found from uniform seeds");
    return best;
}

// Orbit-facing wrappers for the Hessian builders.
inline PeriodicJacobiMatrix hessian_config(const MapDef& map, const PeriodicOrbit& o) {
    return hessian_config(map, o.config, o.p);
}
inline PeriodicJacobiMatrix hessian_phase(const MapDef& map, const PeriodicOrbit& o) {
    return hessian_phase(map, std::span<const PhasePoint>(o.points));
}

}  // namespace torsionlab

#endif  // TORSIONLAB_ORBITS_HPP
