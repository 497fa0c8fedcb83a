// Order (Birkhoff) properties of (p,q)-configurations: the cyclic-order
// test against all integer translations, Aubry-diagram crossing counts, and
// the minimizer-gap point count.
#ifndef TORSIONLAB_ORDER_HPP
#define TORSIONLAB_ORDER_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "torsionlab/core.hpp"
#include "torsionlab/orbits.hpp"

namespace torsionlab {

struct OrderReport {
    bool birkhoff = true;
    std::optional<std::pair<int, int>> violating_pair;  // (i, j) witness
    std::optional<int> crossings_vs_minimizer;
    std::optional<int> points_in_gap;
};

namespace detail {

inline double lifted_config(const PeriodicOrbit& o, int i) {
    return o.config[i % o.q] + o.p * static_cast<double>(i / o.q);
}

}  // namespace detail

/// Tests whether the configuration is cyclically ordered: for every index
/// shift i and integer translation j, the difference sequence
/// d_k = x_{k+i} + j - x_k must be single-signed (or identically zero).
/// Outside the scanned j-window, |j| dominates the oscillation of
/// x_{k+i} - x_k and d is single-signed automatically.
inline OrderReport cyclic_order_test(const PeriodicOrbit& orbit, double tol = 1e-10) {
    const int q = orbit.q;
    OrderReport r;
    for (int i = 0; i < q; ++i) {
        double dmin = 0.0, dmax = 0.0;
        std::vector<double> diff(q);
        for (int k = 0; k < q; ++k) {
            diff[k] = detail::lifted_config(orbit, k + i) - orbit.config[k];
            dmin = (k == 0) ? diff[k] : std::min(dmin, diff[k]);
            dmax = (k == 0) ? diff[k] : std::max(dmax, diff[k]);
        }
        const int jlo = static_cast<int>(std::ceil(-dmax)) - 1;
        const int jhi = static_cast<int>(std::ceil(-dmin)) + 1;
        for (int j = jlo; j <= jhi; ++j) {
            bool pos = false, neg = false;
            for (int k = 0; k < q; ++k) {
                const double d = diff[k] + j;
                if (d > tol) pos = true;
                else if (d < -tol) neg = true;
            }
            if (pos && neg) {
                r.birkhoff = false;
                r.violating_pair = std::make_pair(i, j);
                return r;
            }
        }
    }
    return r;
}

/// Number of transversal crossings between the Aubry diagrams of a candidate
/// and a minimizer of the same type, minimized over integer translations of
/// the minimizer.  Both interpolants break at integer arguments, so
/// crossings are sign changes of the node differences around one period
/// (touching without a sign change does not count).
inline int aubry_crossings(const PeriodicOrbit& candidate,
                           const PeriodicOrbit& minimizer, double margin = 1e-12) {
    if (candidate.p != minimizer.p || candidate.q != minimizer.q)
        throw ValidationError(ErrorCode::MismatchedType,
                              "Aubry comparison requires matching (p,q)");
    const int q = candidate.q;
    double dmin = 0.0, dmax = 0.0;
    std::vector<double> diff(q);
    for (int k = 0; k < q; ++k) {
        diff[k] = candidate.config[k] - minimizer.config[k];
        dmin = (k == 0) ? diff[k] : std::min(dmin, diff[k]);
        dmax = (k == 0) ? diff[k] : std::max(dmax, diff[k]);
    }
    const int jlo = static_cast<int>(std::ceil(dmin)) - 1;
    const int jhi = static_cast<int>(std::ceil(dmax)) + 1;
    int best = -1;
    for (int j = jlo; j <= jhi; ++j) {
        std::vector<int> signs;
        signs.reserve(q);
        for (int k = 0; k < q; ++k) {
            const double d = diff[k] - j;
            if (d > margin) signs.push_back(+1);
            else if (d < -margin) signs.push_back(-1);
        }
        int crossings = 0;
        const int m = static_cast<int>(signs.size());
        for (int k = 0; k < m; ++k)
            if (signs[k] != signs[(k + 1) % m]) ++crossings;
        if (best < 0 || crossings < best) best = crossings;
    }
    return best < 0 ? 0 : best;
}

/// Projects both orbits to the circle and counts candidate points strictly
/// between the minimizer abscissas nearest 0 (x_l < 0 < x_r).
inline int gap_count(const PeriodicOrbit& candidate, const PeriodicOrbit& minimizer) {
    if (candidate.p != minimizer.p || candidate.q != minimizer.q)
        throw ValidationError(ErrorCode::MismatchedType,
                              "gap count requires matching (p,q)");
    double xl = -std::numeric_limits<double>::infinity();
    double xr = std::numeric_limits<double>::infinity();
    for (double x : minimizer.config) {
        const double t = wrap_half(x);
        if (std::abs(t) <= 1e-10)
            throw NumericalError(ErrorCode::NoGap,
                                 "minimizer has a point at x = 0; no gap is defined");
        if (t < 0.0) xl = std::max(xl, t);
        else xr = std::min(xr, t);
    }
    if (!std::isfinite(xl) || !std::isfinite(xr))
        throw NumericalError(ErrorCode::NoGap,
                             "minimizer has no points on both sides of x = 0");
    int count = 0;
    for (double x : candidate.config) {
        const double t = wrap_half(x);
        if (t > xl && t < xr) ++count;
    }
    return count;
}

}  // namespace torsionlab

#endif  // TORSIONLAB_ORDER_HPP
