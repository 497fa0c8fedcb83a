// The 1-cone function delta and the folding / strong-folding structure of a
// standard-like map.
//
// delta(z) is the sum of the tilted-vertical slopes d/b at f^{-1}(z) and
// a/b at z; it is negative exactly where 1-cone crossing occurs.  For the
// standard-like family it reduces to the y-independent profile
// delta(x) = 2 + g'(x) = 2 - eps V''(x), which is also the diagonal of the
// action Hessian along orbits.
#ifndef TORSIONLAB_CONE_HPP
#define TORSIONLAB_CONE_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "torsionlab/core.hpp"
#include "torsionlab/maps.hpp"

namespace torsionlab {

/// 1-cone function via the general two-slope formula.
inline double delta(const MapDef& map, PhasePoint z) {
    const PhasePoint zm = inverse_step(map, z);
    const Mat2 dm = derivative(map, zm);
    const Mat2 dz = derivative(map, z);
    return dm.d / dm.b + dz.a / dz.b;
}

/// Closed-form profile delta(x) = 2 + g'(x) (independent of y).
inline double delta_profile(const MapDef& map, double x) {
    return 2.0 + map.force_deriv(x);
}

/// Closed x-interval within one period; lo == hi marks a degenerate tangency
/// (the function touches zero without crossing).
struct XInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool degenerate = false;

    /// Containment of a circle point, interval endpoints taken mod 1.
    bool contains(double x) const {
        for (int k = -1; k <= 1; ++k) {
            const double t = x + k;
            if (t >= lo - 1e-12 && t <= hi + 1e-12) return true;
        }
        return false;
    }
};

enum class SFClass { NONE, USF, TSF, MULTI };

struct ConeReport {
    double epsilon_prime = std::numeric_limits<double>::infinity();
    double epsilon_star = std::numeric_limits<double>::infinity();
    std::vector<XInterval> folding_intervals;
    std::vector<XInterval> strong_folding_intervals;
    SFClass classification = SFClass::NONE;
    int component_count = 0;
    bool includes_gamma0 = false;   // x = 0 inside a strong-folding component
    bool includes_gamma0p = false;  // x = 1/2 inside one
    bool has_degenerate = false;
};

namespace detail {

/// Maximal intervals {x : f(x) <= 0} over one period of a smooth 1-periodic
/// function, by uniform scan plus bisection of the sign changes; grid local
/// minima touching zero become degenerate single-point intervals.  Intervals
/// are merged across the x = +-0.5 wrap (a merged interval may extend past
/// 0.5).
template <class F>
std::vector<XInterval> nonpositive_intervals(const F& f, int grid_n) {
    if (grid_n < 16)
        throw ValidationError(ErrorCode::InvalidArgument, "grid too coarse");
    const int n = grid_n;
    std::vector<double> xs(n + 1), fs(n + 1);
    for (int j = 0; j <= n; ++j) {
        xs[j] = -0.5 + static_cast<double>(j) / n;
        fs[j] = f(xs[j]);
    }

    auto bisect_root = [&](double lo, double hi, double flo) {
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if (fm == 0.0) return mid;
            if (flo * fm < 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        return 0.5 * (lo + hi);
    };

    std::vector<XInterval> out;
    bool inside = fs[0] <= 0.0;
    double start = xs[0];
    for (int j = 0; j < n; ++j) {
        const bool next_inside = fs[j + 1] <= 0.0;
        if (!inside && next_inside) {
            start = fs[j + 1] == 0.0 ? xs[j + 1] : bisect_root(xs[j], xs[j + 1], fs[j]);
            inside = true;
        } else if (inside && !next_inside) {
            const double end = fs[j] == 0.0 ? xs[j] : bisect_root(xs[j], xs[j + 1], fs[j]);
            out.push_back({start, end, false});
            inside = false;
        }
    }
    if (inside) {
        if (!out.empty() && fs[0] <= 0.0) {
            // wraps across +-0.5: merge into the first interval
            out.front().lo = start - 1.0;
        } else {
            out.push_back({start, xs[n], false});
        }
    }
    for (auto& iv : out) iv.degenerate = (iv.hi - iv.lo) <= 1e-10;

    // Tangencies from above: grid local minima that touch zero without a
    // sign change become degenerate single-point intervals.
    const double scale = [&] {
        double s = 1.0;
        for (double v : fs) s = std::max(s, std::abs(v));
        return s;
    }();
    const double touch_tol = 1e-10 * scale;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int j = 0; j < n; ++j) {
        const int jm = (j + n - 1) % n, jp = (j + 1) % n;
        const bool candidate = std::abs(fs[j]) <= touch_tol && fs[jm] > touch_tol &&
                               fs[jp] > touch_tol;
        if (!candidate) continue;
        double a = xs[j] - 1.0 / n, b = xs[j] + 1.0 / n;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = f(c), fd = f(d);
        for (int it = 0; it < 120 && b - a > 1e-13; ++it) {
            if (fc < fd) {
                b = d, d = c, fd = fc;
                c = b - gr * (b - a);
                fc = f(c);
            } else {
                a = c, c = d, fc = fd;
                d = a + gr * (b - a);
                fd = f(d);
            }
        }
        const double xmin = 0.5 * (a + b);
        if (std::abs(f(xmin)) <= touch_tol) {
            bool dup = false;
            for (const auto& iv : out) dup = dup || iv.contains(xmin);
            if (!dup) out.push_back({xmin, xmin, true});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const XInterval& u, const XInterval& v) { return u.lo < v.lo; });
    return out;
}

/// max V'' over the period, refined from a coarse grid.
inline double max_potential_dd(const MapDef& map, int grid_n) {
    double best_x = 0.0, best = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid_n; ++j) {
        const double x = -0.5 + static_cast<double>(j) / grid_n;
        const double v = map.potential_dd(x);
        if (v > best) best = v, best_x = x;
    }
    double a = best_x - 1.0 / grid_n, b = best_x + 1.0 / grid_n;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = -map.potential_dd(c), fd = -map.potential_dd(d);
    for (int it = 0; it < 120 && b - a > 1e-13; ++it) {
        if (fc < fd) {
            b = d, d = c, fd = fc;
            c = b - gr * (b - a);
            fc = -map.potential_dd(c);
        } else {
            a = c, c = d, fc = fd;
            d = a + gr * (b - a);
            fd = -map.potential_dd(d);
        }
    }
    return std::max(best, map.potential_dd(0.5 * (a + b)));
}

}  // namespace detail

/// {x : a(x) <= 0} with a = 1 + g', as maximal closed intervals mod 1.
inline std::vector<XInterval> folding_intervals(const MapDef& map, int grid_n = 4096) {
    return detail::nonpositive_intervals(
        [&](double x) { return 1.0 + map.force_deriv(x); }, grid_n);
}

/// {x : delta(x) <= 0}, maximal intervals mod 1.
inline std::vector<XInterval> strong_folding_intervals(const MapDef& map,
                                                       int grid_n = 4096) {
    return detail::nonpositive_intervals(
        [&](double x) { return delta_profile(map, x); }, grid_n);
}

/// Thresholds, regions and the USF / TSF classification of the map.
inline ConeReport classify_sf(const MapDef& map, int grid_n = 4096) {
    ConeReport r;
    const double vpp = detail::max_potential_dd(map, grid_n);
    if (vpp > 0.0) {
        r.epsilon_prime = 1.0 / vpp;
        r.epsilon_star = 2.0 / vpp;
    }
    r.folding_intervals = folding_intervals(map, grid_n);
    r.strong_folding_intervals = strong_folding_intervals(map, grid_n);
    for (const auto& iv : r.strong_folding_intervals) {
        r.has_degenerate = r.has_degenerate || iv.degenerate;
        r.includes_gamma0 = r.includes_gamma0 || iv.contains(0.0);
        r.includes_gamma0p = r.includes_gamma0p || iv.contains(0.5);
    }
    r.component_count = static_cast<int>(r.strong_folding_intervals.size());
    if (r.component_count == 0) {
        r.classification = SFClass::NONE;
    } else if (r.component_count == 1) {
        r.classification = SFClass::USF;
    } else if (r.component_count == 2 && r.includes_gamma0 && r.includes_gamma0p) {
        r.classification = SFClass::TSF;
    } else {
        r.classification = SFClass::MULTI;
    }
    return r;
}

inline std::string to_string(SFClass c) {
    switch (c) {
        case SFClass::NONE: return "NONE";
        case SFClass::USF: return "USF";
        case SFClass::TSF: return "TSF";
        case SFClass::MULTI: return "MULTI";
    }
    return "?";
}

}  // namespace torsionlab

#endif  // TORSIONLAB_CONE_HPP
