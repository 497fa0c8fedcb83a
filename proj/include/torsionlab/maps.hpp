// Standard-like twist maps of the annulus: lift, inverse, derivative,
// generating function and symmetry lines.
//
// A map is determined by a 1-periodic force g and a parameter eps >= 0,
// through the lift
//
//     F(x, y) = (x + y + g(x), y + g(x)).
//
// Two force representations are supported: a finite sine series
// g(x) = eps * sum_k gamma_k sin(2 pi k x), and the closed-form
// rational force g(x) = (eps/2pi) sin(2 pi x) / (1 - a cos(2 pi x)).
// Either way g = -eps * V' for an even 1-periodic potential V, and the
// map is generated by h(x, x') = (x' - x)^2 / 2 - eps V(x).
#ifndef TORSIONLAB_MAPS_HPP
#define TORSIONLAB_MAPS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "torsionlab/core.hpp"

namespace torsionlab {

struct PhasePoint {
    double x = 0.0;
    double y = 0.0;
};

struct MapDef {
    std::vector<double> gamma;        // sine-series force amplitudes, k = 1..K
    double epsilon = 0.0;             // perturbation parameter, >= 0
    std::optional<double> rational_a; // set: use the rational closed-form force
    std::string name;

    /// Classical standard map: y' = y - (eps/2pi) sin(2 pi x).
    static MapDef standard(double eps) {
        MapDef m;
        m.gamma = {-1.0 / kTwoPi};
        m.epsilon = eps;
        m.name = "standard";
        m.validate();
        return m;
    }

    /// Three-harmonic force with amplitudes (0.18, -0.42, -0.11) scaled by eps.
    static MapDef three_harmonic(double eps) {
        MapDef m;
        m.gamma = {0.18, -0.42, -0.11};
        m.epsilon = eps;
        m.name = "three-harmonic";
        m.validate();
        return m;
    }

    /// Analytic force with infinitely many harmonics:
    /// g(x) = (eps/2pi) sin(2 pi x) / (1 - a cos(2 pi x)), |a| < 1.
    static MapDef rational_harmonic(double eps, double a) {
        MapDef m;
        m.epsilon = eps;
        m.rational_a = a;
        m.name = "rational-harmonic";
        m.validate();
        return m;
    }

    MapDef with_epsilon(double eps) const {
        MapDef m = *this;
        m.epsilon = eps;
        return m;
    }

    void validate() const {
        if (!(epsilon >= 0.0))
            throw ValidationError(ErrorCode::InvalidArgument, "epsilon must be >= 0");
        if (rational_a) {
            if (!(std::abs(*rational_a) < 1.0))
                throw ValidationError(ErrorCode::InvalidArgument,
                                      "rational force parameter requires |a| < 1");
        } else if (gamma.empty()) {
            throw ValidationError(ErrorCode::InvalidArgument,
                                  "at least one force harmonic is required");
        }
    }

    /// Force g(x); the vertical kick of the map.
    double force(double x) const {
        if (rational_a) {
            const double a = *rational_a;
            return epsilon / kTwoPi * sin2pi(x) / (1.0 - a * cos2pi(x));
        }
        double s = 0.0;
        for (std::size_t k = 0; k < gamma.size(); ++k)
            s += gamma[k] * sin2pi(static_cast<double>(k + 1) * x);
        return epsilon * s;
    }

    /// g'(x).
    double force_deriv(double x) const {
        if (rational_a) {
            const double a = *rational_a;
            const double c = cos2pi(x);
            const double den = 1.0 - a * c;
            return epsilon * (c - a) / (den * den);
        }
        double s = 0.0;
        for (std::size_t k = 0; k < gamma.size(); ++k) {
            const double w = kTwoPi * static_cast<double>(k + 1);
            s += w * gamma[k] * cos2pi(static_cast<double>(k + 1) * x);
        }
        return epsilon * s;
    }

    /// Potential V with g = -eps V'.  V(x) = sum_k gamma_k/(2 pi k) cos(2 pi k x)
    /// for the sine-series force.
    double potential(double x) const {
        if (rational_a) {
            const double a = *rational_a;
            const double c = cos2pi(x);
            if (std::abs(a) < 1e-12) return c / (kTwoPi * kTwoPi);
            return -std::log1p(-a * c) / (kTwoPi * kTwoPi * a);
        }
        double s = 0.0;
        for (std::size_t k = 0; k < gamma.size(); ++k) {
            const double w = kTwoPi * static_cast<double>(k + 1);
            s += gamma[k] / w * cos2pi(static_cast<double>(k + 1) * x);
        }
        return s;
    }

    /// V''(x); eps-independent shape of the folding condition V'' >= 1/eps.
    double potential_dd(double x) const {
        if (rational_a) {
            const double a = *rational_a;
            const double c = cos2pi(x);
            const double den = 1.0 - a * c;
            return -(c - a) / (den * den);
        }
        double s = 0.0;
        for (std::size_t k = 0; k < gamma.size(); ++k) {
            const double w = kTwoPi * static_cast<double>(k + 1);
            s += w * gamma[k] * cos2pi(static_cast<double>(k + 1) * x);
        }
        return -s;
    }
};

/// One step of the lift.  y' is computed first, then x' = x + y', so results
/// are bit-stable across call sites.
inline PhasePoint lift_step(const MapDef& map, PhasePoint z) {
    const double yn = z.y + map.force(z.x);
    return {z.x + yn, yn};
}

/// Inverse lift step: x = x' - y', y = y' - g(x).
inline PhasePoint inverse_step(const MapDef& map, PhasePoint z) {
    const double xp = z.x - z.y;
    return {xp, z.y - map.force(xp)};
}

/// Derivative of the lift, [[1 + g'(x), 1], [g'(x), 1]].  Unit determinant;
/// the b-entry is identically 1 (uniform positive twist).
inline Mat2 derivative(const MapDef& map, PhasePoint z) {
    const double gp = map.force_deriv(z.x);
    return {1.0 + gp, 1.0, gp, 1.0};
}

/// Generating-function term h(x, x') = (x' - x)^2 / 2 - eps V(x).
inline double action_term(const MapDef& map, double x, double x_next) {
    const double d = x_next - x;
    return 0.5 * d * d - map.epsilon * map.potential(x);
}

// Partial derivatives of h.  Orbits correspond to critical configurations
// through y = -h1(x, x'), y' = h2(x, x').
inline double gen_h1(const MapDef& map, double x, double x_next) {
    return -(x_next - x) + map.force(x);
}
inline double gen_h2(const MapDef& /*map*/, double x, double x_next) {
    return x_next - x;
}
inline double gen_h11(const MapDef& map, double x, double /*x_next*/) {
    return 1.0 + map.force_deriv(x);
}
inline double gen_h12(const MapDef& /*map*/, double /*x*/, double /*x_next*/) {
    return -1.0;
}
inline double gen_h22(const MapDef& /*map*/, double /*x*/, double /*x_next*/) {
    return 1.0;
}

/// Line a x + b y + c = 0.
struct LineCoeffs {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// The four symmetry lines of the reversible factorization F = I o R, in the
/// order Gamma_0 (x = 0), Gamma'_0 (x = 1/2), Gamma_1 (x = y/2),
/// Gamma'_1 (x = (y+1)/2).
inline std::array<LineCoeffs, 4> symmetry_lines(const MapDef& /*map*/) {
    return {{{1.0, 0.0, 0.0},
             {1.0, 0.0, -0.5},
             {1.0, -0.5, 0.0},
             {1.0, -0.5, -0.5}}};
}

/// Point on symmetry line `line_index` (0..3) with ordinate y.  Gamma'_0 uses
/// the x = -0.5 representative of the circle.
inline PhasePoint point_on_symmetry_line(int line_index, double y) {
    switch (line_index) {
        case 0: return {0.0, y};
        case 1: return {-0.5, y};
        case 2: return {0.5 * y, y};
        case 3: return {0.5 * (y + 1.0), y};
        default:
            throw ValidationError(ErrorCode::InvalidArgument, "line index must be 0..3");
    }
}

/// Involution R(x, y) = (-x, y + g(x)); the map factorizes as F = I o R.
inline PhasePoint reversor(const MapDef& map, PhasePoint z) {
    return {-z.x, z.y + map.force(z.x)};
}

}  // namespace torsionlab

#endif  // TORSIONLAB_MAPS_HPP
