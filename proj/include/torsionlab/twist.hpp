// Twist (torsion) number classification of periodic orbits.
//
// The twist number tau of a (p,q)-orbit is the translation number of the
// q-basic lift of its tangent dynamics; for positive twist maps it is zero
// or negative.  Three independent routes are implemented:
//
//  * the spectral classifier, which reads tau (exact value in Z/2, or an
//    open demi-unit interval) off the Morse indices I of H_q and I' of the
//    companion H_q^-;
//  * the naive sign-change count along a tangent trajectory, valid for
//    elliptic orbits;
//  * a winding oracle that follows a tangent vector for many periods and
//    averages its accumulated clockwise rotation.
#ifndef TORSIONLAB_TWIST_HPP
#define TORSIONLAB_TWIST_HPP

#include <cmath>
#include <optional>
#include <string>

#include "torsionlab/core.hpp"
#include "torsionlab/maps.hpp"
#include "torsionlab/orbits.hpp"
#include "torsionlab/spectral.hpp"

namespace torsionlab {

enum class DynType {
    RegularHyperbolic,
    Elliptic,
    InverseHyperbolic,
    ParabolicPos,
    ParabolicNeg,
};

inline std::string to_string(DynType t) {
    switch (t) {
        case DynType::RegularHyperbolic: return "REGULAR_HYPERBOLIC";
        case DynType::Elliptic: return "ELLIPTIC";
        case DynType::InverseHyperbolic: return "INVERSE_HYPERBOLIC";
        case DynType::ParabolicPos: return "PARABOLIC_POS";
        case DynType::ParabolicNeg: return "PARABOLIC_NEG";
    }
    return "?";
}

/// Either an exact twist value in Z/2 or an open demi-unit interval.
struct TwistValue {
    bool is_exact = true;
    double value = 0.0;      // when exact
    double lo = 0.0, hi = 0.0;  // open interval (lo, hi) otherwise

    static TwistValue exact(double v) { return {true, v, v, v}; }
    static TwistValue interval(double lo, double hi) { return {false, 0.0, lo, hi}; }

    bool same_as(const TwistValue& o, double tol = 1e-12) const {
        if (is_exact != o.is_exact) return false;
        if (is_exact) return std::abs(value - o.value) <= tol;
        return std::abs(lo - o.lo) <= tol && std::abs(hi - o.hi) <= tol;
    }
};

struct TwistReport {
    DynType dyn_type = DynType::Elliptic;
    int morse_I = 0;
    int morse_Iprime = 0;
    TwistValue twist;
    bool degenerate = false;   // zero Hessian eigenvalue or parabolic trace
    double trace = 0.0;
    double residue = 0.0;
    std::optional<double> winding;                      // oracle, if requested
    std::optional<std::pair<double, double>> naive;     // sign-change interval
};

inline constexpr double kParabolicTol = 1e-8;

inline DynType dyn_type_from_trace(double trace, bool* degenerate = nullptr) {
    if (std::abs(trace - 2.0) <= kParabolicTol) {
        if (degenerate) *degenerate = true;
        return DynType::ParabolicPos;
    }
    if (std::abs(trace + 2.0) <= kParabolicTol) {
        if (degenerate) *degenerate = true;
        return DynType::ParabolicNeg;
    }
    if (trace > 2.0) return DynType::RegularHyperbolic;
    if (trace < -2.0) return DynType::InverseHyperbolic;
    return DynType::Elliptic;
}

/// Regions of the universal cover reachable by a basic lift of a positive
/// twist step.
enum class LiftRegion { H0, E_minus1, Hprime_minus1, BoundaryPos, BoundaryNeg };

struct LiftRegionInfo {
    LiftRegion region = LiftRegion::H0;
    double bc = 0.0;  // b - c, fixes the parabolic conjugacy class on boundaries
};

/// Classifies the basic lift of a single derivative matrix (q = 1 route).
inline LiftRegionInfo basic_lift_region(const Mat2& m) {
    if (std::abs(m.det() - 1.0) > 1e-9)
        throw ValidationError(ErrorCode::InvalidArgument,
                              "basic lift region requires det = 1");
    if (!(m.b > 0.0))
        throw ValidationError(ErrorCode::NotPositiveTwist,
                              "basic lift region requires a positive twist step");
    LiftRegionInfo info;
    info.bc = m.b - m.c;
    const double tr = m.trace();
    if (std::abs(tr - 2.0) <= kParabolicTol)
        info.region = LiftRegion::BoundaryPos;
    else if (std::abs(tr + 2.0) <= kParabolicTol)
        info.region = LiftRegion::BoundaryNeg;
    else if (tr > 2.0)
        info.region = LiftRegion::H0;
    else if (tr < -2.0)
        info.region = LiftRegion::Hprime_minus1;
    else
        info.region = LiftRegion::E_minus1;
    return info;
}

/// Spectral twist classification.
///
/// For q >= 2: I even gives tau = -I/2; I odd with a zero eigenvalue of H_q
/// gives tau = -(I+1)/2 (degenerate); otherwise I' decides between
/// (-I/2, -(I-1)/2), exactly -I/2, and (-(I+1)/2, -I/2).
/// Fixed points (q = 1) are classified by the basic-lift region of the
/// single derivative matrix.
inline TwistReport classify_twist(const MapDef& map, const PeriodicOrbit& orbit) {
    TwistReport r;
    const ResidueTrace rt = residue_and_trace(map, orbit);
    r.trace = rt.trace;
    r.residue = rt.residue;
    r.dyn_type = dyn_type_from_trace(rt.trace, &r.degenerate);

    if (orbit.q == 1) {
        const LiftRegionInfo info = basic_lift_region(rt.monodromy);
        switch (info.region) {
            case LiftRegion::H0:
            case LiftRegion::BoundaryPos:
                r.twist = TwistValue::exact(0.0);
                break;
            case LiftRegion::Hprime_minus1:
            case LiftRegion::BoundaryNeg:
                r.twist = TwistValue::exact(-0.5);
                break;
            case LiftRegion::E_minus1:
                r.twist = TwistValue::interval(-0.5, 0.0);
                break;
        }
        const double dd = map.force_deriv(orbit.config[0]);
        r.morse_I = r.morse_Iprime = dd < 0.0 ? 1 : 0;
        return r;
    }

    const PeriodicJacobiMatrix h = hessian_config(map, orbit);
    const MorseIndex mi = morse_index(eigenvalues_sym(h));
    const MorseIndex mip = morse_index(eigenvalues_sym(companion_minus(h)));
    r.morse_I = mi.index;
    r.morse_Iprime = mip.index;
    const int i = mi.index, ip = mip.index;
    if (ip < i - 1 || ip > i + 1)
        throw NumericalError(ErrorCode::InconsistentSpectra,
                             "companion index differs from the Morse index by more "
                             "than 1; eigensolution or orbit is invalid");
    if (i % 2 == 0) {
        r.twist = TwistValue::exact(-0.5 * i);
    } else if (mi.has_zero) {
        r.twist = TwistValue::exact(-0.5 * (i + 1));
        r.degenerate = true;
    } else if (ip == i - 1) {
        r.twist = TwistValue::interval(-0.5 * i, -0.5 * (i - 1));
    } else if (ip == i) {
        r.twist = TwistValue::exact(-0.5 * i);
    } else {
        r.twist = TwistValue::interval(-0.5 * (i + 1), -0.5 * i);
    }
    return r;
}

/// Sign-change method for elliptic orbits: counts strict sign changes of the
/// first tangent coordinate along a (q+1)-length tangent trajectory started
/// from (1,0); k changes put tau in (-(k+1)/2, -k/2).
inline std::pair<double, double> naive_interval(const MapDef& map,
                                                const PeriodicOrbit& orbit) {
    const ResidueTrace rt = residue_and_trace(map, orbit);
    if (!(std::abs(rt.trace) < 2.0))
        throw NumericalError(ErrorCode::NotElliptic,
                             "the sign-change method requires an elliptic orbit");
    Vec2 v{1.0, 0.0};
    double c_prev = 1.0;
    int k = 0;
    for (int i = 0; i < orbit.q; ++i) {
        v = derivative(map, orbit.points[i]) * v;
        const double norm = std::hypot(v.x, v.y);
        v = {v.x / norm, v.y / norm};
        if (std::abs(v.x) < 1e-12)
            throw NumericalError(ErrorCode::ZeroCrossingAmbiguous,
                                 "tangent coordinate too close to zero to count");
        if (c_prev * v.x < 0.0) ++k;
        c_prev = v.x;
    }
    return {-0.5 * (k + 1), -0.5 * k};
}

namespace detail {

// Representative of t in (-pi, pi].
inline double wrap_pm_pi(double t) {
    return t - kTwoPi * std::ceil((t - 0.5 * kTwoPi) / kTwoPi);
}

}  // namespace detail

/// Winding oracle: follows a unit tangent vector for n_periods * q steps and
/// returns the accumulated rotation in turns per period.
///
/// Each step contributes its basic-lift displacement.  A single positive
/// twist step displaces the north pole clockwise by mu in (-1/2, 0) turns,
/// and its displacement map has range at most 1/2; every displacement
/// therefore lies in the width-1 window centered at mu, which selects a
/// unique branch of the measured angle increment.  (Choosing the naive
/// (-pi, pi] branch instead loses full turns on strongly inverse-hyperbolic
/// steps.)  The estimate is within 1/(2 n_periods) of the twist number.
inline double winding_estimate(const MapDef& map, const PeriodicOrbit& orbit,
                               int n_periods) {
    if (n_periods < 1)
        throw ValidationError(ErrorCode::InvalidArgument, "n_periods must be >= 1");
    Vec2 v{1.0, 0.0};
    double ang_prev = 0.0;
    double acc = 0.0;
    for (long step = 0; step < static_cast<long>(n_periods) * orbit.q; ++step) {
        const Mat2 a = derivative(map, orbit.points[step % orbit.q]);
        if (!(a.b > 0.0))
            throw NumericalError(ErrorCode::NotPositiveTwist,
                                 "winding oracle requires positive twist steps");
        const double mu = std::atan2(a.d, a.b) - 0.25 * kTwoPi;
        const Vec2 w = a * v;
        const double ang = std::atan2(w.y, w.x);
        acc += mu + detail::wrap_pm_pi(ang - ang_prev - mu);
        const double norm = std::hypot(w.x, w.y);
        v = {w.x / norm, w.y / norm};
        ang_prev = ang;
    }
    return acc / (kTwoPi * n_periods);
}

}  // namespace torsionlab

#endif  // TORSIONLAB_TWIST_HPP
