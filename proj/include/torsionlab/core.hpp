// torsionlab: twist-number and order analysis of periodic orbits of
// standard-like area-preserving twist maps.
//
// Shared scalar helpers, tiny fixed-size linear algebra, and the error
// taxonomy used across the library.
#ifndef TORSIONLAB_CORE_HPP
#define TORSIONLAB_CORE_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace torsionlab {

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

/// Representative of x on the circle, in [-0.5, 0.5).
inline double wrap_half(double x) { return x - std::floor(x + 0.5); }

/// sin(2*pi*t) with the argument reduced mod 1 before scaling, so large
/// lift abscissas do not lose precision.
inline double sin2pi(double t) { return std::sin(kTwoPi * wrap_half(t)); }

/// cos(2*pi*t), reduced the same way.
inline double cos2pi(double t) { return std::cos(kTwoPi * wrap_half(t)); }

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Row-major 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }

    Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

enum class ErrorCode {
    InvalidArgument,
    NoConvergence,
    SingularJacobian,
    NotFound,
    NotElliptic,
    ZeroCrossingAmbiguous,
    NonTwistAlongOrbit,
    InconsistentSpectra,
    IllConditioned,
    MismatchedType,
    NoGap,
    SeedInvalid,
    NotPositiveTwist,
};

/// Bad inputs: malformed definitions, violated preconditions. CLI exit 2.
class ValidationError : public std::runtime_error {
public:
    ValidationError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// Well-formed inputs on which a numerical procedure failed. CLI exit 3.
class NumericalError : public std::runtime_error {
public:
    NumericalError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace torsionlab

#endif  // TORSIONLAB_CORE_HPP
