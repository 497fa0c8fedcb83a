// Periodic Jacobi matrices attached to a (p,q)-configuration: the action
// Hessian H_q, its companion H_q^- with negated corner entries, their
// spectra and Morse indices, and the Hill discriminant trace M(lambda)
// whose +2 / -2 level sets they interlace.
#ifndef TORSIONLAB_SPECTRAL_HPP
#define TORSIONLAB_SPECTRAL_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "torsionlab/core.hpp"
#include "torsionlab/maps.hpp"

namespace torsionlab {

/// Symmetric q x q matrix with diagonal alpha, next-to-diagonal beta (all
/// beta_i < 0), and corner entries corner_sign * beta_{q-1}.  For q = 2 the
/// two off-diagonal couplings collapse onto one entry, beta_0 + corner_sign *
/// beta_1.
struct PeriodicJacobiMatrix {
    std::vector<double> alpha;
    std::vector<double> beta;
    int corner_sign = +1;  // +1: H_q, -1: companion H_q^-

    int q() const { return static_cast<int>(alpha.size()); }

    void validate() const {
        if (alpha.size() != beta.size() || alpha.size() < 2)
            throw ValidationError(ErrorCode::InvalidArgument,
                                  "periodic Jacobi matrix requires q >= 2 with matching entries");
        for (double b : beta)
            if (!(b < 0.0))
                throw ValidationError(ErrorCode::InvalidArgument,
                                      "off-diagonal entries must be negative");
    }

    Eigen::MatrixXd dense() const {
        validate();
        const int n = q();
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        if (n == 2) {
            const double off = beta[0] + corner_sign * beta[1];
            m << alpha[0], off, off, alpha[1];
            return m;
        }
        for (int i = 0; i < n; ++i) m(i, i) = alpha[i];
        for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = beta[i];
        m(0, n - 1) = m(n - 1, 0) = corner_sign * beta[n - 1];
        return m;
    }
};

/// Hessian of the (p,q)-action at a configuration, in configuration
/// coordinates: alpha_i = h11(x_i, x_{i+1}) + h22(x_{i-1}, x_i),
/// beta_i = h12(x_i, x_{i+1}), indices cyclic with x_q = x_0 + p.
inline PeriodicJacobiMatrix hessian_config(const MapDef& map,
                                           std::span<const double> config, int p) {
    const int q = static_cast<int>(config.size());
    if (q < 2)
        throw ValidationError(ErrorCode::InvalidArgument, "Hessian requires q >= 2");
    PeriodicJacobiMatrix h;
    h.alpha.resize(q);
    h.beta.resize(q);
    for (int i = 0; i < q; ++i) {
        const double xi = config[i];
        const double xn = (i + 1 < q) ? config[i + 1] : config[0] + p;
        const double xp = (i > 0) ? config[i - 1] : config[q - 1] - p;
        h.alpha[i] = gen_h11(map, xi, xn) + gen_h22(map, xp, xi);
        h.beta[i] = gen_h12(map, xi, xn);
    }
    h.validate();
    return h;
}

/// The same Hessian assembled from derivative entries along the phase-space
/// points: alpha_i = d_{i-1}/b_{i-1} + a_i/b_i, beta_i = -1/b_i.
inline PeriodicJacobiMatrix hessian_phase(const MapDef& map,
                                          std::span<const PhasePoint> points) {
    const int q = static_cast<int>(points.size());
    if (q < 2)
        throw ValidationError(ErrorCode::InvalidArgument, "Hessian requires q >= 2");
    std::vector<Mat2> d(points.size());
    for (int i = 0; i < q; ++i) {
        d[i] = derivative(map, points[i]);
        if (!(d[i].b > 0.0))
            throw NumericalError(ErrorCode::NonTwistAlongOrbit,
                                 "derivative b-entry not positive along the orbit");
    }
    PeriodicJacobiMatrix h;
    h.alpha.resize(q);
    h.beta.resize(q);
    for (int i = 0; i < q; ++i) {
        const Mat2& prev = d[(i + q - 1) % q];
        h.alpha[i] = prev.d / prev.b + d[i].a / d[i].b;
        h.beta[i] = -1.0 / d[i].b;
    }
    h.validate();
    return h;
}

/// Companion matrix: corner entries negated (q = 2: coupling beta_0 - beta_1).
inline PeriodicJacobiMatrix companion_minus(const PeriodicJacobiMatrix& h) {
    if (h.corner_sign != +1)
        throw ValidationError(ErrorCode::InvalidArgument,
                              "companion of a companion matrix is not defined");
    PeriodicJacobiMatrix m = h;
    m.corner_sign = -1;
    return m;
}

/// Ascending eigenvalues.
inline std::vector<double> eigenvalues_sym(const PeriodicJacobiMatrix& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.dense(),
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError(ErrorCode::IllConditioned, "symmetric eigensolver failed");
    const auto& ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

struct MorseIndex {
    int index = 0;      // number of eigenvalues < -zero_tol
    bool has_zero = false;
};

/// Morse index of a sorted spectrum.  zero_tol < 0 selects the scale-relative
/// default 1e-9 * max(1, |lambda|_max).
inline MorseIndex morse_index(const std::vector<double>& eigs, double zero_tol = -1.0) {
    double scale = 1.0;
    for (double v : eigs) scale = std::max(scale, std::abs(v));
    const double tol = zero_tol >= 0.0 ? zero_tol : 1e-9 * scale;
    MorseIndex m;
    for (double v : eigs) {
        if (v < -tol) ++m.index;
        if (std::abs(v) <= tol) m.has_zero = true;
    }
    return m;
}

struct HillResult {
    double trace = 0.0;
    Mat2 monodromy;  // M(lambda), unit determinant
};

/// Transfer-matrix form of the discrete Hill equation attached to H_q:
/// M(lambda) is the ordered product over i = 0..q-1 of
/// [[0, 1], [-beta_{i-1}/beta_i, (lambda - alpha_i)/beta_i]] (indices mod q).
/// trace M(0) equals the trace of the orbit's monodromy, and
/// det(H_q - lambda I) = (-1)^q beta_0...beta_{q-1} (trace M(lambda) - 2).
inline HillResult hill_discriminant(const PeriodicJacobiMatrix& h, double lambda) {
    if (h.corner_sign != +1)
        throw ValidationError(ErrorCode::InvalidArgument,
                              "Hill discriminant is defined for H_q, not its companion");
    h.validate();
    const int q = h.q();
    Mat2 m;  // identity
    for (int i = 0; i < q; ++i) {
        const double bprev = h.beta[(i + q - 1) % q];
        const Mat2 factor{0.0, 1.0, -bprev / h.beta[i], (lambda - h.alpha[i]) / h.beta[i]};
        m = factor * m;
    }
    return {m.trace(), m};
}

/// beta_0 * beta_1 * ... * beta_{q-1}.
inline double beta_product(const PeriodicJacobiMatrix& h) {
    double p = 1.0;
    for (double b : h.beta) p *= b;
    return p;
}

}  // namespace torsionlab

#endif  // TORSIONLAB_SPECTRAL_HPP
