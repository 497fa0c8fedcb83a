#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "torsionlab/maps.hpp"
#include "torsionlab/orbits.hpp"
#include "torsionlab/spectral.hpp"

using namespace torsionlab;
using Catch::Approx;

namespace {

PeriodicOrbit refine_from_seed(const MapDef& map, int p, int q, PhasePoint seed) {
    auto zs = iterate_orbit(map, seed, q);
    std::vector<double> config(q);
    for (int i = 0; i < q; ++i) config[i] = zs[i].x;
    return newton_refine(map, p, q, config);
}

}  // namespace

TEST_CASE("circulant spectra of the integrable case", "[spectral]") {
    const MapDef shear = MapDef::standard(0.0);
    std::vector<double> uniform5(5), uniform6(6);
    for (int i = 0; i < 5; ++i) uniform5[i] = i / 5.0;
    for (int i = 0; i < 6; ++i) uniform6[i] = i / 6.0;

    const auto h5 = hessian_config(shear, uniform5, 1);
    const auto e5 = eigenvalues_sym(h5);
    std::vector<double> want5;
    for (int k = 0; k < 5; ++k) want5.push_back(2.0 - 2.0 * std::cos(kTwoPi * k / 5.0));
    std::sort(want5.begin(), want5.end());
    for (int k = 0; k < 5; ++k) CHECK(e5[k] == Approx(want5[k]).margin(1e-12));

    const auto e6 = eigenvalues_sym(hessian_config(shear, uniform6, 1));
    const std::vector<double> want6{0.0, 1.0, 1.0, 3.0, 3.0, 4.0};
    for (int k = 0; k < 6; ++k) CHECK(e6[k] == Approx(want6[k]).margin(1e-12));

    for (double a : h5.alpha) CHECK(a == Approx(2.0).margin(1e-14));
    for (double b : h5.beta) CHECK(b == -1.0);
}

TEST_CASE("two-point Hessian of the three-harmonic map", "[spectral]") {
    const MapDef map = MapDef::three_harmonic(1.0);
    const PeriodicOrbit orbit = refine_from_seed(map, 1, 2, {0.0, 0.5});
    const auto h = hessian_config(map, orbit);

    // diagonal entries are the 1-cone values 2 + g'(x_i); q = 2 coupling -2
    CHECK(h.alpha[0] == Approx(2.0 - kTwoPi * 0.99).margin(1e-12));
    CHECK(h.alpha[1] == Approx(2.0 - kTwoPi * 0.69).margin(1e-12));
    const Eigen::MatrixXd dense = h.dense();
    CHECK(dense(0, 1) == Approx(-2.0).margin(1e-14));

    const auto eig = eigenvalues_sym(h);
    CHECK(eig[0] == Approx(-5.48881762834532).margin(1e-8));
    CHECK(eig[1] == Approx(-1.06693368771638).margin(1e-8));
    CHECK(morse_index(eig).index == 2);

    // companion: the couplings cancel, leaving the diagonal
    const auto hm = companion_minus(h);
    const Eigen::MatrixXd dm = hm.dense();
    CHECK(dm(0, 1) == Approx(0.0).margin(1e-14));
    const auto eigm = eigenvalues_sym(hm);
    CHECK(eigm[0] == Approx(h.alpha[0]).margin(1e-12));
    CHECK(eigm[1] == Approx(h.alpha[1]).margin(1e-12));
}

TEST_CASE("five-point Hessian spectrum at the golden orbit", "[spectral]") {
    const MapDef map = MapDef::standard(2.87);
    const PeriodicOrbit orbit = refine_from_seed(map, 3, 5, {0.5, 0.323020669964897189});
    const auto eig = eigenvalues_sym(hessian_config(map, orbit));
    const std::vector<double> want{0.04121176201302, 0.53521014626564, 3.88911846604733,
                                   5.36539881978110, 5.89051890157580};
    REQUIRE(eig.size() == 5);
    for (int k = 0; k < 5; ++k) CHECK(eig[k] == Approx(want[k]).margin(1e-8));
    CHECK(morse_index(eig).index == 0);
}

TEST_CASE("companion characteristic polynomial offset", "[spectral]") {
    // det(Hq^- - x I) - det(Hq - x I) = 4 (-1)^q beta_0...beta_{q-1}
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ux(-6.0, 6.0);
    const MapDef map = MapDef::standard(2.87);
    const PeriodicOrbit orbit = refine_from_seed(map, 3, 5, {0.5, 0.323020669964897189});
    const auto h = hessian_config(map, orbit);
    const auto hm = companion_minus(h);
    const int q = h.q();
    const double offset = 4.0 * (q % 2 == 0 ? 1.0 : -1.0) * beta_product(h);
    for (int i = 0; i < 20; ++i) {
        const double x = ux(rng);
        const Eigen::MatrixXd a =
            h.dense() - x * Eigen::MatrixXd::Identity(q, q);
        const Eigen::MatrixXd b =
            hm.dense() - x * Eigen::MatrixXd::Identity(q, q);
        const double lhs = b.determinant() - a.determinant();
        CHECK(lhs == Approx(offset).epsilon(1e-9).margin(1e-9));
    }
}

TEST_CASE("corner flip on a toy matrix", "[spectral]") {
    PeriodicJacobiMatrix h;
    h.alpha = {1.0, 1.0, 1.0};
    h.beta = {-1.0, -1.0, -1.0};
    const auto hm = companion_minus(h);
    const Eigen::MatrixXd d = hm.dense();
    CHECK(d(0, 2) == 1.0);
    CHECK(d(2, 0) == 1.0);
    CHECK(d(0, 1) == -1.0);
    CHECK_THROWS_AS(companion_minus(hm), ValidationError);
}

TEST_CASE("Hill formula and the discriminant", "[spectral]") {
    const MapDef map = MapDef::standard(1.4578);
    const PeriodicOrbit orbit = refine_from_seed(map, 8, 13, {0.5, 0.7237177352891645});
    const auto h = hessian_config(map, orbit);
    const int q = h.q();
    const double bp = beta_product(h);
    const double sign = (q % 2 == 0) ? 1.0 : -1.0;

    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> ux(-8.0, 8.0);
    for (int i = 0; i < 25; ++i) {
        const double lam = ux(rng);
        const double det =
            (h.dense() - lam * Eigen::MatrixXd::Identity(q, q)).determinant();
        const double viaHill = sign * bp * (hill_discriminant(h, lam).trace - 2.0);
        CHECK(det == Approx(viaHill).epsilon(1e-8).margin(1e-8));
    }

    // trace M(0) equals the monodromy trace of the orbit
    const ResidueTrace rt = residue_and_trace(map, orbit);
    const HillResult at0 = hill_discriminant(h, 0.0);
    CHECK(at0.trace == Approx(rt.trace).margin(1e-8));
    CHECK(at0.monodromy.det() == Approx(1.0).margin(1e-9));
}

TEST_CASE("Hill discriminant at a double eigenvalue of the circulant", "[spectral]") {
    const MapDef shear = MapDef::standard(0.0);
    std::vector<double> uniform4(4);
    for (int i = 0; i < 4; ++i) uniform4[i] = 0.1 + i / 4.0;
    const auto h = hessian_config(shear, uniform4, 1);
    // lambda = 2 is a double eigenvalue of H_4 = circulant(2,-1,0,-1)
    CHECK(hill_discriminant(h, 2.0).trace == Approx(2.0).margin(1e-12));
}

TEST_CASE("Hill discriminant leading behavior", "[spectral]") {
    const MapDef map = MapDef::standard(2.87);
    const PeriodicOrbit orbit = refine_from_seed(map, 3, 5, {0.5, 0.323020669964897189});
    const auto h = hessian_config(map, orbit);
    const double bp = beta_product(h);
    double alpha_sum = 0.0;
    for (double a : h.alpha) alpha_sum += std::abs(a);

    auto rel = [&](double lam) {
        const double lead = std::pow(lam, h.q());
        return std::abs(hill_discriminant(h, lam).trace * bp - lead) / std::abs(lead);
    };
    const double r4 = rel(1e4), r5 = rel(1e5);
    CHECK(r4 < 2.0 * (alpha_sum + 2.0 * h.q()) / 1e4);
    CHECK(r5 < r4 / 5.0);  // vanishes as lambda grows
}

TEST_CASE("interlacing of H and its companion", "[spectral]") {
    const MapDef map = MapDef::standard(3.0);
    for (PhasePoint seed : {PhasePoint{-0.387429398213243, 0.225141203573513},
                            PhasePoint{0.0, 0.390375216334041475},
                            PhasePoint{-0.5, 0.008258333079127612}}) {
        const PeriodicOrbit orbit = refine_from_seed(map, 1, 7, seed);
        const auto h = hessian_config(map, orbit);
        const auto lam = eigenvalues_sym(h);
        const auto lamp = eigenvalues_sym(companion_minus(h));
        REQUIRE(lam.size() == lamp.size());
        const int q = static_cast<int>(lam.size());
        // merged pattern lam0, lam'0, lam'1, lam1, lam2, lam'2, lam'3, ...
        // must be non-decreasing (ties only at multiplicity-2 roots)
        std::vector<double> merged{lam[0]};
        int i = 1, j = 0;
        bool take_prime = true;
        while (i < q || j < q) {
            if (take_prime)
                for (int t = 0; t < 2 && j < q; ++t) merged.push_back(lamp[j++]);
            else
                for (int t = 0; t < 2 && i < q; ++t) merged.push_back(lam[i++]);
            take_prime = !take_prime;
        }
        for (std::size_t k = 0; k + 1 < merged.size(); ++k)
            CHECK(merged[k] <= merged[k + 1] + 1e-9);
    }
}

TEST_CASE("phase-coordinate Hessian matches the configuration one", "[spectral]") {
    const MapDef map = MapDef::standard(2.87);
    const PeriodicOrbit orbit = refine_from_seed(map, 3, 5, {0.5, 0.323020669964897189});
    const auto hc = hessian_config(map, orbit);
    const auto hp = hessian_phase(map, orbit);
    for (int i = 0; i < hc.q(); ++i) {
        CHECK(hp.alpha[i] == Approx(hc.alpha[i]).margin(1e-12));
        CHECK(hp.beta[i] == Approx(hc.beta[i]).margin(1e-12));
    }
    CHECK(morse_index(eigenvalues_sym(hp)).index ==
          morse_index(eigenvalues_sym(hc)).index);
}

TEST_CASE("morse index and the zero tolerance", "[spectral]") {
    const MorseIndex a = morse_index({-2.0, -1.0, 0.5, 3.0});
    CHECK(a.index == 2);
    CHECK_FALSE(a.has_zero);

    const MorseIndex b = morse_index({-1.0, 1e-12, 2.0});
    CHECK(b.index == 1);
    CHECK(b.has_zero);

    // scale-relative default: 1e-6 is a zero next to 1e5
    const MorseIndex c = morse_index({-1e5, 1e-6, 2e5});
    CHECK(c.index == 1);
    CHECK(c.has_zero);

    const MorseIndex d = morse_index({-1e5, 1e-6, 2.0}, 1e-9);
    CHECK_FALSE(d.has_zero);
}

TEST_CASE("builders reject q = 1", "[spectral]") {
    const MapDef map = MapDef::standard(1.0);
    std::vector<double> single{0.0};
    CHECK_THROWS_AS(hessian_config(map, single, 0), ValidationError);
}
