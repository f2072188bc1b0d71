#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fringe/interferometer.hpp"
#include "support/fixtures.hpp"

using namespace fringe;
using fixtures::code_of;
using fixtures::diff;

namespace {

// Smallest signed angle between two phases.
double wrap_angle(double x) { return std::remainder(x, kTwoPi); }

}  // namespace

TEST_CASE("complex_visibility") {
  DensityMatrix mixed2 = maximally_mixed(2);
  SECTION("identity arms give 1 for any state") {
    KrausChannel id = identity_channel(2);
    REQUIRE(std::abs(complex_visibility(id, id, mixed2) - 1.0) <= 1e-14);
    REQUIRE(std::abs(complex_visibility(id, id, fixtures::random_density(2, 7)) - 1.0) <=
            1e-14);
  }
  SECTION("Z against identity on the mixed state vanishes") {
    KrausChannel z = validate({fixtures::pauli_z()}, 2);
    REQUIRE(std::abs(complex_visibility(z, identity_channel(2), mixed2)) <= 1e-14);
  }
  SECTION("a flag channel kills the visibility against anything") {
    KrausChannel flag = fixtures::flag_channel(fixtures::random_unitary(2, 9));
    REQUIRE(std::abs(complex_visibility(flag, identity_channel(2), mixed2)) == 0.0);
    REQUIRE(std::abs(complex_visibility(flag, random_channel(2, 3, 10),
                                        fixtures::random_density(2, 11))) == 0.0);
  }
  SECTION("single-operator channels reduce to tr[rho U^dag V]") {
    ComplexMatrix u = fixtures::random_unitary(3, 13);
    ComplexMatrix v = fixtures::random_unitary(3, 14);
    DensityMatrix rho = fixtures::random_density(3, 15);
    Complex z = complex_visibility(validate({u}, 3), validate({v}, 3), rho);
    REQUIRE(std::abs(z - (u.adjoint() * v * rho.matrix).trace()) == 0.0);
    // On the maximally mixed state, d*z = tr[U^dag V].
    Complex z_mixed = complex_visibility(validate({u}, 3), validate({v}, 3), maximally_mixed(3));
    REQUIRE(std::abs(3.0 * z_mixed - (u.adjoint() * v).trace()) <= 1e-12);
  }
  SECTION("dimension mismatch") {
    REQUIRE(code_of([&] {
              complex_visibility(identity_channel(3), identity_channel(2), mixed2);
            }) == Errc::dimension_mismatch);
  }
}

TEST_CASE("simulate_pattern closed forms") {
  DensityMatrix mixed2 = maximally_mixed(2);
  SECTION("identity arms: (1 + cos phi)/2 on the canonical grid") {
    InterferencePattern p = simulate_pattern(identity_channel(2), identity_channel(2), mixed2, 16);
    REQUIRE(p.phases.size() == 16);
    for (std::size_t k = 0; k < 16; ++k) {
      double phi = kTwoPi * static_cast<double>(k) / 16.0;
      REQUIRE(std::abs(p.phases[k] - phi) <= 1e-15);
      REQUIRE(std::abs(p.probabilities[k] - 0.5 * (1.0 + std::cos(phi))) <= 1e-14);
    }
  }
  SECTION("orthogonal unitaries: flat at 1/2") {
    InterferencePattern p =
        simulate_pattern(validate({fixtures::pauli_z()}, 2), identity_channel(2), mixed2, 8);
    for (double prob : p.probabilities) REQUIRE(std::abs(prob - 0.5) <= 1e-14);
  }
  SECTION("phase flip in both arms: visibility 0.75") {
    KrausChannel pf = fixtures::phase_flip(0.25);
    InterferencePattern p = simulate_pattern(pf, pf, mixed2, 8);
    for (std::size_t k = 0; k < 8; ++k)
      REQUIRE(std::abs(p.probabilities[k] - 0.5 * (1.0 + 0.75 * std::cos(p.phases[k]))) <=
              1e-14);
  }
  SECTION("probabilities stay in [0, 1] for random inputs") {
    InterferencePattern p = simulate_pattern(random_channel(3, 4, 21), random_channel(3, 2, 22),
                                             fixtures::random_density(3, 23), 32);
    for (double prob : p.probabilities) {
      REQUIRE(prob >= -1e-12);
      REQUIRE(prob <= 1.0 + 1e-12);
    }
  }
  SECTION("sample count must be at least 3") {
    REQUIRE(code_of([&] {
              simulate_pattern(identity_channel(2), identity_channel(2), mixed2, 2);
            }) == Errc::bad_sample_count);
  }
}

TEST_CASE("simulate_pattern_dilated") {
  DensityMatrix mixed2 = maximally_mixed(2);
  SECTION("identity dilations reproduce the unit fringe") {
    StinespringDilation id = dilate(identity_channel(2));
    InterferencePattern p = simulate_pattern_dilated(id, id, mixed2, 12);
    for (std::size_t k = 0; k < 12; ++k)
      REQUIRE(std::abs(p.probabilities[k] - 0.5 * (1.0 + std::cos(p.phases[k]))) <= 1e-12);
  }
  SECTION("flag channel against a unitary: flat at 1/2") {
    ComplexMatrix u = fixtures::random_unitary(2, 31);
    InterferencePattern p = simulate_pattern_dilated(
        dilate(fixtures::flag_channel(u)), dilate(validate({u}, 2)), mixed2, 8);
    for (double prob : p.probabilities) REQUIRE(std::abs(prob - 0.5) <= 1e-12);
  }
  SECTION("matches the Kraus-level simulation on random channel pairs") {
    const std::uint64_t seed = GENERATE(41u, 42u, 43u);
    const Index d = GENERATE(Index{2}, Index{3});
    KrausChannel u = random_channel(d, 4, seed);
    KrausChannel v = random_channel(d, 3, seed + 100);
    for (const DensityMatrix& rho :
         {fixtures::random_density(d, seed + 200), fixtures::random_pure(d, seed + 300)}) {
      InterferencePattern direct = simulate_pattern(u, v, rho, 16);
      InterferencePattern oracle = simulate_pattern_dilated(dilate(u), dilate(v), rho, 16);
      for (std::size_t k = 0; k < 16; ++k)
        REQUIRE(std::abs(direct.probabilities[k] - oracle.probabilities[k]) <= 1e-10);
    }
  }
  SECTION("dimension mismatch") {
    REQUIRE(code_of([&] {
              simulate_pattern_dilated(dilate(identity_channel(3)),
                                       dilate(identity_channel(2)), mixed2, 8);
            }) == Errc::dimension_mismatch);
  }
}

TEST_CASE("extract_visibility") {
  SECTION("unit fringe") {
    InterferencePattern p =
        simulate_pattern(identity_channel(2), identity_channel(2), maximally_mixed(2), 64);
    VisibilityEstimate est = extract_visibility(p);
    REQUIRE(std::abs(est.v - 1.0) <= 1e-12);
    REQUIRE(std::abs(est.alpha) <= 1e-12);
    REQUIRE_FALSE(est.degenerate);
  }
  SECTION("synthetic v = 0.5, alpha = pi/3") {
    InterferencePattern p;
    for (int k = 0; k < 64; ++k) {
      double phi = kTwoPi * k / 64.0;
      p.phases.push_back(phi);
      p.probabilities.push_back(0.5 * (1.0 + 0.5 * std::cos(phi - kPi / 3.0)));
    }
    VisibilityEstimate est = extract_visibility(p);
    REQUIRE(std::abs(est.v - 0.5) <= 1e-12);
    REQUIRE(std::abs(est.alpha - kPi / 3.0) <= 1e-12);
  }
  SECTION("alpha = pi lands on the positive branch boundary") {
    InterferencePattern p;
    for (int k = 0; k < 16; ++k) {
      double phi = kTwoPi * k / 16.0;
      p.phases.push_back(phi);
      p.probabilities.push_back(0.5 * (1.0 - std::cos(phi))); // v=1, alpha=pi
    }
    VisibilityEstimate est = extract_visibility(p);
    REQUIRE(std::abs(est.v - 1.0) <= 1e-12);
    REQUIRE(est.alpha > 0.0);
    REQUIRE(std::abs(est.alpha - kPi) <= 1e-12);
  }
  SECTION("flat pattern is degenerate") {
    InterferencePattern p;
    for (int k = 0; k < 8; ++k) {
      p.phases.push_back(kTwoPi * k / 8.0);
      p.probabilities.push_back(0.5);
    }
    VisibilityEstimate est = extract_visibility(p);
    REQUIRE(est.degenerate);
    REQUIRE(est.v == 0.0);
    REQUIRE(est.alpha == 0.0);
  }
  SECTION("round trip against the closed form on random channels") {
    const std::uint64_t seed = GENERATE(51u, 52u);
    KrausChannel u = random_channel(2, 2, seed);
    KrausChannel v = random_channel(2, 4, seed + 10);
    DensityMatrix rho = fixtures::random_density(2, seed + 20);
    VisibilityEstimate from_pattern = extract_visibility(simulate_pattern(u, v, rho, 64));
    VisibilityEstimate from_z = visibility_from_z(complex_visibility(u, v, rho));
    REQUIRE(std::abs(from_pattern.v - from_z.v) <= 1e-10);
    if (!from_z.degenerate)
      REQUIRE(std::abs(wrap_angle(from_pattern.alpha - from_z.alpha)) <= 1e-10);
  }
  SECTION("grid validation") {
    InterferencePattern p;
    for (int k = 0; k < 2; ++k) {
      p.phases.push_back(kPi * k);
      p.probabilities.push_back(0.5);
    }
    REQUIRE(code_of([&] { extract_visibility(p); }) == Errc::too_few_samples);
    InterferencePattern q;
    for (int k = 0; k < 8; ++k) {
      q.phases.push_back(kTwoPi * k / 8.0);
      q.probabilities.push_back(0.5);
    }
    q.phases[3] += 1e-6;
    REQUIRE(code_of([&] { extract_visibility(q); }) == Errc::non_uniform_grid);
    q.phases[3] -= 1e-6;
    q.probabilities.pop_back();
    REQUIRE(code_of([&] { extract_visibility(q); }) == Errc::dimension_mismatch);
  }
}

TEST_CASE("visibility_from_z") {
  VisibilityEstimate zero = visibility_from_z(Complex(0.0, 0.0));
  REQUIRE(zero.degenerate);
  REQUIRE(zero.v == 0.0);
  REQUIRE(zero.alpha == 0.0);
  VisibilityEstimate neg = visibility_from_z(Complex(-0.5, 0.0));
  REQUIRE(neg.v == Catch::Approx(0.5));
  REQUIRE(neg.alpha == Catch::Approx(kPi));
  REQUIRE(neg.alpha > 0.0);
}

TEST_CASE("unitary_distance") {
  SECTION("coincident unitaries are at distance zero") {
    ComplexMatrix u = fixtures::random_unitary(3, 61);
    REQUIRE(unitary_distance(u, u) <= 1e-12);
  }
  SECTION("I and Z are at squared distance 4") {
    REQUIRE(unitary_distance(ComplexMatrix::Identity(2, 2), fixtures::pauli_z()) ==
            Catch::Approx(4.0).margin(1e-12));
  }
  SECTION("a global phase i also costs 4") {
    ComplexMatrix iu = Complex(0.0, 1.0) * ComplexMatrix::Identity(2, 2);
    REQUIRE(unitary_distance(ComplexMatrix::Identity(2, 2), iu) ==
            Catch::Approx(4.0).margin(1e-12));
  }
  SECTION("agrees with the direct Frobenius norm") {
    ComplexMatrix u = fixtures::random_unitary(3, 63);
    ComplexMatrix v = fixtures::random_unitary(3, 64);
    REQUIRE(std::abs(unitary_distance(u, v) - (u - v).squaredNorm()) <= 1e-10);
  }
  SECTION("agrees with the interferometric estimate") {
    const Index d = 3;
    ComplexMatrix u = fixtures::random_unitary(d, 65);
    ComplexMatrix v = fixtures::random_unitary(d, 66);
    VisibilityEstimate est = extract_visibility(
        simulate_pattern(validate({u}, d), validate({v}, d), maximally_mixed(d), 64));
    double from_fringe = 2.0 * d * (1.0 - est.v * std::cos(est.alpha));
    REQUIRE(std::abs(unitary_distance(u, v) - from_fringe) <= 1e-10);
  }
  SECTION("rejections") {
    REQUIRE(code_of([] {
              unitary_distance(2.0 * ComplexMatrix::Identity(2, 2),
                               ComplexMatrix::Identity(2, 2));
            }) == Errc::not_unitary);
    REQUIRE(code_of([] {
              unitary_distance(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3));
            }) == Errc::dimension_mismatch);
  }
}
