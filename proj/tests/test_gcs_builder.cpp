#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gcs/calculus.hpp"
#include "gcs/coherent_state.hpp"
#include "oracles.hpp"

using namespace gcs;

namespace {

const auto morse = PotentialModel::morse(1.0);
const Grid morse_grid = default_grid(morse, -2.0, 2.0, 2048);

double density_overlap(const RealField& a, const RealField& b) {
  std::vector<double> w(a.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::sqrt(a[i] * b[i]);
  return integrate(w, a.grid().dx());
}

cplx inner(const ComplexField& a, const ComplexField& b) {
  std::vector<double> re(a.size()), im(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const cplx v = std::conj(a[i]) * b[i];
    re[i] = v.real();
    im[i] = v.imag();
  }
  return {integrate(re, a.grid().dx()), integrate(im, a.grid().dx())};
}

}  // namespace

TEST_SUITE("gcs_builder") {
  TEST_CASE("identity displacement returns the ground state") {
    const auto st = make_coherent_state(morse, morse_grid, {0.0, 0.0, 0.0});
    const auto psi0 = ground_state(morse, morse_grid);
    CHECK(st.translation == TranslationMethod::Identity);
    for (std::size_t i = 0; i < psi0.size(); ++i) REQUIRE(st.psi[i] == cplx(psi0[i]));
  }

  TEST_CASE("pure translation: shifted density, zero phase") {
    const double Q = 0.8;
    const auto st = make_coherent_state(morse, morse_grid, {Q, 0.0, 0.0});
    const auto ref = shifted_ground_state(morse, morse_grid, Q);
    double worst = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      worst = std::max(worst, std::abs(std::norm(st.psi[i]) - ref[i] * ref[i]));
      REQUIRE(st.psi[i].imag() == 0.0);
    }
    CHECK(worst < 1e-10);
    const auto dp = density_phase(st.psi, 1.0);
    for (std::size_t i = 0; i < dp.S.size(); ++i) REQUIRE(std::abs(dp.S[i]) < 1e-12);
  }

  TEST_CASE("harmonic displacement is the Glauber coherent state") {
    const double omega = 1.4, m = 0.9, hbar = 1.1;
    const auto h = PotentialModel::harmonic(omega, m, hbar);
    const Grid g = default_grid(h, -3.0, 3.0, 1024);
    for (const auto& [Q, P] : {std::pair{0.7, -1.3}, std::pair{-2.1, 0.4}, std::pair{1.5, 2.0}}) {
      const auto st = make_coherent_state(h, g, {Q, P, 0.0});
      const double s2 = hbar / (2.0 * m * omega);
      const auto ref = ComplexField::sample(
          g, [&](double x) { return oracle::gaussian_amplitude(x, Q, s2) * std::polar(1.0, P * x / hbar); });
      CHECK(std::abs(inner(ref, st.psi)) > 1.0 - 1e-8);
    }
  }

  TEST_CASE("phase of a displaced state") {
    const double Q = -0.6, P = 1.3;
    const auto st = make_coherent_state(morse, morse_grid, {Q, P, 0.0});
    const auto dp = density_phase(st.psi, 1.0);
    // Compare up to a multiple of 2 pi hbar fixed at the anchor.
    const double offset = dp.S[dp.anchor] - (P * morse_grid.x(dp.anchor) - 0.5 * P * Q);
    CHECK(std::abs(std::remainder(offset, 2.0 * std::numbers::pi)) < 1e-12);
    double worst = 0.0;
    for (std::size_t i = 0; i < dp.S.size(); ++i) {
      if (dp.extrapolated[i]) continue;
      worst = std::max(worst, std::abs(dp.S[i] - offset - (P * morse_grid.x(i) - 0.5 * P * Q)));
    }
    CHECK(worst < 1e-8 * std::abs(P) * morse_grid.length());

    std::vector<cplx> back(dp.rho.size());
    for (std::size_t i = 0; i < back.size(); ++i) back[i] = std::sqrt(dp.rho[i]) * std::polar(1.0, dp.S[i]);
    CHECK(std::abs(inner(ComplexField(morse_grid, back), st.psi)) > 1.0 - 1e-10);
  }

  TEST_CASE("phase jumps beyond the threshold are reported with their location") {
    const Grid g(-10.0, 10.0, 64);
    const double P = 0.95 * std::numbers::pi / g.dx();
    const auto psi =
        ComplexField::sample(g, [&](double x) { return oracle::gaussian_amplitude(x, 0.0, 1.0) * std::polar(1.0, P * x); });
    try {
      density_phase(psi, 1.0);
      FAIL("no exception");
    } catch (const Error& e) {
      CHECK(e.category() == ErrorCategory::Unwrap);
      CHECK(std::string(e.what()).find("x =") != std::string::npos);
    }
  }

  TEST_CASE("alpha label") {
    CHECK(alpha_label({0.0, 0.0, 0.0}, 1.0) == cplx(0.0));
    CHECK(std::abs(alpha_label({1.0, 0.0, 0.0}, 1.0) - cplx(std::sqrt(2.0), 0.0)) < 1e-15);
    CHECK(std::abs(alpha_label({0.0, 1.0, 0.0}, 1.0) - cplx(0.0, std::sqrt(2.0))) < 1e-15);
  }

  TEST_CASE("moments of displaced states") {
    const auto ground = ground_moments(morse, morse_grid);
    for (const auto& [Q, P] : {std::pair{0.3, 0.0}, std::pair{-1.1, 0.9}, std::pair{1.7, -2.2}}) {
      const auto st = make_coherent_state(morse, morse_grid, {Q, P, 0.0});
      CHECK(std::abs(norm(st.psi) - 1.0) < 1e-8);
      CHECK(std::abs(expectation(st.psi, Moment::X, 1.0) - ground.q0 - Q) < 1e-6 * std::sqrt(ground.dq2));
      CHECK(std::abs(expectation(st.psi, Moment::P, 1.0) - P) < 1e-6);
      CHECK(variance(density(st.psi)) == doctest::Approx(ground.dq2).epsilon(1e-8));
    }
  }

  TEST_CASE("translations compose") {
    const auto psi0 = ground_state(morse, morse_grid);
    const auto a = translate(translate(psi0, 0.45, {}), 0.8, {});
    const auto b = translate(psi0, 1.25, {});
    const auto ra = density(to_complex(a));
    const auto rb = density(to_complex(b));
    CHECK(density_overlap(ra, rb) > 1.0 - 1e-10);
  }

  TEST_CASE("translation falls back to interpolation for undecayed fields") {
    // Mass sits on the left edge, so the spectral shift would wrap it around.
    const Grid g(-4.0, 4.0, 256);
    auto bump = [](double x) { return std::exp(-(x + 4.0) * (x + 4.0) / 2.0); };
    const auto f = RealField::sample(g, bump);
    TranslationMethod used{};
    const auto out = translate(f, 0.5, {}, &used);
    CHECK(used == TranslationMethod::Quintic);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
      const double x = g.x(i);
      if (x - 0.5 >= g.x_min()) worst = std::max(worst, std::abs(out[i] - bump(x - 0.5)));
    }
    CHECK(worst < 1e-6);
    translate(ground_state(morse, morse_grid), 0.1, {}, &used);
    CHECK(used == TranslationMethod::Spectral);
  }

  TEST_CASE("displacement off the grid is a coverage error") {
    try {
      make_coherent_state(morse, morse_grid, {60.0, 0.0, 0.0});
      FAIL("no exception");
    } catch (const Error& e) {
      CHECK(e.category() == ErrorCategory::Coverage);
    }
    CHECK_THROWS_AS(make_coherent_state(morse, morse_grid, {std::nan(""), 0.0, 0.0}), Error);
  }
}
