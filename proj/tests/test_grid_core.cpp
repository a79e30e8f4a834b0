#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gcs/calculus.hpp"
#include "gcs/models.hpp"
#include "oracles.hpp"

using namespace gcs;

namespace {

template <class F>
ErrorCategory category_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.category();
  }
  FAIL("expected an exception");
  return ErrorCategory::Diagnostics;
}

double max_abs_diff(const RealField& a, const std::function<double(double)>& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - f(a.grid().x(i))));
  return m;
}

}  // namespace

TEST_SUITE("grid_core") {
  TEST_CASE("grid spacing and endpoints") {
    const Grid g(-3.0, 7.0, 1001);
    CHECK(g.dx() * 1000.0 == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(g.x(0) == -3.0);
    CHECK(g.x(1000) == 7.0);
    CHECK(g.index_of(g.x(250)) == doctest::Approx(250.0));
  }

  TEST_CASE("grid preconditions") {
    CHECK(category_of([] { Grid(0.0, 1.0, 15); }) == ErrorCategory::Precondition);
    CHECK(category_of([] { Grid(1.0, 1.0, 64); }) == ErrorCategory::Precondition);
    CHECK(category_of([] { Grid(2.0, 1.0, 64); }) == ErrorCategory::Precondition);
  }

  TEST_CASE("fields reject non-finite samples and size mismatches") {
    const Grid g(0.0, 1.0, 16);
    std::vector<double> v(16, 1.0);
    v[7] = std::nan("");
    CHECK(category_of([&] { RealField(g, v); }) == ErrorCategory::InvalidField);
    CHECK(category_of([&] { RealField(g, std::vector<double>(15, 0.0)); }) == ErrorCategory::InvalidField);
    std::vector<cplx> c(16, cplx(0.0, std::numeric_limits<double>::infinity()));
    CHECK(category_of([&] { ComplexField(g, c); }) == ErrorCategory::InvalidField);
    const RealField a(g, std::vector<double>(16, 0.0));
    const RealField b(Grid(0.0, 2.0, 16), std::vector<double>(16, 0.0));
    CHECK(category_of([&] { linear_combination(1.0, a, 1.0, b); }) == ErrorCategory::InvalidField);
  }

  TEST_CASE("spectral second derivative of a periodic sine") {
    const std::size_t n = 128;
    const double L = 2.0 * std::numbers::pi;
    const Grid g(0.0, L * (n - 1) / n, n);
    const double k = 3.0;
    const auto f = RealField::sample(g, [&](double x) { return std::sin(k * x); });
    const auto d2 = second_derivative(f, DerivativeMethod::Spectral);
    CHECK(max_abs_diff(d2, [&](double x) { return -k * k * std::sin(k * x); }) < 1e-10);
    const auto cf = to_complex(f);
    const auto cd2 = second_derivative(cf, DerivativeMethod::Spectral);
    CHECK(std::abs(cd2[17] - cplx(-k * k * std::sin(k * g.x(17)))) < 1e-10);
  }

  TEST_CASE("derivatives of a constant vanish") {
    const Grid g(-1.0, 1.0, 33);
    const auto f = RealField::sample(g, [](double) { return 2.5; });
    for (auto m : {DerivativeMethod::Spectral, DerivativeMethod::Central5}) {
      CHECK(max_abs_diff(second_derivative(f, m), [](double) { return 0.0; }) < 1e-9);
      CHECK(max_abs_diff(first_derivative(f, m), [](double) { return 0.0; }) < 1e-9);
    }
  }

  TEST_CASE("Gaussian second derivative") {
    const Grid g(-10.0, 10.0, 512);
    const auto f = RealField::sample(g, [](double x) { return std::exp(-x * x / 2.0); });
    const auto exact = [](double x) { return (x * x - 1.0) * std::exp(-x * x / 2.0); };
    CHECK(max_abs_diff(second_derivative(f, DerivativeMethod::Spectral), exact) < 1e-8);
    CHECK(max_abs_diff(first_derivative(f, DerivativeMethod::Spectral),
                       [](double x) { return -x * std::exp(-x * x / 2.0); }) < 1e-8);
  }

  TEST_CASE("spectral and five-point derivatives agree to fourth order") {
    auto gap = [](std::size_t n) {
      const Grid g(-10.0, 10.0, n);
      const auto f = RealField::sample(g, [](double x) { return std::exp(-x * x / 2.0); });
      const auto a = second_derivative(f, DerivativeMethod::Spectral);
      const auto b = second_derivative(f, DerivativeMethod::Central5);
      double m = 0.0;
      for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
      return m;
    };
    const double coarse = gap(201);
    const double fine = gap(401);
    CHECK(coarse / fine == doctest::Approx(16.0).epsilon(0.15));
  }

  TEST_CASE("quadrature") {
    for (std::size_t n : {64, 65}) {
      const Grid g(0.0, 1.0, n);
      CHECK(integrate(RealField::sample(g, [](double) { return 1.0; })) == doctest::Approx(1.0).epsilon(1e-15));
    }
    const Grid g(-8.0, 8.0, 401);
    const auto f = RealField::sample(g, [](double x) { return std::exp(-x * x); });
    CHECK(std::abs(integrate(f) - std::sqrt(std::numbers::pi)) < 1e-10);

    const auto h = RealField::sample(g, [](double x) { return std::cos(x) * std::exp(-x * x / 4.0); });
    const double lhs = integrate(linear_combination(2.0, f, -3.0, h));
    CHECK(std::abs(lhs - (2.0 * integrate(f) - 3.0 * integrate(h))) < 1e-14);
  }

  TEST_CASE("Morse ground density is normalized on [-8, 25]") {
    const auto model = PotentialModel::morse(1.0);
    const Grid g(-8.0, 25.0, 2048);
    const auto psi = ground_state(model, g);
    CHECK(std::abs(integrate(density(to_complex(psi))) - 1.0) < 1e-8);
  }

  TEST_CASE("expectation values") {
    const Grid g(-20.0, 20.0, 1024);
    const double s2 = 1.3;
    const auto gauss = ComplexField::sample(g, [&](double x) { return cplx(oracle::gaussian_amplitude(x, 0.0, s2)); });
    CHECK(std::abs(expectation(gauss, Moment::X, 1.0)) < 1e-10);
    CHECK(expectation(gauss, Moment::X2, 1.0) == doctest::Approx(s2).epsilon(1e-10));

    const double k = 1.7;
    const double hbar = 0.8;
    const auto wave = ComplexField::sample(
        g, [&](double x) { return oracle::gaussian_amplitude(x, 0.3, s2) * std::polar(1.0, k * x); });
    CHECK(std::abs(expectation(wave, Moment::P, hbar) - hbar * k) < 1e-8);
    // <p^2> = (hbar k)^2 + hbar^2 / (4 s2)
    CHECK(expectation(wave, Moment::P2, hbar) ==
          doctest::Approx(hbar * hbar * (k * k + 1.0 / (4.0 * s2))).epsilon(1e-8));
    CHECK(std::abs(momentum_matrix_element(wave, hbar).imag()) < 1e-12);
  }

  TEST_CASE("expectation refuses unnormalized states and reports the norm") {
    const Grid g(-20.0, 20.0, 256);
    const auto psi = ComplexField::sample(g, [](double x) { return cplx(2.0 * oracle::gaussian_amplitude(x, 0, 1)); });
    try {
      expectation(psi, Moment::X, 1.0);
      FAIL("no exception");
    } catch (const Error& e) {
      CHECK(e.category() == ErrorCategory::Precondition);
      CHECK(std::string(e.what()).find("4.0") != std::string::npos);
    }
  }

  TEST_CASE("boundary mass sees only the edge samples") {
    const Grid g(0.0, 1.0, 101);
    std::vector<double> v(101, 0.0);
    v[2] = 1.0;
    v[50] = 5.0;
    const RealField rho(g, v);
    CHECK(boundary_mass(rho, 5) == doctest::Approx(0.01));
    CHECK(boundary_mass(rho, 2) == 0.0);
  }

  TEST_CASE("Fornberg weights reproduce the classical stencils") {
    const std::vector<double> nodes{-1.0, 0.0, 1.0};
    const auto w = fornberg_weights(0.0, nodes, 2);
    CHECK(w[2][0] == doctest::Approx(1.0));
    CHECK(w[2][1] == doctest::Approx(-2.0));
    CHECK(w[2][2] == doctest::Approx(1.0));
    CHECK(w[1][0] == doctest::Approx(-0.5));
    CHECK(w[1][2] == doctest::Approx(0.5));
    CHECK(w[0][1] == doctest::Approx(1.0));
  }

  TEST_CASE("local interpolation is exact for quintics") {
    const Grid g(-2.0, 3.0, 41);
    auto p = [](double x) { return 1.0 - x + 0.5 * x * x * x - 0.1 * std::pow(x, 5); };
    auto dp = [](double x) { return -1.0 + 1.5 * x * x - 0.5 * std::pow(x, 4); };
    const auto f = RealField::sample(g, p);
    for (double x : {-1.93, -0.41, 0.0, 1.234, 2.99}) {
      CHECK(interpolate(f, x) == doctest::Approx(p(x)).epsilon(1e-12));
      CHECK(interpolate_derivative(f, x) == doctest::Approx(dp(x)).epsilon(1e-10));
    }
    CHECK(category_of([&] { interpolate(f, 3.5); }) == ErrorCategory::Precondition);
  }

  TEST_CASE("spectral translation of a decayed Gaussian") {
    const Grid g(-20.0, 20.0, 512);
    const auto f = RealField::sample(g, [](double x) { return std::exp(-x * x / 2.0); });
    const double s = 1.2345;
    CHECK(max_abs_diff(spectral_shift(f, s), [&](double x) { return std::exp(-(x - s) * (x - s) / 2.0); }) < 1e-12);
    CHECK(max_abs_diff(interpolated_shift(f, s), [&](double x) { return std::exp(-(x - s) * (x - s) / 2.0); }) <
          1e-6);
  }
}
