#include <doctest.h>

#include <random>

#include "ssns/error.hpp"
#include "ssns/fft.hpp"
#include "ssns/grid.hpp"
#include "ssns/spectral.hpp"
#include "ssns/validation.hpp"
#include "support.hpp"

using namespace ssns;
using test::two_pi;

TEST_CASE("grid rejects bad sizes") {
  CHECK_THROWS_AS(Grid(12, 1.0), ValidationError);
  CHECK_THROWS_AS(Grid(4, 1.0), ValidationError);
  CHECK_THROWS_AS(Grid(16, 0.0), ValidationError);
  CHECK_THROWS_AS(Grid(16, -1.0), ValidationError);
  const Grid g(16, two_pi);
  CHECK(g.half() == 9);
  CHECK(g.mode_number(8) == 8);
  CHECK(g.mode_number(9) == -7);
  CHECK(g.derivative_wavenumber(8) == 0.0);
  CHECK(g.wavenumber(8) == doctest::Approx(8.0));
  CHECK(g.dealias_cutoff() == 5);
}

TEST_CASE("transform round trip and single mode") {
  const Grid g(32, two_pi);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> dist;
  ScalarField f(g, Representation::physical);
  for (double& v : f.values()) v = dist(rng);
  const ScalarField back = to_physical(to_spectral(f));
  CHECK(test::max_abs_diff(back, f) / test::max_abs(f) <= 1e-13);

  const ScalarField c = test::sample(g, [](double x, double y, double) { return std::cos(3 * x + 2 * y); });
  const ScalarField ch = to_spectral(c);
  const double n3 = static_cast<double>(g.point_count());
  CHECK(std::abs(ch.modes()[g.mode_index(3, 2, 0)] - Complex(n3 / 2, 0)) <= 1e-9 * n3);
  CHECK_THROWS_AS(to_physical(f), ValidationError);
  CHECK_THROWS_AS(to_spectral(ch), ValidationError);
}

TEST_CASE("projector invariants") {
  const Grid g(16, two_pi);
  const VelocityField f = random_velocity(g, 11, 7, false);
  const VelocityField p = leray_project(f);
  CHECK(test::max_abs_diff(leray_project(p), p) <= 1e-14 * test::max_abs(f));
  CHECK(divergence_sup(p) <= 1e-12);
  const VelocityField fp = to_physical(f), pp = to_physical(p);
  CHECK(std::abs(inner_product(pp, add(fp, pp, -1.0))) <= 1e-10 * l2_norm_squared(fp));
  // Mean mode passes through.
  for (int c = 0; c < 3; ++c) CHECK(p[c].modes()[0] == f[c].modes()[0]);
}

TEST_CASE("spectral divergence matches the analytic derivative") {
  const Grid g(32, two_pi);
  VelocityField u({test::sample(g, [](double x, double y, double) { return std::sin(2 * x) * std::cos(y); }),
                   test::sample(g, [](double, double y, double z) { return std::cos(3 * y + z); }),
                   test::sample(g, [](double x, double, double z) { return std::sin(x - 2 * z); })},
                  0.0);
  const ScalarField d = to_physical(divergence(to_spectral(u)));
  const ScalarField exact = test::sample(g, [](double x, double y, double z) {
    return 2 * std::cos(2 * x) * std::cos(y) - 3 * std::sin(3 * y + z) - 2 * std::cos(x - 2 * z);
  });
  CHECK(test::max_abs_diff(d, exact) <= 1e-12);

  // Second-order central differences converge on the same value.
  const ScalarField ux = u[0];
  const double h = g.spacing();
  double worst = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    const int ip = (i + 1) % g.n(), im = (i + g.n() - 1) % g.n();
    const double fd = (ux.values()[g.point_index(ip, 5, 7)] - ux.values()[g.point_index(im, 5, 7)]) / (2 * h);
    const double x = i * h, y = 5 * h;
    worst = std::max(worst, std::abs(fd - 2 * std::cos(2 * x) * std::cos(y)));
  }
  CHECK(worst <= 2.0 * h * h * 8 / 6);
}

TEST_CASE("gradient and laplacian of a mode") {
  const Grid g(16, two_pi);
  const ScalarField phi = to_spectral(test::sample(g, [](double x, double y, double z) { return std::sin(x + 2 * y - z); }));
  const VelocityField gr = to_physical(gradient(phi));
  const ScalarField lap = to_physical(laplacian(phi));
  const ScalarField c = test::sample(g, [](double x, double y, double z) { return std::cos(x + 2 * y - z); });
  const ScalarField s = test::sample(g, [](double x, double y, double z) { return std::sin(x + 2 * y - z); });
  double worst = 0.0;
  for (std::size_t i = 0; i < g.point_count(); ++i) {
    worst = std::max(worst, std::abs(gr[0].values()[i] - c.values()[i]));
    worst = std::max(worst, std::abs(gr[1].values()[i] - 2 * c.values()[i]));
    worst = std::max(worst, std::abs(gr[2].values()[i] + c.values()[i]));
    worst = std::max(worst, std::abs(lap.values()[i] + 6 * s.values()[i]));
  }
  CHECK(worst <= 1e-12);
}

namespace {

// Continuum transform of the normalized bump at |k| eps = a, by radial quadrature.
double bump_transform(double a) {
  const int m = 200000;
  double num = 0.0, den = 0.0;
  for (int i = 1; i < m; ++i) {
    const double s = static_cast<double>(i) / m;
    const double rho = std::exp(-1.0 / (1.0 - s * s));
    num += rho * s * s * std::sin(a * s) / (a * s);
    den += rho * s * s;
  }
  return num / den;
}

// Direct lattice sum of cos(k x) against the sampled bump, normalized.
double lattice_transform(const Grid& g, double eps, int k) {
  double num = 0.0, den = 0.0;
  const double h = g.spacing();
  for (int c = 0; c < g.n(); ++c)
    for (int b = 0; b < g.n(); ++b)
      for (int a = 0; a < g.n(); ++a) {
        const double x = g.mode_number(a) * h, y = g.mode_number(b) * h, z = g.mode_number(c) * h;
        const double s2 = (x * x + y * y + z * z) / (eps * eps);
        if (s2 >= 1.0) continue;
        const double rho = std::exp(-1.0 / (1.0 - s2));
        num += rho * std::cos(k * x);
        den += rho;
      }
  return num / den;
}

}  // namespace

TEST_CASE("mollifier multiplier") {
  const Grid g(64, two_pi);
  const Mollifier id = build_mollifier(g, 0.0);
  for (double m : id.multiplier) CHECK(m == 1.0);
  const double eps = g.length() / 8;
  const Mollifier m = build_mollifier(g, eps);
  CHECK(m.multiplier[0] == 1.0);
  for (double v : m.multiplier) CHECK(std::abs(v) <= 1.0 + 1e-15);
  for (int k : {1, 2, 3}) {
    const double lattice = lattice_transform(g, eps, k);
    CHECK(m.multiplier[g.mode_index(k, 0, 0)] == doctest::Approx(lattice).epsilon(1e-12));
    CHECK(m.multiplier[g.mode_index(0, k, 0)] == doctest::Approx(lattice).epsilon(1e-12));
    // The bump transform decays like exp(-sqrt(|k| eps)), so grid aliasing stays near 1e-4.
    CHECK(m.multiplier[g.mode_index(k, 0, 0)] == doctest::Approx(bump_transform(k * eps)).epsilon(2e-4));
  }
  CHECK_THROWS_AS(build_mollifier(g, g.length() / 4), ValidationError);
  CHECK_THROWS_AS(build_mollifier(g, -1.0), ValidationError);

  const VelocityField u = random_velocity(g, 5, 20);
  const VelocityField mu = mollify(u, m);
  CHECK(l2_norm_squared(to_physical(mu)) <= l2_norm_squared(to_physical(u)));
  for (int c = 0; c < 3; ++c) CHECK(mu[c].modes()[0] == u[c].modes()[0]);
}

TEST_CASE("dealiasing matches the padded product") {
  const int n = 32;
  const Grid g(n, two_pi), g2(2 * n, two_pi);
  const int band = g.dealias_cutoff();
  const ScalarField a = random_scalar(g, 21, band), b = random_scalar(g, 22, band);
  // Embed the band-limited inputs on the doubled grid.
  auto embed = [&](const ScalarField& f) {
    ScalarField out(g2, Representation::spectral);
    for (int kz = 0; kz < n; ++kz)
      for (int ky = 0; ky < n; ++ky)
        for (int kx = 0; kx < g.half(); ++kx) {
          const int mz = g.mode_number(kz), my = g.mode_number(ky);
          const Complex v = f.modes()[g.mode_index(kx, ky, kz)];
          if (v == Complex{}) continue;
          out.modes()[g2.mode_index(kx, (my + 2 * n) % (2 * n), (mz + 2 * n) % (2 * n))] = v * 8.0;
        }
    return out;
  };
  auto product = [](const ScalarField& x, const ScalarField& y) {
    const ScalarField px = to_physical(x), py = to_physical(y);
    ScalarField p(x.grid(), Representation::physical);
    for (std::size_t i = 0; i < p.values().size(); ++i) p.values()[i] = px.values()[i] * py.values()[i];
    return to_spectral(p);
  };
  const ScalarField coarse = dealias(product(a, b));
  const ScalarField fine = product(embed(a), embed(b));
  double worst = 0.0, scale = test::max_abs(coarse);
  for (int kz = 0; kz < n; ++kz)
    for (int ky = 0; ky < n; ++ky)
      for (int kx = 0; kx <= band; ++kx) {
        const int mz = g.mode_number(kz), my = g.mode_number(ky);
        if (std::abs(mz) > band || std::abs(my) > band) continue;
        const Complex c = coarse.modes()[g.mode_index(kx, ky, kz)];
        const Complex f = fine.modes()[g2.mode_index(kx, (my + 2 * n) % (2 * n), (mz + 2 * n) % (2 * n))] / 8.0;
        worst = std::max(worst, std::abs(c - f));
      }
  CHECK(worst <= 1e-12 * scale);
  // Top modes are removed, low modes kept.
  ScalarField modes(g, Representation::spectral);
  modes.modes()[g.mode_index(band, 0, 0)] = Complex(1.0, 2.0);
  modes.modes()[g.mode_index(3, g.n() - band, 0)] = Complex(-1.0, 0.5);
  modes.modes()[g.mode_index(band + 1, 0, 0)] = Complex(4.0, 0.0);
  modes.modes()[g.mode_index(0, 0, band + 1)] = Complex(0.0, 3.0);
  const ScalarField kept = dealias(modes);
  CHECK(kept.modes()[g.mode_index(band, 0, 0)] == Complex(1.0, 2.0));
  CHECK(kept.modes()[g.mode_index(3, g.n() - band, 0)] == Complex(-1.0, 0.5));
  CHECK(kept.modes()[g.mode_index(band + 1, 0, 0)] == Complex{});
  CHECK(kept.modes()[g.mode_index(0, 0, band + 1)] == Complex{});
}

TEST_CASE("nonlinear term trivial cases") {
  const Grid g(16, two_pi);
  VelocityField c(g, Representation::physical);
  for (int k = 0; k < 3; ++k)
    for (double& v : c[k].values()) v = 1.0 + k;
  const VelocityField ch = to_spectral(c);
  CHECK(test::max_abs(nonlinear_term(ch, ch)) <= 1e-10);
  VelocityField shear({test::sample(g, [](double, double y, double) { return std::sin(y) + 0.3 * std::cos(2 * y); }),
                       ScalarField(g, Representation::physical), ScalarField(g, Representation::physical)},
                      0.0);
  const VelocityField sh = to_spectral(shear);
  CHECK(test::max_abs(nonlinear_term(sh)) <= 1e-10);
}

TEST_CASE("nonlinear term matches the convective form") {
  const Grid g(32, two_pi);
  const VelocityField u = random_velocity(g, 31, 4), w = random_velocity(g, 32, 4);
  const VelocityField nl = nonlinear_term(u, w);
  // (w . grad) u in physical space, projected.
  const VelocityField wp = to_physical(w);
  VelocityField conv(g, Representation::physical);
  for (int i = 0; i < 3; ++i) {
    const VelocityField gu = to_physical(gradient(u[i]));
    for (std::size_t p = 0; p < g.point_count(); ++p) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j) s += wp[j].values()[p] * gu[j].values()[p];
      conv[i].values()[p] = s;
    }
  }
  const VelocityField oracle = leray_project(to_spectral(conv));
  CHECK(test::max_abs_diff(nl, oracle) <= 1e-10 * test::max_abs(oracle));
  // Symmetric path agrees with the general one.
  CHECK(test::max_abs_diff(nonlinear_term(u), nonlinear_term(u, u)) <= 1e-12 * test::max_abs(nonlinear_term(u)));
  CHECK_THROWS_AS(nonlinear_term(u, random_velocity(Grid(16, two_pi), 1, 3)), ValidationError);
}

TEST_CASE("pressure of the 2D vortex") {
  const Grid g(32, two_pi);
  const VelocityField tg = taylor_green_2d(g, 0.0);
  const ScalarField p = to_physical(pressure_from_velocity(tg));
  const ScalarField exact = test::sample(g, [](double x, double y, double) { return -0.25 * (std::cos(2 * x) + std::cos(2 * y)); });
  CHECK(test::max_abs_diff(p, exact) <= 1e-10 * test::max_abs(exact));
  const VelocityField zero(g, Representation::spectral);
  CHECK(test::max_abs(pressure_from_velocity(zero)) == 0.0);
}

TEST_CASE("pressure relation holds for random fields") {
  const Grid g(32, two_pi);
  const VelocityField u = random_velocity(g, 41, 6), w = random_velocity(g, 42, 6);
  const VelocityField lhs = add(tensor_divergence(u, w), gradient(pressure_from_velocity(u, w)));
  const VelocityField rhs = nonlinear_term(u, w);
  CHECK(test::max_abs_diff(lhs, rhs) <= 1e-10 * test::max_abs(rhs));
}

TEST_CASE("energy and dissipation from modes") {
  const Grid g(16, two_pi);
  const VelocityField tg = taylor_green_2d(g, 0.0);
  // int |u|^2 = (2 pi)^3 / 2 for the vortex; |grad u|^2 integrates to twice that.
  const double vol = std::pow(two_pi, 3);
  CHECK(kinetic_energy(tg) == doctest::Approx(vol / 4).epsilon(1e-13));
  CHECK(dissipation_rate(tg) == doctest::Approx(vol).epsilon(1e-13));
  CHECK(l2_norm_squared(to_physical(tg)) == doctest::Approx(vol / 2).epsilon(1e-13));
  const VelocityField decayed = heat_propagate(tg, 0.25);
  CHECK(decayed.time() == doctest::Approx(0.25));
  CHECK(kinetic_energy(decayed) == doctest::Approx(vol / 4 * std::exp(-1.0)).epsilon(1e-13));
}
