#include "doctest.h"
#include "symind/example_solvable.hpp"

using namespace symind;

TEST_CASE("angle wrapping and chart distance") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(6.283185307179586) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(wrap_angle(3.2411) == doctest::Approx(3.2411 - 6.283185307179586).epsilon(1e-12));
  std::vector<Coord> coords = {Coord::Real, Coord::Angle};
  Vec a(2), b(2);
  a << 1.0, 0.1;
  b << 1.0, 6.2;
  CHECK(chart_distance(coords, a, b) < 0.2);  // short way around
  CHECK(chart_diff(coords, a, b)[1] == doctest::Approx(0.1 - 6.2 + 6.283185307179586));
}

TEST_CASE("cardinal properties hold on the example orbits") {
  HamiltonianSpace x = orbit_X(), xp = orbit_Xprime();
  Rng rng(21);
  for (int i = 0; i < 10; ++i) {
    Vec a(2), b(2);
    a << rng.uniform(-5, 5), rng.uniform(0, 6.28);
    b << rng.uniform(-5, 5), rng.uniform(-5, 5);
    CHECK(check_cardinal_a(x, a));
    CHECK(check_cardinal_b(x, a));
    CHECK(check_cardinal_a(xp, b));
    CHECK(check_cardinal_b(xp, b));
  }
}

TEST_CASE("cardinal check detects a wrong momentum map") {
  HamiltonianSpace bad = orbit_X();
  bad.moment = [g = bad.group](const Vec& x) {
    Vec c(4);
    c << 0.0, std::cos(x[1]), std::sin(x[1]), -1;  // drops the p-dependence
    return DualVector{g, c};
  };
  Vec pt(2);
  pt << 0.7, 1.1;
  CHECK_FALSE(check_cardinal_a(bad, pt));
}

TEST_CASE("dual, product and restricted spaces") {
  HamiltonianSpace x = orbit_X();
  HamiltonianSpace xd = dual_space(x);
  Vec pt(2), v(2), w(2);
  pt << 0.4, 0.9;
  v << 1, 0.3;
  w << -0.2, 1;
  CHECK(xd.omega.eval(pt, v, w) == doctest::Approx(-x.omega.eval(pt, v, w)).epsilon(1e-12));
  CHECK((moment_coeffs(xd, pt) + moment_coeffs(x, pt)).cwiseAbs().maxCoeff() < 1e-12);

  HamiltonianSpace prod = product_space(dual_space(x), x);
  CHECK(prod.chart_dim == 4);
  Vec pp(4);
  pp << 0.4, 0.9, 0.4, 0.9;
  CHECK(moment_coeffs(prod, pp).cwiseAbs().maxCoeff() < 1e-12);  // cancels on the diagonal

  HamiltonianSpace xr = restrict_space(orbit_Xprime(), g_in_gprime());
  CHECK(xr.group == g_group());
  Vec q(2);
  q << 1.2, -0.7;
  // restricted momentum drops the s-slot
  Vec full = moment_coeffs(orbit_Xprime(), q);
  Vec part = moment_coeffs(xr, q);
  REQUIRE(part.size() == 4);
  CHECK(part[0] == doctest::Approx(full[0]));
  CHECK(part[3] == doctest::Approx(full[4]));
}

TEST_CASE("point space has constant momentum and trivial chart") {
  HamiltonianSpace pt = point_space(h_group(), c_check_h());
  CHECK(pt.chart_dim == 0);
  CHECK((moment_coeffs(pt, Vec(0)) - c_check_h().coeffs).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fundamental fields of the circle action on X") {
  HamiltonianSpace x = orbit_X();
  Vec pt(2);
  pt << 1.5, 0.8;
  // E_a rotates theta at unit speed
  AlgebraElement ea{g_group(), Vec::Unit(4, 0)};
  Vec f = fundamental_field(x, ea, pt);
  CHECK(f[1] == doctest::Approx(1.0).epsilon(1e-7));
  Mat span = orbit_directions(x, pt);
  CHECK(rank(span, 1e-6) == 2);
}

TEST_CASE("orbit_equivalent finds a witness and rejects non-orbits") {
  HamiltonianSpace x = orbit_X();
  Rng rng(22);
  OrbitSearchOptions opts;
  opts.seed = 77;
  Vec x1(2);
  x1 << 0.3, 1.2;
  GroupElement g{g_group(), g_group()->ic_embed(rng.uniform_vec(4, -2, 2))};
  Vec x2 = x.action(g, x1);
  auto w = orbit_equivalent(x.group, x.action, x.coords, x1, x2, opts);
  REQUIRE(w.has_value());
  CHECK(chart_distance(x.coords, x.action(*w, x1), x2) < 1e-6);

  // under H the angle cannot move off its 2 pi lattice
  HamiltonianSpace xh = restrict_space(x, h_in_g());
  Vec y1(2), y2(2);
  y1 << 0.0, 0.3;
  y2 << 0.0, 0.7;
  CHECK_FALSE(orbit_equivalent(xh.group, xh.action, xh.coords, y1, y2, opts).has_value());
}

TEST_CASE("component enumeration covers generator powers") {
  GroupPtr h = h_group();
  CHECK(component_count(h, 2) == 5);
  CHECK(component_count(g_group(), 8) == 1);
  // powers ordered 0, +1, -1, +2, -2, ...
  CHECK(component_element(h, 0, 2).params[0] == doctest::Approx(0.0));
  CHECK(component_element(h, 1, 2).params[0] == doctest::Approx(6.283185307179586));
  CHECK(component_element(h, 2, 2).params[0] == doctest::Approx(-6.283185307179586));
}

TEST_CASE("partition_samples groups by handcrafted equivalence") {
  std::vector<Vec> samples;
  Rng rng(23);
  for (int i = 0; i < 30; ++i) {
    Vec v(1);
    v << (i % 3) * 10.0 + rng.uniform(-1e-6, 1e-6);
    samples.push_back(v);
  }
  auto eq = [](const Vec& a, const Vec& b) -> std::optional<GroupElement> {
    if (std::abs(a[0] - b[0]) < 1e-3) return identity(g_group());
    return std::nullopt;
  };
  ClassPartition p = partition_samples(samples, eq);
  CHECK(p.n_classes == 3);
  auto inv = [](const Vec& v) { return v; };
  CHECK(partition_samples(samples, eq, inv).n_classes == 3);
}

TEST_CASE("quotient_dim_estimate on a linear model") {
  // level set {x0 = 0} in R^3 with a translation orbit along x1
  QuotientSet q;
  q.group = g_group();
  q.chart_dim = 3;
  q.coords = {Coord::Real, Coord::Real, Coord::Real};
  q.constraint = [](const Vec& x) {
    Vec r(1);
    r << x[0];
    return r;
  };
  q.orbit_span = [](const Vec&) {
    Mat m(3, 1);
    m << 0, 1, 0;
    return m;
  };
  CHECK(quotient_dim_estimate(q, Vec::Zero(3)) == 1);
}

TEST_CASE("hom of X with itself is a point") {
  HomOptions opts;
  opts.orbit.seed = 5;
  QuotientSet q = hom_set(orbit_X(), orbit_X(), opts);
  auto s0 = q.sampler(42, 0);
  REQUIRE(s0.has_value());
  CHECK(q.constraint(*s0).cwiseAbs().maxCoeff() < 1e-8);
  ClassPartition p = count_classes(q, 10, 42);
  CHECK(p.n_classes == 1);
  CHECK(quotient_dim_estimate(q, *s0) == 0);
}
