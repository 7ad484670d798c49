#include "doctest.h"
#include "symind/example_solvable.hpp"

using namespace symind;

namespace {

constexpr double kTwoPi = 6.283185307179586;

GroupElement gp_elt(double a, std::complex<double> b, double e, double f) {
  Vec p(5);
  p << a, b.real(), b.imag(), e, f;
  return {gprime_group(), p};
}

}  // namespace

TEST_CASE("coadjoint action: worked value") {
  // (a=0, b=0, e=1, f=0) sends (p,q,s,t) = (0,1,0,1) to (1,1,0,1)
  DualGPrime m{0.0, {1.0, 0.0}, 0.0, 1.0};
  DualGPrime out = coadjoint_gprime(gp_elt(0, 0, 1, 0), m);
  CHECK(out.p == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out.q.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out.q.imag() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(out.s == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(out.t == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("closed-form coadjoint action matches the generic one") {
  Rng rng(61);
  for (int i = 0; i < 100; ++i) {
    GroupElement g{gprime_group(), rng.uniform_vec(5, -3, 3)};
    DualGPrime m{rng.uniform(-3, 3), {rng.uniform(-3, 3), rng.uniform(-3, 3)}, rng.uniform(-3, 3),
                 1.0};
    Vec closed = dual_gprime_coeffs(coadjoint_gprime(g, m));
    Vec generic = coad_action(g, DualVector{gprime_group(), dual_gprime_coeffs(m)}).coeffs;
    CHECK((closed - generic).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("coadjoint action requires t = 1") {
  DualGPrime m{0, {1, 0}, 0, 0.5};
  CHECK_THROWS_AS(coadjoint_gprime(gp_elt(1, 0, 0, 0), m), std::invalid_argument);
}

TEST_CASE("dual coordinates round trip and restrict correctly") {
  DualGPrime m{1.5, {0.25, -2.0}, 0.75, 1.0};
  Vec c = dual_gprime_coeffs(m);
  REQUIRE(c.size() == 5);
  CHECK(c[0] == 1.5);
  CHECK(c[3] == -0.75);  // dual to E_e with the -s convention
  CHECK(c[4] == -1.0);
  DualGPrime back = dual_gprime_from_coeffs(c);
  CHECK(back.s == doctest::Approx(m.s));
  CHECK(back.q.imag() == doctest::Approx(m.q.imag()));

  Vec cc = c_check().coeffs;
  Vec expect(5);
  expect << 0, 1, 0, 0, -1;
  CHECK((cc - expect).cwiseAbs().maxCoeff() == 0.0);
  CHECK((restrict_dual(c_check(), g_in_gprime()).coeffs -
         Vec((Vec(4) << 0, 1, 0, -1).finished()))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK((c_check_h().coeffs - Vec((Vec(3) << 1, 0, -1).finished())).cwiseAbs().maxCoeff() == 0.0);
  CHECK((c_check_hprime().coeffs - Vec((Vec(4) << 1, 0, 0, -1).finished()))
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("orbit charts parametrize the coadjoint orbit of the check point") {
  HamiltonianSpace xp = orbit_Xprime();
  Rng rng(62);
  for (int i = 0; i < 20; ++i) {
    double p = rng.uniform(-4, 4), s = rng.uniform(-4, 4);
    // explicit group witness reaching (p, e^{is}, s, 1)
    Vec target = dual_gprime_coeffs(coadjoint_gprime(gp_elt(s, 0, p, 0),
                                                     dual_gprime_from_coeffs(c_check().coeffs)));
    Vec chart(2);
    chart << p, s;
    CHECK((moment_coeffs(xp, chart) - target).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("covering map is 2 pi periodic and intertwines the moments") {
  Vec a(2), b(2);
  a << 0.7, 1.1;
  b << 0.7, 1.1 + 2 * kTwoPi;
  CHECK(chart_distance(orbit_X().coords, covering_map(a), covering_map(b)) < 1e-12);
  Vec mx = moment_coeffs(orbit_X(), covering_map(a));
  Vec mxp = moment_coeffs(orbit_Xprime(), a);
  // restriction to g drops the s-slot
  CHECK(mx[0] == doctest::Approx(mxp[0]));
  CHECK(mx[1] == doctest::Approx(mxp[1]));
  CHECK(mx[2] == doctest::Approx(mxp[2]));
  CHECK(mx[3] == doctest::Approx(mxp[4]));
}

TEST_CASE("orbit primitives differentiate to the symplectic forms") {
  Rng rng(63);
  for (int i = 0; i < 10; ++i) {
    Vec x = rng.uniform_vec(2, -3, 3);
    Vec v = rng.uniform_vec(2, -1, 1), w = rng.uniform_vec(2, -1, 1);
    CHECK(std::abs(exterior_derivative(orbit_X_primitive(), x, v, w) -
                   orbit_X().omega.eval(x, v, w)) < 1e-8);
    CHECK(std::abs(exterior_derivative(orbit_Xprime_primitive(), x, v, w) -
                   orbit_Xprime().omega.eval(x, v, w)) < 1e-8);
  }
}

TEST_CASE("characters are unit homomorphisms") {
  Rng rng(64);
  for (int i = 0; i < 200; ++i) {
    GroupElement h1{h_group(), h_group()->ic_embed(rng.uniform_vec(3, -3, 3))};
    GroupElement h2{h_group(), h_group()->ic_embed(rng.uniform_vec(3, -3, 3))};
    std::complex<double> lhs = char_lambda(0.3, mul(h1, h2));
    std::complex<double> rhs = char_lambda(0.3, h1) * char_lambda(0.3, h2);
    CHECK(std::abs(lhs - rhs) < 1e-10);
    CHECK(std::abs(std::abs(char_lambda(0.3, h1)) - 1.0) < 1e-12);
  }
  Rng rng2(65);
  GroupElement p1{hprime_group(), rng2.uniform_vec(4, -3, 3)};
  GroupElement p2{hprime_group(), rng2.uniform_vec(4, -3, 3)};
  CHECK(std::abs(char_prime(mul(p1, p2)) - char_prime(p1) * char_prime(p2)) < 1e-10);
}

TEST_CASE("character distinguishes lambda on the 2 pi component") {
  Vec shift(4);
  shift << kTwoPi, 0, 0, 0;
  GroupElement h{h_group(), shift};
  for (double lam : {0.0, 0.3, 0.7, 1.0}) {
    std::complex<double> expect = std::polar(1.0, -kTwoPi * lam);
    CHECK(std::abs(char_lambda(lam, h) - expect) < 1e-12);
  }
}

TEST_CASE("character circles have the restricted check-point momentum") {
  for (double lam : {0.0, 0.3, 0.7}) {
    PrequantumSpace t = t_lambda(lam);
    CHECK((preq_moment(t, Vec::Zero(1)).coeffs - c_check_h().coeffs).cwiseAbs().maxCoeff() <
          1e-12);
  }
  CHECK((preq_moment(t_prime(), Vec::Zero(1)).coeffs - c_check_hprime().coeffs)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("gauge equivalence exists exactly for integer shifts") {
  CHECK(gauge_equivalence(1.3, 0.3).has_value());
  CHECK(gauge_equivalence(0.0, 3.0).has_value());
  CHECK_FALSE(gauge_equivalence(0.0, 0.5).has_value());
  CHECK_FALSE(gauge_equivalence(0.3, 0.0).has_value());
  auto f = gauge_equivalence(1.3, 0.3);
  REQUIRE(f.has_value());
  Vec x(3);
  x << 0.4, 1.2, 0.5;
  Vec y = (*f)(x);
  CHECK(y[0] == doctest::Approx(0.4));
  CHECK(y[1] == doctest::Approx(1.2));
  CHECK(y[2] == doctest::Approx(0.5 + 1.2));  // z q^{1}
}

TEST_CASE("symplectic frobenius example: a point") {
  OrbitSearchOptions orbit;
  orbit.seed = 13;
  FrobeniusExampleResult res = run_frobenius_example(42, 12, orbit);
  CHECK(res.g_side_classes == 1);
  CHECK(res.h_side_classes == 1);
  CHECK(res.g_side_dim == 0);
}

TEST_CASE("prequantum frobenius example: a single circle") {
  OrbitSearchOptions orbit;
  orbit.seed = 13;
  PreqFrobeniusExampleResult res = run_prequantum_frobenius_example(0.3, 42, 10, orbit);
  CHECK(res.g_side_classes == 1);
  CHECK(res.h_side_classes == 1);
  CHECK(res.g_side_dim == 1);
  CHECK(res.curve_closure < 1e-4);
}
