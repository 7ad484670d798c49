#include "doctest.h"
#include "symind/forms_numerics.hpp"
#include "symind/nlsq.hpp"

using namespace symind;

TEST_CASE("exterior derivative of x0 dx1 is dx0 ^ dx1") {
  OneForm form{2, [](const Vec& x, const Vec& v) { return x[0] * v[1]; }};
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    Vec x = rng.uniform_vec(2, -5, 5), v = rng.uniform_vec(2, -1, 1), w = rng.uniform_vec(2, -1, 1);
    double expect = v[0] * w[1] - v[1] * w[0];
    CHECK(exterior_derivative(form, x, v, w) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("d of an exact form vanishes") {
  // form = df for f = x0^2 x1 + sin(x2)
  OneForm form{3, [](const Vec& x, const Vec& v) {
                 return 2 * x[0] * x[1] * v[0] + x[0] * x[0] * v[1] + std::cos(x[2]) * v[2];
               }};
  Rng rng(12);
  for (int i = 0; i < 20; ++i) {
    Vec x = rng.uniform_vec(3, -2, 2), v = rng.uniform_vec(3, -1, 1), w = rng.uniform_vec(3, -1, 1);
    CHECK(std::abs(exterior_derivative(form, x, v, w)) < 1e-8);
    CHECK(std::abs(d(form).eval(x, v, w)) < 1e-8);
  }
}

TEST_CASE("richardson tightens cubic coefficients") {
  OneForm form{2, [](const Vec& x, const Vec& v) { return x[0] * x[0] * x[0] * v[1]; }};
  Vec x(2), v(2), w(2);
  x << 1.3, 0.2;
  v << 1, 0;
  w << 0, 1;
  double expect = 3 * x[0] * x[0];
  double plain = std::abs(exterior_derivative(form, x, v, w, 1e-3) - expect);
  double rich = std::abs(exterior_derivative(form, x, v, w, 1e-3, true) - expect);
  CHECK(rich < plain);
  CHECK(rich < 1e-10);
}

TEST_CASE("jacobian of a polynomial map") {
  auto f = [](const Vec& x) {
    Vec y(2);
    y << x[0] * x[1], x[0] + 3 * x[1];
    return y;
  };
  Vec x(2);
  x << 2.0, -1.5;
  Mat j = jacobian(f, x);
  Mat expect(2, 2);
  expect << x[1], x[0], 1, 3;
  CHECK((j - expect).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("rank, nullspace, colspace") {
  Mat a(3, 3);
  a << 1, 2, 3, 2, 4, 6, 0, 0, 1;  // rank 2
  CHECK(rank(a) == 2);
  Mat ns = nullspace(a);
  REQUIRE(ns.cols() == 1);
  CHECK((a * ns).cwiseAbs().maxCoeff() < 1e-12);
  Mat cs = colspace(a);
  CHECK(cs.cols() == 2);
  CHECK(rank(Mat::Zero(3, 3)) == 0);
  CHECK(nullspace(Mat::Zero(2, 2)).cols() == 2);
}

TEST_CASE("symplectic orthogonal for the standard form on R^4") {
  TwoForm omega{4, [](const Vec&, const Vec& v, const Vec& w) {
                  return v[0] * w[1] - v[1] * w[0] + v[2] * w[3] - v[3] * w[2];
                }};
  Vec x = Vec::Zero(4);
  Subspace s = make_subspace(4, Mat(Vec::Unit(4, 0)));
  Subspace orth = symplectic_orthogonal(omega, x, s);
  Mat expect(4, 3);
  expect << 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1;
  CHECK(subspace_equal(orth, make_subspace(4, expect), 1e-8));
  // a Lagrangian subspace is its own orthogonal
  Mat lag(4, 2);
  lag << 1, 0, 0, 0, 0, 1, 0, 0;
  Subspace l = make_subspace(4, lag);
  CHECK(subspace_equal(symplectic_orthogonal(omega, x, l), l, 1e-6));
}

TEST_CASE("symplectic orthogonal rejects degenerate forms") {
  TwoForm omega{2, [](const Vec&, const Vec&, const Vec&) { return 0.0; }};
  CHECK_THROWS_AS(symplectic_orthogonal(omega, Vec::Zero(2), full_subspace(2)), DegeneracyError);
}

TEST_CASE("annihilator and principal angles") {
  Subspace s = make_subspace(3, Mat(Vec::Unit(3, 0)));
  Subspace ann = annihilator(s);
  CHECK(ann.dim() == 2);
  Mat expect(3, 2);
  expect << 0, 0, 1, 0, 0, 1;
  CHECK(subspace_equal(ann, make_subspace(3, expect), 1e-10));
  CHECK(max_principal_angle(s, s) < 1e-12);
  CHECK(max_principal_angle(s, make_subspace(3, Mat(Vec::Unit(3, 1)))) ==
        doctest::Approx(1.5707963267948966).epsilon(1e-9));
  CHECK(subspace_equal(annihilator(zero_subspace(3)), full_subspace(3)));
}
