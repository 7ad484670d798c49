#include "doctest.h"
#include "symind/example_solvable.hpp"

using namespace symind;

namespace {

GroupElement rand_elt(const GroupPtr& g, Rng& rng, double box = 2.0) {
  return {g, g->ic_embed(rng.uniform_vec(g->ic_dim, -box, box))};
}

}  // namespace

TEST_CASE("cotangent chart pack/unpack round trip") {
  GroupPtr g = gprime_group();
  CHECK(t_star_dim(g) == 10);
  Rng rng(31);
  Vec x = rng.uniform_vec(10, -3, 3);
  CotangentPoint p = t_star_unpack(g, x);
  CHECK((t_star_pack(p) - x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("canonical one-form is invariant under left translation") {
  GroupPtr g = gprime_group();
  HamiltonianSpace ts = t_star_space(g);
  OneForm form = t_star_one_form(g);
  Rng rng(32);
  for (int i = 0; i < 10; ++i) {
    Vec x = rng.uniform_vec(10, -2, 2);
    Vec v = rng.uniform_vec(10, -1, 1).normalized();
    GroupElement gg = rand_elt(g, rng);
    auto map = [&](const Vec& p) { return ts.action(gg, p); };
    Vec fx = map(x);
    Vec push = (map(x + 1e-5 * v) - map(x - 1e-5 * v)) / 2e-5;
    CHECK(std::abs(form.eval(fx, push) - form.eval(x, v)) < 1e-5);
  }
}

TEST_CASE("T*G satisfies the cardinal properties") {
  HamiltonianSpace ts = t_star_space(g_group());
  Rng rng(33);
  for (int i = 0; i < 5; ++i) {
    Vec x = rng.uniform_vec(8, -2, 2);
    CHECK(check_cardinal_a(ts, x));
    CHECK(check_cardinal_b(ts, x));
  }
}

TEST_CASE("gh action composes and the factors commute") {
  GroupPtr g = g_group();
  Subgroup h = h_in_g();
  HamiltonianSpace y = point_space(h.sub, c_check_h());
  Rng rng(34);
  Vec n = rng.uniform_vec(8, -2, 2);
  GroupElement g1 = rand_elt(g, rng), g2 = rand_elt(g, rng);
  GroupElement h1 = rand_elt(h.sub, rng), h2 = rand_elt(h.sub, rng);
  GroupElement e_g = identity(g), e_h = identity(h.sub);

  Vec lhs = gh_action(g, h, y, g1, e_h, gh_action(g, h, y, g2, e_h, n));
  Vec rhs = gh_action(g, h, y, mul(g1, g2), e_h, n);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);

  lhs = gh_action(g, h, y, e_g, h1, gh_action(g, h, y, e_g, h2, n));
  rhs = gh_action(g, h, y, e_g, mul(h1, h2), n);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);

  lhs = gh_action(g, h, y, g1, e_h, gh_action(g, h, y, e_g, h1, n));
  rhs = gh_action(g, h, y, e_g, h1, gh_action(g, h, y, g1, e_h, n));
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("induced space: level set, equivariance and H-invariance") {
  InducedSpace ind = induce(g_group(), h_in_g(), point_space(h_group(), c_check_h()));
  CHECK(induced_dim(g_group(), h_in_g(), point_space(h_group(), c_check_h())) == 2);
  Rng rng(35);
  for (int i = 0; i < 10; ++i) {
    auto s = ind.sampler(42, i);
    REQUIRE(s.has_value());
    Vec n = *s;
    CHECK(ind.psi(n).cwiseAbs().maxCoeff() < 1e-9);

    GroupElement hh = rand_elt(h_group(), rng);
    Vec hn = ind.h_action(hh, n);
    CHECK(ind.psi(hn).cwiseAbs().maxCoeff() < 1e-9);  // H preserves the level set
    CHECK((ind.moment(hn).coeffs - ind.moment(n).coeffs).cwiseAbs().maxCoeff() < 1e-9);

    GroupElement gg = rand_elt(g_group(), rng);
    Vec gn = ind.g_action(gg, n);
    CHECK((ind.moment(gn).coeffs - coad_action(gg, ind.moment(n)).coeffs).cwiseAbs().maxCoeff() <
          1e-9);
  }
}

TEST_CASE("induced equivalence finds H-witnesses and rejects strangers") {
  InduceOptions opts;
  opts.orbit.seed = 7;
  InducedSpace ind = induce(g_group(), h_in_g(), point_space(h_group(), c_check_h()), opts);
  Rng rng(36);
  auto s = ind.sampler(42, 0);
  REQUIRE(s.has_value());
  GroupElement hh = rand_elt(h_group(), rng);
  Vec n2 = ind.h_action(hh, *s);
  auto w = ind.equivalent(n2, *s);
  REQUIRE(w.has_value());
  CHECK(chart_distance(ind.coords, ind.h_action(*w, n2), *s) < 1e-6);

  // a different momentum value cannot be H-equivalent
  auto s2 = ind.sampler(42, 1);
  REQUIRE(s2.has_value());
  if ((ind.moment(*s).coeffs - ind.moment(*s2).coeffs).cwiseAbs().maxCoeff() > 1e-3)
    CHECK_FALSE(ind.equivalent(*s, *s2).has_value());
}

TEST_CASE("reduced form is representative independent and rejects non-tangents") {
  InducedSpace ind = induce(g_group(), h_in_g(), point_space(h_group(), c_check_h()));
  auto s = ind.sampler(43, 0);
  REQUIRE(s.has_value());
  Vec n = *s;
  Rng rng(37);
  Mat tang = nullspace(jacobian(ind.psi, n, 1e-5));
  Vec v = tang * (tang.transpose() * rng.uniform_vec(8, -1, 1));
  Vec w = tang * (tang.transpose() * rng.uniform_vec(8, -1, 1));
  double val = reduced_form(ind, n, v, w);

  GroupElement hh = rand_elt(h_group(), rng, 0.5);
  auto map = [&](const Vec& p) { return ind.h_action(hh, p); };
  Vec n2 = map(n);
  Vec v2 = (map(n + 1e-5 * v) - map(n - 1e-5 * v)) / 2e-5;
  Vec w2 = (map(n + 1e-5 * w) - map(n - 1e-5 * w)) / 2e-5;
  CHECK(reduced_form(ind, n2, v2, w2) == doctest::Approx(val).epsilon(1e-4));

  Vec bad = rng.uniform_vec(8, -1, 1);
  bad += tang.col(0);  // generic: not tangent to the level set
  if (jacobian(ind.psi, n, 1e-5).cwiseAbs().maxCoeff() > 0 &&
      (jacobian(ind.psi, n, 1e-5) * bad).cwiseAbs().maxCoeff() > 1e-3)
    CHECK_THROWS_AS(reduced_form(ind, n, bad, w), std::invalid_argument);
}

TEST_CASE("stages: section, fibers and the one-form identity at a point") {
  StagesData st = make_stages(gprime_group(), g_in_gprime(), h_in_g(),
                              point_space(h_group(), c_check_h()));
  auto s = st.m_sampler(44, 0);
  REQUIRE(s.has_value());
  Vec m = *s;
  CHECK(st.m_constraint(m).cwiseAbs().maxCoeff() < 1e-9);
  Vec n = st.map_s(m);
  CHECK(st.n_constraint(n).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(chart_distance(st.n_coords, st.map_s(st.section(n)), n) < 1e-10);

  Rng rng(38);
  GroupElement k = rand_elt(g_group(), rng);
  CHECK(chart_distance(st.n_coords, st.map_s(st.k_action_m(k, m)), n) < 1e-9);

  Mat tang = nullspace(jacobian(st.m_constraint, m, 1e-5));
  Vec v = tang * (tang.transpose() * rng.uniform_vec(st.m_dim, -1, 1));
  CHECK(stages_form_residual(st, m, v) < 1e-6);
}

TEST_CASE("frobenius maps are mutually inverse on the level sets") {
  FrobeniusSetup fr = make_frobenius(restrict_space(orbit_Xprime(), g_in_gprime()), h_in_g(),
                                     point_space(h_group(), c_check_h()));
  auto ns = fr.n_sampler(45, 0);
  REQUIRE(ns.has_value());
  CHECK(fr.n_constraint(*ns).cwiseAbs().maxCoeff() < 1e-9);
  Vec m = fr.backward(*ns);
  CHECK(fr.m_constraint(m).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(chart_distance(fr.n_coords, fr.forward(m), *ns) < 1e-9);

  auto ms = fr.m_sampler(46, 0);
  REQUIRE(ms.has_value());
  Vec m2 = fr.backward(fr.forward(*ms));
  CHECK(fr.m_equivalent(m2, *ms).has_value());
}
