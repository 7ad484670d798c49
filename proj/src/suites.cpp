#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>

#include "symind/cli_reports.hpp"

namespace symind {

namespace {

constexpr double kTwoPi = 6.283185307179586;

void add_check(SuiteReport& rep, const std::string& name, bool pass, double resid,
               const std::string& expected = "", const std::string& observed = "") {
  rep.checks.push_back({name, pass ? "pass" : "fail", resid, expected, observed});
}

Vec rand_chart(Rng& rng, const std::vector<Coord>& coords, double box = 10.0) {
  Vec x(coords.size());
  for (size_t i = 0; i < coords.size(); ++i)
    x[static_cast<int>(i)] =
        coords[i] == Coord::Angle ? rng.uniform(0, kTwoPi) : rng.uniform(-box, box);
  return x;
}

GroupElement rand_element(const GroupPtr& g, Rng& rng, double box = 2.0) {
  return {g, g->ic_embed(rng.uniform_vec(g->ic_dim, -box, box))};
}

OrbitSearchOptions orbit_opts(const SuiteConfig& cfg) {
  OrbitSearchOptions o;
  o.seed = cfg.seed + 1000;
  o.n_max = cfg.n_max;
  return o;
}

InduceOptions induce_opts(const SuiteConfig& cfg) {
  InduceOptions o;
  o.fd_step = cfg.fd_step;
  o.orbit = orbit_opts(cfg);
  return o;
}

int capped(const SuiteConfig& cfg, int cap) { return std::min(cfg.samples, cap); }

std::string short_tag(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

// ---------------------------------------------------------------------------

void suite_cardinal(const SuiteConfig& cfg, SuiteReport& rep) {
  const int n = capped(cfg, 100);
  HamiltonianSpace x = orbit_X();
  HamiltonianSpace xp = orbit_Xprime();
  int ok_ax = 0, ok_bx = 0, ok_axp = 0, ok_bxp = 0;
  for (int i = 0; i < n; ++i) {
    Rng rng = Rng::indexed(cfg.seed, i);
    Vec px = rand_chart(rng, x.coords);
    Vec pxp = rand_chart(rng, xp.coords);
    ok_ax += check_cardinal_a(x, px, cfg.tol, cfg.fd_step);
    ok_bx += check_cardinal_b(x, px, cfg.tol, cfg.fd_step);
    ok_axp += check_cardinal_a(xp, pxp, cfg.tol, cfg.fd_step);
    ok_bxp += check_cardinal_b(xp, pxp, cfg.tol, cfg.fd_step);
  }
  auto frac = [n](int k) { return std::to_string(k) + "/" + std::to_string(n); };
  add_check(rep, "cardinal_a_on_X", ok_ax == n, 0, frac(n), frac(ok_ax));
  add_check(rep, "cardinal_b_on_X", ok_bx == n, 0, frac(n), frac(ok_bx));
  add_check(rep, "cardinal_a_on_Xprime", ok_axp == n, 0, frac(n), frac(ok_axp));
  add_check(rep, "cardinal_b_on_Xprime", ok_bxp == n, 0, frac(n), frac(ok_bxp));

  // Points of the induction level set inside T*G'.
  InducedSpace ind = induce(gprime_group(), hprime_in_gprime(),
                            point_space(hprime_group(), c_check_hprime()), induce_opts(cfg));
  HamiltonianSpace ts = t_star_space(gprime_group(), cfg.fd_step);
  const int nl = std::min(n, 30);
  int ok_al = 0, ok_bl = 0, got = 0;
  for (int i = 0; got < nl && i < 5 * nl; ++i) {
    auto s = ind.sampler(cfg.seed + 7, i);
    if (!s) continue;
    ++got;
    Vec pt = s->head(ts.chart_dim);
    ok_al += check_cardinal_a(ts, pt, cfg.tol, cfg.fd_step);
    ok_bl += check_cardinal_b(ts, pt, cfg.tol, cfg.fd_step);
  }
  add_check(rep, "cardinal_a_on_level_set", ok_al == nl, 0, std::to_string(nl),
            std::to_string(ok_al));
  add_check(rep, "cardinal_b_on_level_set", ok_bl == nl, 0, std::to_string(nl),
            std::to_string(ok_bl));
}

// ---------------------------------------------------------------------------

void suite_induction_dims(const SuiteConfig& cfg, SuiteReport& rep) {
  int d1 = induced_dim(g_group(), h_in_g(), point_space(h_group(), c_check_h()));
  int d2 = induced_dim(gprime_group(), hprime_in_gprime(),
                       point_space(hprime_group(), c_check_hprime()));
  add_check(rep, "dim_formula_X", d1 == 2, 0, "2", std::to_string(d1));
  add_check(rep, "dim_formula_Xprime", d2 == 2, 0, "2", std::to_string(d2));

  auto estimate = [&](const GroupPtr& big, const Subgroup& h, const DualVector& mu0) {
    InducedSpace ind = induce(big, h, point_space(h.sub, mu0), induce_opts(cfg));
    QuotientSet qs;
    qs.group = h.sub;
    qs.chart_dim = ind.chart_dim;
    qs.coords = ind.coords;
    qs.sampler = ind.sampler;
    qs.constraint = ind.psi;
    double fd = cfg.fd_step;
    qs.orbit_span = [ind, fd](const Vec& x) { return ind.h_orbit_span(x, fd); };
    auto s = qs.sampler(cfg.seed, 0);
    if (!s) return -1;
    return quotient_dim_estimate(qs, *s, cfg.fd_step);
  };
  int e1 = estimate(g_group(), h_in_g(), c_check_h());
  int e2 = estimate(gprime_group(), hprime_in_gprime(), c_check_hprime());
  add_check(rep, "dim_estimate_X", e1 == 2, 0, "2", std::to_string(e1));
  add_check(rep, "dim_estimate_Xprime", e2 == 2, 0, "2", std::to_string(e2));
}

// ---------------------------------------------------------------------------

void suite_stages(const SuiteConfig& cfg, SuiteReport& rep) {
  HamiltonianSpace y = point_space(h_group(), c_check_h());
  StagesData st = make_stages(gprime_group(), g_in_gprime(), h_in_g(), y, induce_opts(cfg));

  const int n = capped(cfg, 50);
  double rt = 0, kinv = 0, equiv = 0, form = 0, zero_form = 0;
  for (int i = 0; i < n; ++i) {
    auto ms = st.m_sampler(cfg.seed, i);
    if (!ms) continue;
    Vec m = *ms;
    Rng rng = Rng::indexed(cfg.seed + 13, i);

    Vec nn = st.map_s(m);
    Vec nn2 = st.map_s(st.section(nn));
    rt = std::max(rt, chart_distance(st.n_coords, nn2, nn));

    GroupElement k = rand_element(g_group(), rng);
    kinv = std::max(kinv, chart_distance(st.n_coords, st.map_s(st.k_action_m(k, m)), nn));

    GroupElement gg = rand_element(gprime_group(), rng);
    GroupElement hh = rand_element(h_group(), rng);
    Vec lhs = st.map_s(st.g_action_m(gg, st.k_action_m(k, st.h_action_m(hh, m))));
    Vec rhs = st.g_action_n(gg, st.h_action_n(hh, nn));
    equiv = std::max(equiv, chart_distance(st.n_coords, lhs, rhs));

    Mat tang = nullspace(jacobian(st.m_constraint, m, cfg.fd_step));
    Vec v = tang * (tang.transpose() * rng.uniform_vec(st.m_dim, -1, 1));
    if (v.norm() > 1e-8) v.normalize();
    form = std::max(form, stages_form_residual(st, m, v, cfg.fd_step));
    zero_form = std::max(zero_form, stages_form_residual(st, m, Vec::Zero(st.m_dim), cfg.fd_step));
  }
  add_check(rep, "section_round_trip", rt < 1e-9, rt, "<1e-9");
  add_check(rep, "s_fibers_are_K_orbits", kinv < 1e-9, kinv, "<1e-9");
  add_check(rep, "s_equivariance", equiv < 1e-9, equiv, "<1e-9");
  add_check(rep, "one_form_identity", form < cfg.tol, form, "<tol");
  add_check(rep, "one_form_identity_zero_tangent", zero_form == 0.0, zero_form, "0");

  // Class-count bijection on sampled classes, with deliberate duplicates so
  // that the equivalence search is actually exercised.
  const int nc = capped(cfg, 200);
  std::vector<Vec> msamples;
  for (int i = 0; static_cast<int>(msamples.size()) < nc && i < 5 * nc; ++i)
    if (auto s = st.m_sampler(cfg.seed + 3, i)) msamples.push_back(*s);
  Rng dup_rng(cfg.seed + 17);
  const int ndup = std::min<int>(5, msamples.size());
  for (int i = 0; i < ndup; ++i) {
    GroupElement k = rand_element(g_group(), dup_rng);
    GroupElement hh = rand_element(h_group(), dup_rng);
    msamples.push_back(st.k_action_m(k, st.h_action_m(hh, msamples[i])));
  }
  std::vector<Vec> nsamples;
  for (const Vec& m : msamples) nsamples.push_back(st.map_s(m));

  auto m_eq = [&st](const Vec& a, const Vec& b) -> std::optional<GroupElement> {
    if (st.m_equivalent(a, b)) return identity(g_group());
    return std::nullopt;
  };
  ClassPartition pm = partition_samples(msamples, m_eq, st.m_moment);
  ClassPartition pn = partition_samples(nsamples, st.n_equivalent, st.n_moment);
  bool well_defined = true;
  std::map<int, int> image;
  for (size_t i = 0; i < msamples.size(); ++i) {
    auto it = image.find(pm.labels[i]);
    if (it == image.end()) image[pm.labels[i]] = pn.labels[i];
    else if (it->second != pn.labels[i]) well_defined = false;
  }
  bool bij = well_defined && pm.n_classes == pn.n_classes;
  add_check(rep, "stages_class_bijection", bij, 0,
            std::to_string(pm.n_classes) + " classes both sides",
            std::to_string(pm.n_classes) + " vs " + std::to_string(pn.n_classes) +
                (well_defined ? "" : " (not class-invariant)"));
}

// ---------------------------------------------------------------------------

void suite_frobenius_symplectic(const SuiteConfig& cfg, SuiteReport& rep) {
  FrobeniusSetup fr = make_frobenius(restrict_space(orbit_Xprime(), g_in_gprime()), h_in_g(),
                                     point_space(h_group(), c_check_h()), induce_opts(cfg));
  const int n = capped(cfg, 50);
  double level = 0, bf = 0;
  int fb_ok = 0, fb_total = 0;
  for (int i = 0; i < n; ++i) {
    if (auto ns = fr.n_sampler(cfg.seed, i)) {
      level = std::max(level, fr.n_constraint(*ns).cwiseAbs().maxCoeff());
      Vec m = fr.backward(*ns);
      level = std::max(level, fr.m_constraint(m).cwiseAbs().maxCoeff());
      bf = std::max(bf, chart_distance(fr.n_coords, fr.forward(m), *ns));
    }
    if (auto ms = fr.m_sampler(cfg.seed + 1, i)) {
      ++fb_total;
      Vec m2 = fr.backward(fr.forward(*ms));
      if (fr.m_equivalent(m2, *ms)) ++fb_ok;
    }
  }
  add_check(rep, "level_residuals", level < 1e-9, level, "<1e-9");
  add_check(rep, "backward_then_forward_identity", bf < 1e-9, bf, "<1e-9");
  add_check(rep, "forward_then_backward_in_class", fb_ok == fb_total && fb_total > 0, 0,
            std::to_string(fb_total), std::to_string(fb_ok));

  FrobeniusExampleResult res = run_frobenius_example(cfg.seed, capped(cfg, 60), orbit_opts(cfg));
  add_check(rep, "hom_class_count_G_side", res.g_side_classes == 1, 0, "1",
            std::to_string(res.g_side_classes));
  add_check(rep, "hom_class_count_H_side", res.h_side_classes == 1, 0, "1",
            std::to_string(res.h_side_classes));
  add_check(rep, "hom_dimension", res.g_side_dim == 0, 0, "0", std::to_string(res.g_side_dim));
}

// ---------------------------------------------------------------------------

Vec flow_reeb(const PrequantumSpace& s, Vec x, double time, double fd_step, int steps = 32) {
  double h = time / steps;
  for (int i = 0; i < steps; ++i) {
    Vec k1 = reeb(s, x, fd_step);
    Vec k2 = reeb(s, x + h / 2 * k1, fd_step);
    Vec k3 = reeb(s, x + h / 2 * k2, fd_step);
    Vec k4 = reeb(s, x + h * k3, fd_step);
    x += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return x;
}

void suite_contact_reeb(const SuiteConfig& cfg, SuiteReport& rep) {
  std::vector<std::pair<std::string, PrequantumSpace>> spaces;
  spaces.emplace_back("Xprime", preq_Xprime());
  for (double lam : {0.0, 0.3, 0.7})
    spaces.emplace_back("Xlambda_" + short_tag(lam), preq_Xlambda(lam));

  const int n = capped(cfg, 20);
  for (auto& [name, s] : spaces) {
    double r_norm = 0, r_dw = 0, r_chart = 0, r_pull = 0, r_flow = 0, r_comm = 0;
    bool contact_ok = true;
    for (int i = 0; i < n; ++i) {
      Rng rng = Rng::indexed(cfg.seed, 100 + i);
      Vec x = rand_chart(rng, s.coords);
      try {
        Vec r = reeb(s, x, cfg.fd_step);
        r_norm = std::max(r_norm, std::abs(s.varpi.eval(x, r) - 1.0));
        Vec v = rng.uniform_vec(s.chart_dim, -1, 1).normalized();
        r_dw = std::max(r_dw, std::abs(exterior_derivative(s.varpi, x, r, v, cfg.fd_step)));
        r_chart = std::max(r_chart, (r - Vec(Vec::Unit(s.chart_dim, s.circle_index))).norm());
      } catch (const DegeneracyError&) {
        contact_ok = false;
      }
      GroupElement g = rand_element(s.group, rng);
      auto map = [&](const Vec& p) { return s.action(g, p); };
      Vec v = rng.uniform_vec(s.chart_dim, -1, 1).normalized();
      r_pull = std::max(r_pull, pullback_residual(s.varpi, map, x, v, cfg.fd_step));
      double t = rng.uniform(0.1, 2.0);
      r_flow = std::max(r_flow, chart_distance(s.coords, flow_reeb(s, x, t, cfg.fd_step),
                                               circle_act(s, t, x)));
      r_comm = std::max(r_comm, chart_distance(s.coords, s.action(g, circle_act(s, t, x)),
                                               circle_act(s, t, s.action(g, x))));
    }
    add_check(rep, "contact_condition_" + name, contact_ok, 0);
    add_check(rep, "varpi_of_reeb_" + name, r_norm < 1e-9, r_norm, "<1e-9");
    add_check(rep, "dvarpi_of_reeb_" + name, r_dw < cfg.tol, r_dw, "<tol");
    add_check(rep, "reeb_is_circle_direction_" + name, r_chart < cfg.tol, r_chart, "<tol");
    add_check(rep, "action_preserves_varpi_" + name, r_pull < cfg.tol, r_pull, "<tol");
    add_check(rep, "circle_is_reeb_flow_" + name, r_flow < cfg.tol, r_flow, "<tol");
    add_check(rep, "action_commutes_with_circle_" + name, r_comm < 1e-10, r_comm, "<1e-10");
  }
}

// ---------------------------------------------------------------------------

void suite_prequantum_consistency(const SuiteConfig& cfg, SuiteReport& rep) {
  const int n = capped(cfg, 20);

  // FD momentum vs closed form, and descent to the base orbit.
  double r_fd = 0, r_desc = 0;
  PrequantumSpace xl = preq_Xlambda(0.3);
  PrequantumSpace xp = preq_Xprime();
  HamiltonianSpace base = orbit_X();
  for (int i = 0; i < n; ++i) {
    Rng rng = Rng::indexed(cfg.seed, 200 + i);
    Vec a = rand_chart(rng, xl.coords);
    Vec b = rand_chart(rng, xp.coords);
    r_fd = std::max(r_fd, (preq_moment_fd(xl, a, cfg.fd_step).coeffs - xl.moment(a).coeffs)
                              .cwiseAbs()
                              .maxCoeff());
    r_fd = std::max(r_fd, (preq_moment_fd(xp, b, cfg.fd_step).coeffs - xp.moment(b).coeffs)
                              .cwiseAbs()
                              .maxCoeff());
    r_desc = std::max(r_desc, (preq_moment_fd(xl, a, cfg.fd_step).coeffs -
                               base.moment(a.head(2)).coeffs)
                                  .cwiseAbs()
                                  .maxCoeff());
  }
  add_check(rep, "moment_fd_vs_closed_form", r_fd < 1e-8, r_fd, "<1e-8");
  add_check(rep, "moment_descends_to_base", r_desc < 1e-8, r_desc, "<1e-8");

  // preq_induce(G, H, T_lambda) against the symplectic induction of {c|h}.
  PreqInducedSpace pind = preq_induce(g_group(), h_in_g(), t_lambda(0.3), induce_opts(cfg));
  InducedSpace core =
      induce(g_group(), h_in_g(), point_space(h_group(), c_check_h()), induce_opts(cfg));
  TwoForm dpre = d(pind.varpi, cfg.fd_step);
  double r_level = 0, r_form = 0, r_mom = 0;
  int got = 0;
  for (int i = 0; got < n && i < 5 * n; ++i) {
    auto s = pind.sampler(cfg.seed + 5, i);
    if (!s) continue;
    ++got;
    Rng rng = Rng::indexed(cfg.seed, 300 + i);
    Vec pt = *s;
    r_level = std::max(r_level, pind.psi(pt).cwiseAbs().maxCoeff());
    Vec v8 = rng.uniform_vec(core.chart_dim, -1, 1);
    Vec w8 = rng.uniform_vec(core.chart_dim, -1, 1);
    Vec v9 = Vec::Zero(pind.chart_dim), w9 = Vec::Zero(pind.chart_dim);
    v9.head(core.chart_dim) = v8;
    w9.head(core.chart_dim) = w8;
    double lhs = dpre.eval(pt, v9, w9);
    double rhs = core.omega_n.eval(pt.head(core.chart_dim), v8, w8);
    r_form = std::max(r_form, std::abs(lhs - rhs));
    r_mom = std::max(r_mom, (pind.moment(pt).coeffs - core.moment(pt.head(core.chart_dim)).coeffs)
                                .cwiseAbs()
                                .maxCoeff());
  }
  add_check(rep, "induced_level_residual", r_level < 1e-9, r_level, "<1e-9");
  add_check(rep, "induced_two_form_matches", r_form < cfg.tol, r_form, "<tol");
  add_check(rep, "induced_moment_matches", r_mom < cfg.tol, r_mom, "<tol");

  // Ind_H^G T_lambda vs Xtilde_lambda: holonomy over the generating loop.
  double r_hol = 0;
  for (double lam : {0.0, 0.3, 0.7}) {
    PreqInducedSpace pi = preq_induce(g_group(), h_in_g(), t_lambda(lam), induce_opts(cfg));
    auto loop = [](double t) {
      Vec x(9);
      x << kTwoPi * t, 0, 0, 0, /*mu*/ 0, 1, 0, -1, /*circle*/ 0;
      return x;
    };
    std::complex<double> hq = quotient_holonomy(pi, loop, orbit_opts(cfg));
    PrequantumSpace xs = preq_Xlambda(lam);
    auto base_loop = [](double t) {
      Vec x(3);
      x << 0, kTwoPi * t, 0;
      return x;
    };
    std::complex<double> hd = holonomy(xs, base_loop);
    std::complex<double> expect = std::polar(1.0, -kTwoPi * lam);
    r_hol = std::max(r_hol, std::abs(hq - expect));
    r_hol = std::max(r_hol, std::abs(hd - expect));
    r_hol = std::max(r_hol, std::abs(hq - hd));
  }
  add_check(rep, "induced_holonomy_matches_Xlambda", r_hol < cfg.tol, r_hol, "<tol");

  // Ind_{H'}^{G'} T': momentum image lands on the X' orbit chart.
  PreqInducedSpace pip =
      preq_induce(gprime_group(), hprime_in_gprime(), t_prime(), induce_opts(cfg));
  double r_img = 0;
  got = 0;
  for (int i = 0; got < n && i < 5 * n; ++i) {
    auto s = pip.sampler(cfg.seed + 9, i);
    if (!s) continue;
    ++got;
    Vec c = pip.moment(*s).coeffs;  // (p, Re q, Im q, -s, -t)
    double ss = -c[3];
    r_img = std::max({r_img, std::abs(c[1] - std::cos(ss)), std::abs(c[2] - std::sin(ss)),
                      std::abs(c[4] + 1.0)});
  }
  add_check(rep, "induced_moment_image_on_Xprime", r_img < 1e-9, r_img, "<1e-9");
}

// ---------------------------------------------------------------------------

void suite_gauge_holonomy(const SuiteConfig& cfg, SuiteReport& rep) {
  const int n = capped(cfg, 20);
  const double l1 = 0.3, l2 = 1.3;
  auto f = gauge_equivalence(l2, l1);  // Xtilde_{l2} -> Xtilde_{l1}, z -> z q^{l2-l1}
  add_check(rep, "gauge_map_exists_for_integer_shift", f.has_value(), 0, "present",
            f ? "present" : "absent");
  double r_pull = 0, r_equi = 0;
  if (f) {
    PrequantumSpace s1 = preq_Xlambda(l1), s2 = preq_Xlambda(l2);
    double nshift = std::round(l2 - l1);
    for (int i = 0; i < n; ++i) {
      Rng rng = Rng::indexed(cfg.seed, 400 + i);
      Vec x = rand_chart(rng, s2.coords);
      Vec v = rng.uniform_vec(3, -1, 1).normalized();
      // DF is exact: (v0, v1, v2 + n v1).
      Vec dv = v;
      dv[2] += nshift * v[1];
      r_pull = std::max(r_pull,
                        std::abs(s1.varpi.eval((*f)(x), dv) - s2.varpi.eval(x, v)));
      GroupElement g = rand_element(s2.group, rng);
      r_equi = std::max(r_equi,
                        chart_distance(s1.coords, (*f)(s2.action(g, x)), s1.action(g, (*f)(x))));
    }
  }
  add_check(rep, "gauge_map_pullback", r_pull < 1e-10, r_pull, "<1e-10");
  add_check(rep, "gauge_map_equivariance", r_equi < 1e-9, r_equi, "<1e-9");
  add_check(rep, "no_gauge_map_for_half_shift", !gauge_equivalence(0.0, 0.5).has_value(), 0,
            "absent", gauge_equivalence(0.0, 0.5) ? "present" : "absent");

  auto loop_at = [](double p) {
    return [p](double t) {
      Vec x(3);
      x << p, kTwoPi * t, 0;
      return x;
    };
  };
  double r_hol = 0;
  for (double lam : {0.0, 0.3, 0.7}) {
    std::complex<double> h = holonomy(preq_Xlambda(lam), loop_at(0.0));
    r_hol = std::max(r_hol, std::abs(h - std::polar(1.0, -kTwoPi * lam)));
  }
  add_check(rep, "holonomy_formula", r_hol < cfg.tol, r_hol, "<tol");

  std::complex<double> ha = holonomy(preq_Xlambda(0.3), loop_at(0.25));
  std::complex<double> hb = holonomy(preq_Xlambda(1.3), loop_at(0.25));
  add_check(rep, "integer_shift_same_holonomy", std::abs(ha - hb) < 1e-9, std::abs(ha - hb),
            "<1e-9");

  std::complex<double> h0 = holonomy(preq_Xlambda(0.0), loop_at(0.0));
  std::complex<double> h5 = holonomy(preq_Xlambda(0.5), loop_at(0.0));
  double sep = std::abs(h0 - h5);
  add_check(rep, "half_shift_separates_holonomy", std::abs(sep - 2.0) < cfg.tol,
            std::abs(sep - 2.0), "|1 - (-1)| = 2", format_double(sep));

  auto small_loop = [](double t) {
    Vec x(3);
    x << 3e-4 * std::cos(kTwoPi * t), 3e-4 * std::sin(kTwoPi * t), 0;
    return x;
  };
  std::complex<double> hc = holonomy(preq_Xlambda(0.0), small_loop);
  add_check(rep, "contractible_loop_trivial", std::abs(hc - 1.0) < cfg.tol, std::abs(hc - 1.0),
            "<tol");
}

// ---------------------------------------------------------------------------

void suite_frobenius_prequantum(const SuiteConfig& cfg, SuiteReport& rep) {
  for (double lam : {0.0, 0.3, 0.7}) {
    PreqFrobeniusExampleResult res =
        run_prequantum_frobenius_example(lam, cfg.seed, capped(cfg, 30), orbit_opts(cfg));
    std::string tag = short_tag(lam);
    add_check(rep, "preq_hom_classes_G_side_" + tag, res.g_side_classes == 1, 0, "1",
              std::to_string(res.g_side_classes));
    add_check(rep, "preq_hom_classes_H_side_" + tag, res.h_side_classes == 1, 0, "1",
              std::to_string(res.h_side_classes));
    add_check(rep, "preq_hom_dimension_" + tag, res.g_side_dim == 1, 0, "1",
              std::to_string(res.g_side_dim));
    add_check(rep, "preq_hom_curve_closes_" + tag, res.curve_closure < 1e-4, res.curve_closure,
              "<1e-4");
  }

  PreqFrobeniusSetup fr = make_preq_frobenius(restrict_preq(preq_Xprime(), g_in_gprime()),
                                              h_in_g(), t_lambda(0.3), induce_opts(cfg));
  const int n = capped(cfg, 8);
  double level = 0, bf = 0;
  int fb_ok = 0, fb_total = 0;
  for (int i = 0; i < n; ++i) {
    if (auto ns = fr.n_sampler(cfg.seed, i)) {
      level = std::max(level, fr.n_constraint(*ns).cwiseAbs().maxCoeff());
      Vec m = fr.backward(*ns);
      level = std::max(level, fr.m_constraint(m).cwiseAbs().maxCoeff());
      bf = std::max(bf, chart_distance(fr.n_coords, fr.forward(m), *ns));
    }
    if (auto ms = fr.m_sampler(cfg.seed + 1, i)) {
      ++fb_total;
      Vec m2 = fr.backward(fr.forward(*ms));
      if (fr.m_equivalent(m2, *ms)) ++fb_ok;
    }
  }
  add_check(rep, "preq_level_residuals", level < 1e-9, level, "<1e-9");
  add_check(rep, "preq_backward_then_forward_identity", bf < 1e-9, bf, "<1e-9");
  add_check(rep, "preq_forward_then_backward_in_class", fb_ok == fb_total && fb_total > 0, 0,
            std::to_string(fb_total), std::to_string(fb_ok));
}

// ---------------------------------------------------------------------------

struct SuiteEntry {
  std::string name;
  std::string description;
  void (*run)(const SuiteConfig&, SuiteReport&);
};

const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> entries = {
      {"cardinal", "momentum-map kernel/image identities on the example orbits", suite_cardinal},
      {"induction-dims", "dimension formula and sampled quotient dimension", suite_induction_dims},
      {"stages", "two-step induction: sections, equivariance, 1-form identity, class bijection",
       suite_stages},
      {"frobenius-symplectic", "forward/backward maps and the one-point Hom set",
       suite_frobenius_symplectic},
      {"contact-reeb", "contact conditions, Reeb fields and lifted actions",
       suite_contact_reeb},
      {"prequantum-consistency", "prequantum constructions against their symplectic shadows",
       suite_prequantum_consistency},
      {"gauge-holonomy", "integer gauge maps and loop holonomy", suite_gauge_holonomy},
      {"frobenius-prequantum", "prequantum Hom circles and Frobenius round trips",
       suite_frobenius_prequantum},
  };
  return entries;
}

}  // namespace

std::vector<std::string> list_suite_names() {
  std::vector<std::string> names;
  for (const auto& e : registry()) names.push_back(e.name);
  return names;
}

std::string suite_description(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return e.description;
  return "";
}

SuiteReport run_suite(const SuiteConfig& config) {
  if (config.samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (config.tol <= 0) throw std::invalid_argument("tol must be positive");
  for (const auto& e : registry()) {
    if (e.name != config.suite) continue;
    SuiteReport rep;
    rep.suite = config.suite;
    rep.config = config;
    auto t0 = std::chrono::steady_clock::now();
    e.run(config, rep);
    rep.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  }
  throw std::invalid_argument("unknown suite: " + config.suite);
}

}  // namespace symind
