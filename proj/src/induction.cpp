#include "symind/induction.hpp"

namespace symind {

namespace {

CMat chart_matrix_dir(const GroupPtr& g, const Vec& params, const Vec& dir) {
  if (g->param_to_matrix_dir) return g->param_to_matrix_dir(params, dir);
  const double h = 1e-6;
  return (g->param_to_matrix(params + h * dir) - g->param_to_matrix(params - h * dir)) / (2 * h);
}

std::vector<Coord> real_coords(int n) { return std::vector<Coord>(n, Coord::Real); }

struct LinearLevel {
  Eigen::CompleteOrthogonalDecomposition<Mat> solver;
  Mat null_basis;
  explicit LinearLevel(const Mat& l) : solver(l), null_basis(nullspace(l)) {}
  Vec solve(const Vec& rhs, const Vec& free_part) const {
    Vec x = solver.solve(rhs);
    if (null_basis.cols() > 0) x += null_basis * free_part;
    return x;
  }
};

Vec sample_chart(Rng& rng, const std::vector<Coord>& coords, double box) {
  Vec x(coords.size());
  for (size_t i = 0; i < coords.size(); ++i)
    x[static_cast<int>(i)] = coords[i] == Coord::Angle ? rng.uniform(0, 6.283185307179586)
                                                       : rng.uniform(-box, box);
  return x;
}

// Joint search over two groups acting by commuting chart maps.
std::optional<Vec> two_group_match(const GroupPtr& ga, const ActionFn& act_a, const GroupPtr& gb,
                                   const ActionFn& act_b, const std::vector<Coord>& coords,
                                   const Vec& x1, const Vec& x2, const OrbitSearchOptions& opts) {
  TransformationSearch search;
  const int na = ga->ic_dim;
  const int nb = gb->ic_dim;
  search.nparams = na + nb;
  const int ca = component_count(ga, opts.n_max);
  const int cb = component_count(gb, opts.n_max);
  search.n_components = ca * cb;
  search.apply = [&](int comp, const Vec& u, const Vec& x) {
    GroupElement ea = mul(component_element(ga, comp % ca, opts.n_max),
                          GroupElement{ga, ga->ic_embed(u.head(na))});
    GroupElement eb = mul(component_element(gb, comp / ca, opts.n_max),
                          GroupElement{gb, gb->ic_embed(u.tail(nb))});
    return act_b(eb, act_a(ea, x));
  };
  auto w = transform_match(search, x1, x2, coords, opts);
  if (!w) return std::nullopt;
  return w->u;
}

}  // namespace

int t_star_dim(const GroupPtr& g) { return g->chart_dim + g->algebra_dim(); }

CotangentPoint t_star_unpack(const GroupPtr& g, const Vec& x) {
  return {GroupElement{g, x.head(g->chart_dim)},
          DualVector{g, x.segment(g->chart_dim, g->algebra_dim())}};
}

Vec t_star_pack(const CotangentPoint& p) {
  Vec x(t_star_dim(p.q.group));
  x.head(p.q.params.size()) = p.q.params;
  x.tail(p.mu.coeffs.size()) = p.mu.coeffs;
  return x;
}

OneForm t_star_one_form(const GroupPtr& g) {
  return {t_star_dim(g), [g](const Vec& x, const Vec& v) {
            CotangentPoint p = t_star_unpack(g, x);
            Vec dq = v.head(g->chart_dim);
            CMat dqm = chart_matrix_dir(g, p.q.params, dq);
            CMat qi = g->param_to_matrix(p.q.params).inverse();
            Vec xi = project_to_algebra(g, qi * dqm);
            return p.mu.coeffs.dot(xi);
          }};
}

double canonical_one_form(const GroupPtr& g, const Vec& x, const Vec& v) {
  return t_star_one_form(g).eval(x, v);
}

HamiltonianSpace t_star_space(const GroupPtr& g, double fd_step) {
  HamiltonianSpace s;
  s.group = g;
  s.chart_dim = t_star_dim(g);
  s.coords = real_coords(s.chart_dim);
  s.action = [g](const GroupElement& gg, const Vec& x) {
    CotangentPoint p = t_star_unpack(g, x);
    p.q = mul(gg, p.q);
    return t_star_pack(p);
  };
  s.omega = d(t_star_one_form(g), fd_step);
  s.moment = [g](const Vec& x) {
    CotangentPoint p = t_star_unpack(g, x);
    return coad_action(p.q, p.mu);
  };
  return s;
}

Vec gh_action(const GroupPtr& g, const Subgroup& h, const HamiltonianSpace& y,
              const GroupElement& gg, const GroupElement& hh, const Vec& n) {
  const int td = t_star_dim(g);
  CotangentPoint p = t_star_unpack(g, n.head(td));
  GroupElement ha = include_element(h, hh);
  p.q = mul(gg, mul(p.q, inverse(ha)));
  p.mu = coad_action(ha, p.mu);
  Vec out(n.size());
  out.head(td) = t_star_pack(p);
  if (y.chart_dim > 0) out.tail(y.chart_dim) = y.action(hh, n.tail(y.chart_dim));
  return out;
}

int induced_dim(const GroupPtr& g, const Subgroup& h, const HamiltonianSpace& y) {
  return 2 * (g->algebra_dim() - h.sub->algebra_dim()) + y.chart_dim;
}

Mat InducedSpace::h_orbit_span(const Vec& n, double fd_step) const {
  const int d = h.sub->algebra_dim();
  Mat f(chart_dim, d);
  for (int i = 0; i < d; ++i) {
    AlgebraElement xi{h.sub, Vec::Unit(d, i)};
    f.col(i) = fundamental_field(h_action, coords, xi, n, fd_step);
  }
  return f;
}

InducedSpace induce(const GroupPtr& g, const Subgroup& h, const HamiltonianSpace& y,
                    const InduceOptions& opts) {
  if (y.group != h.sub) throw std::invalid_argument("induce: Y must be a space over H");
  InducedSpace ind;
  ind.big = g;
  ind.h = h;
  ind.y = y;
  const int td = t_star_dim(g);
  ind.chart_dim = td + y.chart_dim;
  ind.coords = real_coords(td);
  ind.coords.insert(ind.coords.end(), y.coords.begin(), y.coords.end());

  Mat restr = h.algebra_inclusion.transpose();  // g* coeffs -> h* coeffs
  auto y_moment = y.moment;
  const int gn = g->chart_dim, gd = g->algebra_dim(), yn = y.chart_dim;
  ind.psi = [restr, y_moment, gn, gd, yn](const Vec& n) {
    Vec mu = n.segment(gn, gd);
    Vec psi_y = y_moment(yn ? Vec(n.tail(yn)) : Vec(Vec::Zero(0))).coeffs;
    return Vec(psi_y - restr * mu);
  };

  HamiltonianSpace yc = y;
  Subgroup hc = h;
  ind.g_action = [g, hc, yc](const GroupElement& gg, const Vec& n) {
    return gh_action(g, hc, yc, gg, identity(hc.sub), n);
  };
  ind.h_action = [g, hc, yc](const GroupElement& hh, const Vec& n) {
    return gh_action(g, hc, yc, identity(g), hh, n);
  };
  ind.moment = [g, gn, gd](const Vec& n) {
    CotangentPoint p = t_star_unpack(g, n.head(gn + gd));
    return coad_action(p.q, p.mu);
  };

  ind.varpi_n = {ind.chart_dim, [g, td](const Vec& n, const Vec& v) {
                   return canonical_one_form(g, n.head(td), v.head(td));
                 }};
  TwoForm dv = d(ind.varpi_n, opts.fd_step);
  TwoForm wy = y.omega;
  ind.omega_n = {ind.chart_dim, [dv, wy, td, yn](const Vec& n, const Vec& v, const Vec& w) {
                   double s = dv.eval(n, v, w);
                   if (yn) s += wy.eval(n.tail(yn), v.tail(yn), w.tail(yn));
                   return s;
                 }};

  auto level = std::make_shared<LinearLevel>(restr);
  auto coords = ind.coords;
  double box = opts.sample_box;
  ind.sampler = [level, y_moment, coords, box, gn, gd,
                 yn](std::uint64_t seed, std::uint64_t index) -> std::optional<Vec> {
    Rng rng = Rng::indexed(seed, index);
    Vec n(gn + gd + yn);
    for (int i = 0; i < gn; ++i) n[i] = rng.uniform(-box, box);
    Vec ychart(yn);
    for (int i = 0; i < yn; ++i)
      ychart[i] = coords[static_cast<size_t>(gn + gd + i)] == Coord::Angle
                      ? rng.uniform(0, 6.283185307179586)
                      : rng.uniform(-box, box);
    Vec psi_y = y_moment(ychart).coeffs;
    Vec free = rng.uniform_vec(static_cast<int>(level->null_basis.cols()), -box, box);
    n.segment(gn, gd) = level->solve(psi_y, free);
    if (yn) n.tail(yn) = ychart;
    return n;
  };

  OrbitSearchOptions orbit = opts.orbit;
  auto h_action = ind.h_action;
  auto sub = h.sub;
  ind.equivalent = [sub, h_action, coords, orbit](const Vec& a, const Vec& b) {
    return orbit_equivalent(sub, h_action, coords, a, b, orbit);
  };
  return ind;
}

double reduced_form(const InducedSpace& ind, const Vec& pt, const Vec& v, const Vec& w,
                    double tangent_tol, double fd_step) {
  Mat jac = jacobian(ind.psi, pt, fd_step);
  for (const Vec* t : {&v, &w}) {
    double r = (jac * (*t)).cwiseAbs().maxCoeff();
    if (r > tangent_tol * std::max(1.0, t->cwiseAbs().maxCoeff()))
      throw std::invalid_argument("reduced_form: tangent not tangent to the level set");
  }
  return ind.omega_n.eval(pt, v, w);
}

StagesData make_stages(const GroupPtr& g, const Subgroup& k_in_g, const Subgroup& h_in_k,
                       const HamiltonianSpace& y, const InduceOptions& opts,
                       const OneForm* y_varpi) {
  StagesData st;
  st.big = g;
  st.k_in_g = k_in_g;
  st.h_in_k = h_in_k;
  st.h_in_g = compose_subgroups(h_in_k, k_in_g);
  st.y = y;
  GroupPtr kg = k_in_g.sub;
  GroupPtr hg = h_in_k.sub;
  if (y.group != hg) throw std::invalid_argument("make_stages: Y must be a space over H");

  const int gn = g->chart_dim, gd = g->algebra_dim();
  const int kn = kg->chart_dim, kd = kg->algebra_dim();
  const int yn = y.chart_dim;
  st.m_dim = gn + gd + kn + kd + yn;
  st.m_coords = real_coords(gn + gd + kn + kd);
  st.m_coords.insert(st.m_coords.end(), y.coords.begin(), y.coords.end());
  st.n_dim = gn + gd + yn;
  st.n_coords = real_coords(gn + gd);
  st.n_coords.insert(st.n_coords.end(), y.coords.begin(), y.coords.end());

  if (y_varpi) st.y_varpi = *y_varpi;
  else st.y_varpi = {yn, [](const Vec&, const Vec&) { return 0.0; }};

  Mat restr_k = k_in_g.algebra_inclusion.transpose();   // g* -> k*
  Mat restr_h = h_in_k.algebra_inclusion.transpose();   // k* -> h*
  auto y_moment = y.moment;

  auto unpack_k = [kg, gn, gd](const Vec& m) {
    return t_star_unpack(kg, m.segment(gn + gd, kg->chart_dim + kg->algebra_dim()));
  };
  auto ychart_of = [gn, gd, kn, kd, yn](const Vec& m) {
    return yn ? Vec(m.segment(gn + gd + kn + kd, yn)) : Vec(Vec::Zero(0));
  };

  st.m_constraint = [g, gn, gd, restr_k, restr_h, y_moment, unpack_k, ychart_of, kd](const Vec& m) {
    CotangentPoint pk = unpack_k(m);
    Vec mu = m.segment(gn, gd);
    Vec phibar = coad_action(pk.q, pk.mu).coeffs - restr_k * mu;
    Vec psibar = y_moment(ychart_of(m)).coeffs - restr_h * pk.mu.coeffs;
    Vec out(phibar.size() + psibar.size());
    out << phibar, psibar;
    (void)kd;
    return out;
  };

  Mat restr_hg = st.h_in_g.algebra_inclusion.transpose();
  st.n_constraint = [gn, gd, restr_hg, y_moment, yn](const Vec& n) {
    Vec mu = n.segment(gn, gd);
    return Vec(y_moment(yn ? Vec(n.tail(yn)) : Vec(Vec::Zero(0))).coeffs - restr_hg * mu);
  };

  Subgroup kig = k_in_g;
  st.map_s = [g, kig, gn, gd, unpack_k, yn, kn, kd](const Vec& m) {
    CotangentPoint pg = t_star_unpack(g, m.head(gn + gd));
    CotangentPoint pk = unpack_k(m);
    GroupElement qbar = include_element(kig, pk.q);
    CotangentPoint out{mul(pg.q, qbar), coad_action(inverse(qbar), pg.mu)};
    Vec n(gn + gd + yn);
    n.head(gn + gd) = t_star_pack(out);
    if (yn) n.tail(yn) = m.segment(gn + gd + kn + kd, yn);
    return n;
  };

  st.section = [gn, gd, kn, kd, yn, restr_k](const Vec& n) {
    Vec m(gn + gd + kn + kd + yn);
    m.head(gn + gd) = n.head(gn + gd);
    m.segment(gn + gd, kn).setZero();  // qbar = e
    m.segment(gn + gd + kn, kd) = restr_k * n.segment(gn, gd);
    if (yn) m.tail(yn) = n.tail(yn);
    return m;
  };

  OneForm vg = t_star_one_form(g);
  OneForm vk = t_star_one_form(kg);
  OneForm vy = st.y_varpi;
  st.varpi_m = {st.m_dim, [vg, vk, vy, gn, gd, kn, kd, yn](const Vec& m, const Vec& v) {
                  double s = vg.eval(m.head(gn + gd), v.head(gn + gd));
                  s += vk.eval(m.segment(gn + gd, kn + kd), v.segment(gn + gd, kn + kd));
                  if (yn && vy.eval) s += vy.eval(m.tail(yn), v.tail(yn));
                  return s;
                }};
  st.varpi_n = {st.n_dim, [vg, vy, gn, gd, yn](const Vec& n, const Vec& v) {
                  double s = vg.eval(n.head(gn + gd), v.head(gn + gd));
                  if (yn && vy.eval) s += vy.eval(n.tail(yn), v.tail(yn));
                  return s;
                }};

  auto level_h = std::make_shared<LinearLevel>(restr_h);
  auto level_k = std::make_shared<LinearLevel>(restr_k);
  auto m_coords = st.m_coords;
  double box = opts.sample_box;
  st.m_sampler = [=](std::uint64_t seed, std::uint64_t index) -> std::optional<Vec> {
    Rng rng = Rng::indexed(seed, index);
    Vec m(gn + gd + kn + kd + yn);
    for (int i = 0; i < gn; ++i) m[i] = rng.uniform(-box, box);
    for (int i = 0; i < kn; ++i) m[gn + gd + i] = rng.uniform(-box, box);
    Vec ychart(yn);
    for (int i = 0; i < yn; ++i)
      ychart[i] = m_coords[static_cast<size_t>(gn + gd + kn + kd + i)] == Coord::Angle
                      ? rng.uniform(0, 6.283185307179586)
                      : rng.uniform(-box, box);
    if (yn) m.tail(yn) = ychart;
    // mubar from psibar = 0, then mu from phibar = 0; both exact linear solves.
    Vec psi_y = y_moment(ychart).coeffs;
    Vec free_k = rng.uniform_vec(static_cast<int>(level_h->null_basis.cols()), -box, box);
    Vec mubar = level_h->solve(psi_y, free_k);
    m.segment(gn + gd + kn, kd) = mubar;
    CotangentPoint pk{GroupElement{kg, m.segment(gn + gd, kn)}, DualVector{kg, mubar}};
    Vec target = coad_action(pk.q, pk.mu).coeffs;
    Vec free_g = rng.uniform_vec(static_cast<int>(level_k->null_basis.cols()), -box, box);
    m.segment(gn, gd) = level_k->solve(target, free_g);
    return m;
  };

  // Action pieces.
  st.g_action_m = [g, gn, gd](const GroupElement& gg, const Vec& m) {
    Vec out = m;
    CotangentPoint p = t_star_unpack(g, m.head(gn + gd));
    p.q = mul(gg, p.q);
    out.head(gn + gd) = t_star_pack(p);
    return out;
  };
  st.k_action_m = [g, kg, kig, gn, gd, kn, kd](const GroupElement& kk, const Vec& m) {
    Vec out = m;
    CotangentPoint pg = t_star_unpack(g, m.head(gn + gd));
    GroupElement ka = include_element(kig, kk);
    pg.q = mul(pg.q, inverse(ka));
    pg.mu = coad_action(ka, pg.mu);
    out.head(gn + gd) = t_star_pack(pg);
    CotangentPoint pk = t_star_unpack(kg, m.segment(gn + gd, kn + kd));
    pk.q = mul(kk, pk.q);
    out.segment(gn + gd, kn + kd) = t_star_pack(pk);
    return out;
  };
  Subgroup hik = h_in_k;
  HamiltonianSpace yc = y;
  st.h_action_m = [kg, hik, yc, gn, gd, kn, kd, yn](const GroupElement& hh, const Vec& m) {
    Vec out = m;
    CotangentPoint pk = t_star_unpack(kg, m.segment(gn + gd, kn + kd));
    GroupElement ha = include_element(hik, hh);
    pk.q = mul(pk.q, inverse(ha));
    pk.mu = coad_action(ha, pk.mu);
    out.segment(gn + gd, kn + kd) = t_star_pack(pk);
    if (yn) out.tail(yn) = yc.action(hh, m.tail(yn));
    return out;
  };
  Subgroup hig = st.h_in_g;
  st.g_action_n = [g, gn, gd](const GroupElement& gg, const Vec& n) {
    Vec out = n;
    CotangentPoint p = t_star_unpack(g, n.head(gn + gd));
    p.q = mul(gg, p.q);
    out.head(gn + gd) = t_star_pack(p);
    return out;
  };
  st.h_action_n = [g, hig, yc, gn, gd, yn](const GroupElement& hh, const Vec& n) {
    Vec out = n;
    CotangentPoint p = t_star_unpack(g, n.head(gn + gd));
    GroupElement ha = include_element(hig, hh);
    p.q = mul(p.q, inverse(ha));
    p.mu = coad_action(ha, p.mu);
    out.head(gn + gd) = t_star_pack(p);
    if (yn) out.tail(yn) = yc.action(hh, n.tail(yn));
    return out;
  };

  st.m_moment = [g, gn, gd](const Vec& m) {
    CotangentPoint p = t_star_unpack(g, m.head(gn + gd));
    return coad_action(p.q, p.mu).coeffs;
  };
  st.n_moment = st.m_moment;

  OrbitSearchOptions orbit = opts.orbit;
  auto k_act = st.k_action_m;
  auto h_act = st.h_action_m;
  st.m_equivalent = [kg, hg, k_act, h_act, m_coords, orbit](const Vec& a, const Vec& b) {
    return two_group_match(kg, k_act, hg, h_act, m_coords, a, b, orbit);
  };
  auto h_act_n = st.h_action_n;
  auto n_coords = st.n_coords;
  st.n_equivalent = [hg, h_act_n, n_coords, orbit](const Vec& a, const Vec& b) {
    return orbit_equivalent(hg, h_act_n, n_coords, a, b, orbit);
  };
  return st;
}

double stages_form_residual(const StagesData& st, const Vec& m, const Vec& v, double fd_step) {
  Vec n = st.map_s(m);
  // Push the tangent through s by finite differences.
  Vec sv = (st.map_s(m + fd_step * v) - st.map_s(m - fd_step * v)) / (2 * fd_step);
  double lhs = st.varpi_n.eval(n, sv);
  double rhs = st.varpi_m.eval(m, v);
  return std::abs(lhs - rhs);
}

FrobeniusSetup make_frobenius(const HamiltonianSpace& x, const Subgroup& h,
                              const HamiltonianSpace& y, const InduceOptions& opts) {
  FrobeniusSetup fr;
  fr.x = x;
  fr.h = h;
  fr.y = y;
  GroupPtr g = x.group;
  GroupPtr hg = h.sub;
  if (y.group != hg) throw std::invalid_argument("make_frobenius: Y must be a space over H");
  const int xn = x.chart_dim, gn = g->chart_dim, gd = g->algebra_dim(), yn = y.chart_dim;
  fr.m_dim = xn + gn + gd + yn;
  fr.m_coords = x.coords;
  auto mid = real_coords(gn + gd);
  fr.m_coords.insert(fr.m_coords.end(), mid.begin(), mid.end());
  fr.m_coords.insert(fr.m_coords.end(), y.coords.begin(), y.coords.end());
  fr.n_dim = xn + yn;
  fr.n_coords = x.coords;
  fr.n_coords.insert(fr.n_coords.end(), y.coords.begin(), y.coords.end());

  Mat restr = h.algebra_inclusion.transpose();
  auto x_moment = x.moment;
  auto y_moment = y.moment;
  auto ychart_m = [xn, gn, gd, yn](const Vec& m) {
    return yn ? Vec(m.segment(xn + gn + gd, yn)) : Vec(Vec::Zero(0));
  };

  fr.m_constraint = [g, xn, gn, gd, restr, x_moment, y_moment, ychart_m](const Vec& m) {
    CotangentPoint p = t_star_unpack(g, m.segment(xn, gn + gd));
    Vec phibar = coad_action(p.q, p.mu).coeffs - x_moment(m.head(xn)).coeffs;
    Vec psibar = y_moment(ychart_m(m)).coeffs - restr * p.mu.coeffs;
    Vec out(phibar.size() + psibar.size());
    out << phibar, psibar;
    return out;
  };
  fr.n_constraint = [xn, yn, restr, x_moment, y_moment](const Vec& n) {
    Vec psi_y = y_moment(yn ? Vec(n.tail(yn)) : Vec(Vec::Zero(0))).coeffs;
    return Vec(psi_y - restr * x_moment(n.head(xn)).coeffs);
  };

  HamiltonianSpace xc = x;
  fr.forward = [g, xc, xn, gn, gd, yn](const Vec& m) {
    GroupElement qbar{g, m.segment(xn, gn)};
    Vec n(xn + yn);
    n.head(xn) = xc.action(inverse(qbar), m.head(xn));
    if (yn) n.tail(yn) = m.segment(xn + gn + gd, yn);
    return n;
  };
  fr.backward = [xc, x_moment, xn, gn, gd, yn](const Vec& n) {
    Vec m(xn + gn + gd + yn);
    m.head(xn) = n.head(xn);
    m.segment(xn, gn).setZero();
    m.segment(xn + gn, gd) = x_moment(n.head(xn)).coeffs;
    if (yn) m.tail(yn) = n.tail(yn);
    return m;
  };

  double box = opts.sample_box;
  auto m_coords = fr.m_coords;
  auto n_coords = fr.n_coords;
  double level_tol = 1e-9;
  fr.m_sampler = [g, x_moment, y_moment, m_coords, box, xn, gn, gd, yn, restr,
                  level_tol](std::uint64_t seed, std::uint64_t index) -> std::optional<Vec> {
    Rng rng = Rng::indexed(seed, index);
    // Solve over (x, qbar, y); mubar is then forced by phibar = 0.
    std::vector<Coord> rc(m_coords.begin(), m_coords.begin() + xn + gn);
    for (int i = 0; i < yn; ++i) rc.push_back(m_coords[static_cast<size_t>(xn + gn + gd + i)]);
    Vec z0 = sample_chart(rng, rc, box);
    auto resid = [&](const Vec& z) {
      GroupElement qbar{g, z.segment(xn, gn)};
      DualVector mubar = coad_action(inverse(qbar), x_moment(z.head(xn)));
      Vec psi_y = y_moment(yn ? Vec(z.tail(yn)) : Vec(Vec::Zero(0))).coeffs;
      return Vec(psi_y - restr * mubar.coeffs);
    };
    NlsqOptions nlsq;
    nlsq.tol = level_tol * 1e-3;
    NlsqResult res = levenberg_marquardt(resid, z0, nlsq);
    if (res.max_resid >= level_tol) return std::nullopt;
    GroupElement qbar{g, res.x.segment(xn, gn)};
    Vec m(xn + gn + gd + yn);
    m.head(xn + gn) = res.x.head(xn + gn);
    m.segment(xn + gn, gd) = coad_action(inverse(qbar), x_moment(res.x.head(xn))).coeffs;
    if (yn) m.tail(yn) = res.x.tail(yn);
    return m;
  };
  auto n_constraint = fr.n_constraint;
  fr.n_sampler = [n_constraint, n_coords, box,
                  level_tol](std::uint64_t seed, std::uint64_t index) -> std::optional<Vec> {
    Rng rng = Rng::indexed(seed, index);
    Vec z0 = sample_chart(rng, n_coords, box);
    NlsqOptions nlsq;
    nlsq.tol = level_tol * 1e-3;
    NlsqResult res = levenberg_marquardt(n_constraint, z0, nlsq);
    if (res.max_resid < level_tol) return res.x;
    return std::nullopt;
  };

  Subgroup hc = h;
  HamiltonianSpace yc = y;
  auto g_act_m = [g, xc, xn, gn, gd](const GroupElement& gg, const Vec& m) {
    Vec out = m;
    out.head(xn) = xc.action(gg, m.head(xn));
    CotangentPoint p = t_star_unpack(g, m.segment(xn, gn + gd));
    p.q = mul(gg, p.q);
    out.segment(xn, gn + gd) = t_star_pack(p);
    return out;
  };
  auto h_act_m = [g, hc, yc, xn, gn, gd, yn](const GroupElement& hh, const Vec& m) {
    Vec out = m;
    CotangentPoint p = t_star_unpack(g, m.segment(xn, gn + gd));
    GroupElement ha = include_element(hc, hh);
    p.q = mul(p.q, inverse(ha));
    p.mu = coad_action(ha, p.mu);
    out.segment(xn, gn + gd) = t_star_pack(p);
    if (yn) out.tail(yn) = yc.action(hh, m.tail(yn));
    return out;
  };
  OrbitSearchOptions orbit = opts.orbit;
  fr.m_equivalent = [g, hg, g_act_m, h_act_m, m_coords, orbit](const Vec& a, const Vec& b) {
    return two_group_match(g, g_act_m, hg, h_act_m, m_coords, a, b, orbit);
  };
  auto h_act_n = [hc, xc, yc, xn, yn](const GroupElement& hh, const Vec& n) {
    Vec out = n;
    out.head(xn) = xc.action(include_element(hc, hh), n.head(xn));
    if (yn) out.tail(yn) = yc.action(hh, n.tail(yn));
    return out;
  };
  fr.n_equivalent = [hg, h_act_n, n_coords, orbit](const Vec& a, const Vec& b) {
    return orbit_equivalent(hg, ActionFn(h_act_n), n_coords, a, b, orbit);
  };
  return fr;
}

}  // namespace symind
