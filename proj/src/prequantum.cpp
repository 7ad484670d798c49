#include "symind/prequantum.hpp"

namespace symind {

namespace {

constexpr double kTwoPi = 6.283185307179586;

Vec sample_chart(Rng& rng, const std::vector<Coord>& coords, double box) {
  Vec x(coords.size());
  for (size_t i = 0; i < coords.size(); ++i)
    x[static_cast<int>(i)] =
        coords[i] == Coord::Angle ? rng.uniform(0, kTwoPi) : rng.uniform(-box, box);
  return x;
}

}  // namespace

Vec circle_act(const PrequantumSpace& s, double t, const Vec& x) {
  Vec out = x;
  out[s.circle_index] += s.circle_sign * t;
  return out;
}

Vec reeb(const PrequantumSpace& s, const Vec& x, double fd_step) {
  const int n = s.chart_dim;
  Mat gram(n, n);
  for (int i = 0; i < n; ++i) {
    gram(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      double v = exterior_derivative(s.varpi, x, Vec::Unit(n, i), Vec::Unit(n, j), fd_step);
      gram(i, j) = v;
      gram(j, i) = -v;
    }
  }
  Mat null = nullspace(gram);
  if (null.cols() != 1)
    throw DegeneracyError("reeb: Ker(d varpi) is " + std::to_string(null.cols()) +
                          "-dimensional at this point");
  Vec dir = null.col(0);
  double val = s.varpi.eval(x, dir);
  if (std::abs(val) < 1e-8)
    throw DegeneracyError("reeb: Ker(d varpi) not transverse to Ker(varpi)");
  return dir / val;
}

double preq_moment_pair(const PrequantumSpace& s, const AlgebraElement& z, const Vec& x,
                        double fd_step) {
  Vec field = fundamental_field(s.action, s.coords, z, x, fd_step);
  return s.varpi.eval(x, field);
}

DualVector preq_moment_fd(const PrequantumSpace& s, const Vec& x, double fd_step) {
  const int d = s.group->algebra_dim();
  Vec coeffs(d);
  for (int i = 0; i < d; ++i)
    coeffs[i] = preq_moment_pair(s, AlgebraElement{s.group, Vec::Unit(d, i)}, x, fd_step);
  return {s.group, coeffs};
}

DualVector preq_moment(const PrequantumSpace& s, const Vec& x, double fd_step) {
  if (s.moment) return s.moment(x);
  return preq_moment_fd(s, x, fd_step);
}

double pullback_residual(const OneForm& form, const std::function<Vec(const Vec&)>& map,
                         const Vec& x, const Vec& v, double fd_step) {
  Vec pushed = (map(x + fd_step * v) - map(x - fd_step * v)) / (2 * fd_step);
  return std::abs(form.eval(map(x), pushed) - form.eval(x, v));
}

PrequantumSpace preq_dual(const PrequantumSpace& s) {
  PrequantumSpace out = s;
  OneForm w = s.varpi;
  out.varpi = {w.dim, [w](const Vec& x, const Vec& v) { return -w.eval(x, v); }};
  out.circle_sign = -s.circle_sign;
  if (s.moment) {
    auto m = s.moment;
    out.moment = [m](const Vec& x) {
      DualVector mu = m(x);
      mu.coeffs = -mu.coeffs;
      return mu;
    };
  }
  return out;
}

PrequantumSpace restrict_preq(const PrequantumSpace& s, const Subgroup& k) {
  if (k.amb != s.group) throw std::invalid_argument("restrict_preq: subgroup/ambient mismatch");
  PrequantumSpace out = s;
  out.group = k.sub;
  Subgroup kc = k;
  ActionFn act = s.action;
  out.action = [kc, act](const GroupElement& g, const Vec& x) {
    return act(include_element(kc, g), x);
  };
  if (s.moment) {
    auto m = s.moment;
    out.moment = [m, kc](const Vec& x) { return restrict_dual(m(x), kc); };
  }
  return out;
}

PrequantumSpace unit_circle_space(const GroupPtr& g,
                                  std::function<double(const GroupElement&)> phase,
                                  const Vec& mu0) {
  PrequantumSpace s;
  s.group = g;
  s.chart_dim = 1;
  s.coords = {Coord::Angle};
  s.circle_index = 0;
  s.circle_sign = 1.0;
  s.varpi = {1, [](const Vec&, const Vec& v) { return v[0]; }};
  s.action = [phase](const GroupElement& gg, const Vec& x) {
    Vec out = x;
    out[0] += phase(gg);
    return out;
  };
  DualVector mu{g, mu0};
  s.moment = [mu](const Vec&) { return mu; };
  return s;
}

PrequantumSpace box_product(const PrequantumSpace& s1, const PrequantumSpace& s2) {
  if (s1.circle_index < 0 || s2.circle_index < 0)
    throw std::invalid_argument("box_product: factor without an explicit circle coordinate");
  if (s1.group != s2.group) throw std::invalid_argument("box_product: factors over different groups");
  const int d1 = s1.chart_dim, d2 = s2.chart_dim, c1 = s1.circle_index;
  PrequantumSpace box;
  box.group = s1.group;
  box.chart_dim = d1 - 1 + d2;
  for (int i = 0; i < d1; ++i)
    if (i != c1) box.coords.push_back(s1.coords[static_cast<size_t>(i)]);
  box.coords.insert(box.coords.end(), s2.coords.begin(), s2.coords.end());
  box.circle_index = d1 - 1 + s2.circle_index;
  box.circle_sign = s2.circle_sign;

  // Slice chart -> product chart, with the gauge-fixed circle slot zeroed.
  auto embed = [d1, d2, c1](const Vec& b) {
    Vec u1(d1), u2(d2);
    int k = 0;
    for (int i = 0; i < d1; ++i) u1[i] = i == c1 ? 0.0 : b[k++];
    u2 = b.tail(d2);
    Vec full(d1 + d2);
    full << u1, u2;
    return full;
  };
  auto extract = [d1, d2, c1](const Vec& full) {
    Vec b(d1 - 1 + d2);
    int k = 0;
    for (int i = 0; i < d1; ++i)
      if (i != c1) b[k++] = full[i];
    b.tail(d2) = full.tail(d2);
    return b;
  };
  // Anti-diagonal move returning the representative with circle1 = 0.
  double sg1 = s1.circle_sign, sg2 = s2.circle_sign;
  int c2 = s2.circle_index;
  auto regauge = [d1, c1, c2, sg1, sg2](Vec full) {
    double t = sg1 * full[c1];
    full[c1] = 0.0;
    full[d1 + c2] += sg2 * t;
    return full;
  };

  OneForm w1 = s1.varpi, w2 = s2.varpi;
  box.varpi = {box.chart_dim, [embed, w1, w2, d1, d2, c1](const Vec& b, const Vec& v) {
                 Vec x = embed(b);
                 Vec ve(d1 + d2);
                 int k = 0;
                 for (int i = 0; i < d1; ++i) ve[i] = i == c1 ? 0.0 : v[k++];
                 ve.tail(d2) = v.tail(d2);
                 return w1.eval(x.head(d1), ve.head(d1)) + w2.eval(x.tail(d2), ve.tail(d2));
               }};
  ActionFn a1 = s1.action, a2 = s2.action;
  box.action = [embed, extract, regauge, a1, a2, d1, d2](const GroupElement& g, const Vec& b) {
    Vec x = embed(b);
    Vec full(d1 + d2);
    full.head(d1) = a1(g, x.head(d1));
    full.tail(d2) = a2(g, x.tail(d2));
    return extract(regauge(full));
  };
  if (s1.moment && s2.moment) {
    auto m1 = s1.moment, m2 = s2.moment;
    GroupPtr grp = box.group;
    box.moment = [embed, m1, m2, d1, d2, grp](const Vec& b) {
      Vec x = embed(b);
      return DualVector{grp, m1(x.head(d1)).coeffs + m2(x.tail(d2)).coeffs};
    };
  }
  return box;
}

bool PrequantumQuotient::action_free_at(const Vec& x, double) const {
  Mat span = orbit_span(x);
  return rank(span) == total.group->algebra_dim();
}

int PrequantumQuotient::local_dim(const Vec& x, double fd_step, double cutoff) const {
  Mat jac = jacobian(constraint, x, fd_step);
  Mat tang = nullspace(jac);
  Mat orb = colspace(orbit_span(x));
  Mat resid = tang;
  if (orb.cols() > 0) resid -= orb * (orb.transpose() * tang);
  Eigen::JacobiSVD<Mat> svd(resid);
  int d = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > cutoff) ++d;
  return d;
}

PrequantumQuotient preq_reduce(const PrequantumSpace& s, const HomOptions& opts) {
  PrequantumQuotient q;
  q.total = s;
  PrequantumSpace sc = s;
  double fd = opts.fd_step;
  q.constraint = [sc, fd](const Vec& x) { return preq_moment(sc, x, fd).coeffs; };

  auto coords = s.coords;
  double box = opts.sample_box;
  double level_tol = opts.level_tol;
  auto constraint = q.constraint;
  q.sampler = [constraint, coords, box,
               level_tol](std::uint64_t seed, std::uint64_t index) -> std::optional<Vec> {
    Rng rng = Rng::indexed(seed, index);
    Vec z0 = sample_chart(rng, coords, box);
    NlsqOptions nlsq;
    nlsq.tol = level_tol * 1e-3;
    NlsqResult res = levenberg_marquardt(constraint, z0, nlsq);
    if (res.max_resid < level_tol) return res.x;
    return std::nullopt;
  };

  OrbitSearchOptions orbit = opts.orbit;
  GroupPtr grp = s.group;
  ActionFn act = s.action;
  q.equivalent = [grp, act, coords, orbit](const Vec& a, const Vec& b) {
    return orbit_equivalent(grp, act, coords, a, b, orbit);
  };
  OrbitSearchOptions comp_orbit = opts.orbit;
  if (s.circle_index >= 0) comp_orbit.ignore_coords.push_back(s.circle_index);
  q.same_component = [grp, act, coords, comp_orbit](const Vec& a, const Vec& b) {
    return orbit_equivalent(grp, act, coords, a, b, comp_orbit).has_value();
  };
  q.orbit_span = [grp, act, coords, fd](const Vec& x) {
    const int d = grp->algebra_dim();
    Mat f(x.size(), d);
    for (int i = 0; i < d; ++i)
      f.col(i) = fundamental_field(act, coords, AlgebraElement{grp, Vec::Unit(d, i)}, x, fd);
    return f;
  };
  return q;
}

PrequantumQuotient preq_hom(const PrequantumSpace& s1, const PrequantumSpace& s2,
                            const HomOptions& opts) {
  return preq_reduce(box_product(preq_dual(s1), s2), opts);
}

PreqInducedSpace preq_induce(const GroupPtr& g, const Subgroup& h, const PrequantumSpace& ytilde,
                             const InduceOptions& opts) {
  // Underlying Hamiltonian H-space of Ytilde drives the symplectic machinery.
  HamiltonianSpace y;
  y.group = ytilde.group;
  y.chart_dim = ytilde.chart_dim;
  y.coords = ytilde.coords;
  y.action = ytilde.action;
  y.omega = d(ytilde.varpi, opts.fd_step);
  PrequantumSpace yc = ytilde;
  double fd = opts.fd_step;
  y.moment = [yc, fd](const Vec& x) { return preq_moment(yc, x, fd); };
  InducedSpace core = induce(g, h, y, opts);

  PreqInducedSpace out;
  out.big = g;
  out.h = h;
  out.ytilde = ytilde;
  out.chart_dim = core.chart_dim;
  out.coords = core.coords;
  const int td = t_star_dim(g);
  out.circle_index = td + ytilde.circle_index;
  out.circle_sign = ytilde.circle_sign;
  OneForm wy = ytilde.varpi;
  int yn = ytilde.chart_dim;
  out.varpi = {out.chart_dim, [g, td, wy, yn](const Vec& n, const Vec& v) {
                 return canonical_one_form(g, n.head(td), v.head(td)) +
                        wy.eval(n.tail(yn), v.tail(yn));
               }};
  out.psi = core.psi;
  out.g_action = core.g_action;
  out.h_action = core.h_action;
  out.moment = core.moment;
  out.sampler = core.sampler;
  out.equivalent = core.equivalent;
  return out;
}

namespace {

// Phase ODE for the horizontal lift: theta' = -varpi(base') / varpi(e_circle).
double phase_rate(const OneForm& varpi, int circle, const std::function<Vec(double)>& path,
                  double t, double theta) {
  const double dt = 1e-6;
  Vec x = path(t);
  Vec vb = (path(t + dt) - path(t - dt)) / (2 * dt);
  x[circle] = theta;
  vb[circle] = 0.0;
  double denom = varpi.eval(x, Vec::Unit(x.size(), circle));
  return -varpi.eval(x, vb) / denom;
}

double rk4_phase(const OneForm& varpi, int circle, const std::function<Vec(double)>& path,
                 int n_steps) {
  double theta = 0.0;
  const double h = 1.0 / n_steps;
  for (int i = 0; i < n_steps; ++i) {
    double t = i * h;
    double k1 = phase_rate(varpi, circle, path, t, theta);
    double k2 = phase_rate(varpi, circle, path, t + h / 2, theta + h / 2 * k1);
    double k3 = phase_rate(varpi, circle, path, t + h / 2, theta + h / 2 * k2);
    double k4 = phase_rate(varpi, circle, path, t + h, theta + h * k3);
    theta += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return theta;
}

}  // namespace

std::complex<double> holonomy(const PrequantumSpace& s, const std::function<Vec(double)>& base_loop,
                              int n_steps) {
  double dtheta = rk4_phase(s.varpi, s.circle_index, base_loop, n_steps);
  return std::polar(1.0, s.circle_sign * dtheta);
}

std::complex<double> quotient_holonomy(const PreqInducedSpace& ind,
                                       const std::function<Vec(double)>& path,
                                       const OrbitSearchOptions& orbit, int n_steps) {
  double dtheta = rk4_phase(ind.varpi, ind.circle_index, path, n_steps);
  Vec x0 = path(0.0);
  x0[ind.circle_index] = 0.0;
  Vec x1 = path(1.0);
  x1[ind.circle_index] = dtheta;
  OrbitSearchOptions o = orbit;
  o.ignore_coords.push_back(ind.circle_index);
  auto witness = orbit_equivalent(ind.h.sub, ind.h_action, ind.coords, x1, x0, o);
  if (!witness) throw std::runtime_error("quotient_holonomy: loop does not close in the quotient");
  Vec closed = ind.h_action(*witness, x1);
  double shift = closed[ind.circle_index] - x0[ind.circle_index];
  return std::polar(1.0, ind.circle_sign * shift);
}

PreqFrobeniusSetup make_preq_frobenius(const PrequantumSpace& xt, const Subgroup& h,
                                       const PrequantumSpace& yt, const InduceOptions& opts) {
  PreqFrobeniusSetup fr;
  fr.xt = xt;
  fr.h = h;
  fr.yt = yt;
  GroupPtr g = xt.group;
  GroupPtr hg = h.sub;
  if (yt.group != hg) throw std::invalid_argument("make_preq_frobenius: Yt must be over H");
  const int xd = xt.chart_dim, gn = g->chart_dim, gd = g->algebra_dim(), yd = yt.chart_dim;
  fr.m_dim = xd + gn + gd + yd;
  fr.m_coords = xt.coords;
  auto mid = std::vector<Coord>(static_cast<size_t>(gn + gd), Coord::Real);
  fr.m_coords.insert(fr.m_coords.end(), mid.begin(), mid.end());
  fr.m_coords.insert(fr.m_coords.end(), yt.coords.begin(), yt.coords.end());
  fr.n_dim = xd + yd;
  fr.n_coords = xt.coords;
  fr.n_coords.insert(fr.n_coords.end(), yt.coords.begin(), yt.coords.end());
  fr.m_x_circle = xt.circle_index;
  fr.m_y_circle = xd + gn + gd + yt.circle_index;
  fr.n_x_circle = xt.circle_index;
  fr.n_y_circle = xd + yt.circle_index;

  // Anti-diagonal move pinning Xt's circle to 0 (Xt enters dualized, so its
  // circle moves with the opposite sign).
  double sx = xt.circle_sign, sy = yt.circle_sign;
  int mxc = fr.m_x_circle, myc = fr.m_y_circle, nxc = fr.n_x_circle, nyc = fr.n_y_circle;
  fr.m_gauge = [sx, sy, mxc, myc](Vec m) {
    double t = sx * m[mxc];
    m[mxc] = 0.0;
    m[myc] += sy * t;
    return m;
  };
  fr.n_gauge = [sx, sy, nxc, nyc](Vec n) {
    double t = sx * n[nxc];
    n[nxc] = 0.0;
    n[nyc] += sy * t;
    return n;
  };

  PrequantumSpace xc = xt, yc = yt;
  double fd = opts.fd_step;
  Mat restr = h.algebra_inclusion.transpose();
  fr.m_constraint = [g, xc, yc, restr, fd, xd, gn, gd, yd](const Vec& m) {
    CotangentPoint p = t_star_unpack(g, m.segment(xd, gn + gd));
    Vec phix = preq_moment(xc, m.head(xd), fd).coeffs;
    Vec phibar = coad_action(p.q, p.mu).coeffs - phix;
    Vec psibar = preq_moment(yc, m.tail(yd), fd).coeffs - restr * p.mu.coeffs;
    Vec out(phibar.size() + psibar.size());
    out << phibar, psibar;
    return out;
  };
  fr.n_constraint = [xc, yc, restr, fd, xd, yd](const Vec& n) {
    Vec phix = preq_moment(xc, n.head(xd), fd).coeffs;
    return Vec(preq_moment(yc, n.tail(yd), fd).coeffs - restr * phix);
  };

  auto n_gauge = fr.n_gauge;
  auto m_gauge = fr.m_gauge;
  fr.forward = [g, xc, n_gauge, xd, gn, gd, yd](const Vec& m) {
    GroupElement qbar{g, m.segment(xd, gn)};
    Vec n(xd + yd);
    n.head(xd) = xc.action(inverse(qbar), m.head(xd));
    n.tail(yd) = m.tail(yd);
    return n_gauge(n);
  };
  fr.backward = [g, xc, m_gauge, fd, xd, gn, gd, yd](const Vec& n) {
    Vec m(xd + gn + gd + yd);
    m.head(xd) = n.head(xd);
    m.segment(xd, gn).setZero();
    m.segment(xd + gn, gd) = preq_moment(xc, n.head(xd), fd).coeffs;
    m.tail(yd) = n.tail(yd);
    return m_gauge(m);
  };

  double box = opts.sample_box;
  double level_tol = 1e-9;
  auto m_coords = fr.m_coords;
  auto n_coords = fr.n_coords;
  fr.m_sampler = [g, xc, yc, restr, m_gauge, m_coords, box, level_tol, fd, xd, gn, gd,
                  yd](std::uint64_t seed, std::uint64_t index) -> std::optional<Vec> {
    Rng rng = Rng::indexed(seed, index);
    // Solve over (xt, qbar, yt); mu is then forced by phibar = 0.
    std::vector<Coord> rc(m_coords.begin(), m_coords.begin() + xd + gn);
    for (int i = 0; i < yd; ++i) rc.push_back(m_coords[static_cast<size_t>(xd + gn + gd + i)]);
    Vec z0 = sample_chart(rng, rc, box);
    auto resid = [&](const Vec& z) {
      GroupElement qbar{g, z.segment(xd, gn)};
      DualVector mu = coad_action(inverse(qbar), preq_moment(xc, z.head(xd), fd));
      return Vec(preq_moment(yc, z.tail(yd), fd).coeffs - restr * mu.coeffs);
    };
    NlsqOptions nlsq;
    nlsq.tol = level_tol * 1e-3;
    NlsqResult res = levenberg_marquardt(resid, z0, nlsq);
    if (res.max_resid >= level_tol) return std::nullopt;
    GroupElement qbar{g, res.x.segment(xd, gn)};
    Vec m(xd + gn + gd + yd);
    m.head(xd + gn) = res.x.head(xd + gn);
    m.segment(xd + gn, gd) = coad_action(inverse(qbar), preq_moment(xc, res.x.head(xd), fd)).coeffs;
    m.tail(yd) = res.x.tail(yd);
    return m_gauge(m);
  };
  auto n_constraint = fr.n_constraint;
  fr.n_sampler = [n_constraint, n_gauge, n_coords, box,
                  level_tol](std::uint64_t seed, std::uint64_t index) -> std::optional<Vec> {
    Rng rng = Rng::indexed(seed, index);
    Vec z0 = sample_chart(rng, n_coords, box);
    NlsqOptions nlsq;
    nlsq.tol = level_tol * 1e-3;
    NlsqResult res = levenberg_marquardt(n_constraint, z0, nlsq);
    if (res.max_resid < level_tol) return n_gauge(res.x);
    return std::nullopt;
  };

  Subgroup hc = h;
  auto g_act_m = [g, xc, m_gauge, xd, gn, gd](const GroupElement& gg, const Vec& m) {
    Vec out = m;
    out.head(xd) = xc.action(gg, m.head(xd));
    CotangentPoint p = t_star_unpack(g, m.segment(xd, gn + gd));
    p.q = mul(gg, p.q);
    out.segment(xd, gn + gd) = t_star_pack(p);
    return m_gauge(out);
  };
  auto h_act_m = [g, hc, yc, m_gauge, xd, gn, gd, yd](const GroupElement& hh, const Vec& m) {
    Vec out = m;
    CotangentPoint p = t_star_unpack(g, m.segment(xd, gn + gd));
    GroupElement ha = include_element(hc, hh);
    p.q = mul(p.q, inverse(ha));
    p.mu = coad_action(ha, p.mu);
    out.segment(xd, gn + gd) = t_star_pack(p);
    out.tail(yd) = yc.action(hh, m.tail(yd));
    return m_gauge(out);
  };
  OrbitSearchOptions orbit = opts.orbit;
  fr.m_equivalent = [g, hg, g_act_m, h_act_m, m_coords,
                     orbit](const Vec& a, const Vec& b) -> std::optional<Vec> {
    TransformationSearch search;
    const int na = g->ic_dim, nb = hg->ic_dim;
    search.nparams = na + nb;
    const int ca = component_count(g, orbit.n_max);
    const int cb = component_count(hg, orbit.n_max);
    search.n_components = ca * cb;
    search.apply = [&](int comp, const Vec& u, const Vec& x) {
      GroupElement ea = mul(component_element(g, comp % ca, orbit.n_max),
                            GroupElement{g, g->ic_embed(u.head(na))});
      GroupElement eb = mul(component_element(hg, comp / ca, orbit.n_max),
                            GroupElement{hg, hg->ic_embed(u.tail(nb))});
      return h_act_m(eb, g_act_m(ea, x));
    };
    auto w = transform_match(search, a, b, m_coords, orbit);
    if (!w) return std::nullopt;
    return w->u;
  };
  auto h_act_n = [hc, xc, yc, n_gauge, xd, yd](const GroupElement& hh, const Vec& n) {
    Vec out = n;
    out.head(xd) = xc.action(include_element(hc, hh), n.head(xd));
    out.tail(yd) = yc.action(hh, n.tail(yd));
    return n_gauge(out);
  };
  fr.n_equivalent = [hg, h_act_n, n_coords, orbit](const Vec& a, const Vec& b) {
    return orbit_equivalent(hg, ActionFn(h_act_n), n_coords, a, b, orbit);
  };
  return fr;
}

}  // namespace symind
