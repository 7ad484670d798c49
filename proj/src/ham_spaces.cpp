#include "symind/ham_spaces.hpp"

#include <cmath>
#include <numeric>

namespace symind {

double wrap_angle(double x) {
  double two_pi = 6.283185307179586476925287;
  double y = std::fmod(x, two_pi);
  if (y <= -3.141592653589793) y += two_pi;
  if (y > 3.141592653589793) y -= two_pi;
  return y;
}

Vec chart_diff(const std::vector<Coord>& coords, const Vec& x, const Vec& y) {
  Vec d = x - y;
  for (size_t i = 0; i < coords.size(); ++i)
    if (coords[i] == Coord::Angle) d[static_cast<int>(i)] = wrap_angle(d[static_cast<int>(i)]);
  return d;
}

double chart_distance(const std::vector<Coord>& coords, const Vec& x, const Vec& y) {
  Vec d = chart_diff(coords, x, y);
  return d.size() ? d.cwiseAbs().maxCoeff() : 0.0;
}

Vec moment_coeffs(const HamiltonianSpace& x_space, const Vec& x) {
  return x_space.moment(x).coeffs;
}

Vec fundamental_field(const ActionFn& action, const std::vector<Coord>& coords,
                      const AlgebraElement& xi, const Vec& x, double h) {
  AlgebraElement xp{xi.group, h * xi.coeffs};
  AlgebraElement xm{xi.group, -h * xi.coeffs};
  Vec fp = action(group_exp(xp), x);
  Vec fm = action(group_exp(xm), x);
  return chart_diff(coords, fp, fm) / (2 * h);
}

Vec fundamental_field(const HamiltonianSpace& x_space, const AlgebraElement& xi, const Vec& x,
                      double h) {
  return fundamental_field(x_space.action, x_space.coords, xi, x, h);
}

Mat orbit_directions(const HamiltonianSpace& x_space, const Vec& x, double h) {
  const int d = x_space.group->algebra_dim();
  Mat f(x_space.chart_dim, d);
  for (int i = 0; i < d; ++i) {
    AlgebraElement xi{x_space.group, Vec::Unit(d, i)};
    f.col(i) = fundamental_field(x_space, xi, x, h);
  }
  return f;
}

bool check_cardinal_a(const HamiltonianSpace& x_space, const Vec& x, double tol, double fd_step) {
  auto f = [&](const Vec& y) { return moment_coeffs(x_space, y); };
  Mat jac = jacobian(f, x, fd_step);
  Subspace ker{x_space.chart_dim, nullspace(jac)};
  Subspace orbit = make_subspace(x_space.chart_dim, orbit_directions(x_space, x, fd_step));
  Subspace orth = symplectic_orthogonal(x_space.omega, x, orbit);
  return subspace_equal(ker, orth, tol);
}

bool check_cardinal_b(const HamiltonianSpace& x_space, const Vec& x, double tol, double fd_step) {
  auto f = [&](const Vec& y) { return moment_coeffs(x_space, y); };
  Mat jac = jacobian(f, x, fd_step);
  const int dual_dim = static_cast<int>(jac.rows());
  Subspace image{dual_dim, colspace(jac)};
  Mat fund = orbit_directions(x_space, x, fd_step);
  Subspace stabilizer{x_space.group->algebra_dim(), nullspace(fund)};
  Subspace ann = annihilator(stabilizer);
  return subspace_equal(image, ann, tol);
}

HamiltonianSpace dual_space(const HamiltonianSpace& x_space) {
  HamiltonianSpace d = x_space;
  TwoForm omega = x_space.omega;
  d.omega = {omega.dim, [omega](const Vec& x, const Vec& v, const Vec& w) {
               return -omega.eval(x, v, w);
             }};
  auto moment = x_space.moment;
  d.moment = [moment](const Vec& x) {
    DualVector m = moment(x);
    m.coeffs = -m.coeffs;
    return m;
  };
  return d;
}

HamiltonianSpace product_space(const HamiltonianSpace& x1, const HamiltonianSpace& x2) {
  if (x1.group != x2.group)
    throw std::invalid_argument("product_space: diagonal product needs a common group");
  HamiltonianSpace p;
  p.group = x1.group;
  p.chart_dim = x1.chart_dim + x2.chart_dim;
  p.coords = x1.coords;
  p.coords.insert(p.coords.end(), x2.coords.begin(), x2.coords.end());
  const int n1 = x1.chart_dim;
  const int n2 = x2.chart_dim;
  auto a1 = x1.action;
  auto a2 = x2.action;
  p.action = [a1, a2, n1, n2](const GroupElement& g, const Vec& x) {
    Vec y(n1 + n2);
    y.head(n1) = a1(g, x.head(n1));
    y.tail(n2) = a2(g, x.tail(n2));
    return y;
  };
  TwoForm w1 = x1.omega, w2 = x2.omega;
  p.omega = {p.chart_dim, [w1, w2, n1, n2](const Vec& x, const Vec& v, const Vec& w) {
               double s = 0;
               if (n1) s += w1.eval(x.head(n1), v.head(n1), w.head(n1));
               if (n2) s += w2.eval(x.tail(n2), v.tail(n2), w.tail(n2));
               return s;
             }};
  auto m1 = x1.moment, m2 = x2.moment;
  p.moment = [m1, m2, n1, n2](const Vec& x) {
    DualVector a = m1(x.head(n1));
    DualVector b = m2(x.tail(n2));
    return DualVector{a.group, a.coeffs + b.coeffs};
  };
  return p;
}

HamiltonianSpace restrict_space(const HamiltonianSpace& x_space, const Subgroup& k) {
  if (x_space.group != k.amb)
    throw std::invalid_argument("restrict_space: subgroup of a different group");
  HamiltonianSpace r = x_space;
  r.group = k.sub;
  auto action = x_space.action;
  Subgroup kc = k;
  r.action = [action, kc](const GroupElement& g, const Vec& x) {
    return action(include_element(kc, g), x);
  };
  auto moment = x_space.moment;
  r.moment = [moment, kc](const Vec& x) { return restrict_dual(moment(x), kc); };
  return r;
}

HamiltonianSpace point_space(const GroupPtr& group, const DualVector& mu0) {
  HamiltonianSpace p;
  p.group = group;
  p.chart_dim = 0;
  p.action = [](const GroupElement&, const Vec& x) { return x; };
  p.omega = {0, [](const Vec&, const Vec&, const Vec&) { return 0.0; }};
  DualVector m = mu0;
  p.moment = [m](const Vec&) { return m; };
  return p;
}

std::optional<TransformWitness> transform_match(const TransformationSearch& search, const Vec& x1,
                                                const Vec& x2, const std::vector<Coord>& coords,
                                                const OrbitSearchOptions& opts) {
  NlsqOptions nlsq;
  nlsq.max_iter = opts.max_iter;
  nlsq.tol = opts.tol * 0.1;
  auto masked_diff = [&](const Vec& a, const Vec& b) {
    Vec d = chart_diff(coords, a, b);
    for (int idx : opts.ignore_coords) d[idx] = 0.0;
    return d;
  };
  Rng rng(opts.seed);
  for (int comp = 0; comp < search.n_components; ++comp) {
    auto residual = [&](const Vec& u) { return masked_diff(search.apply(comp, u, x1), x2); };
    for (int start = 0; start < opts.multistarts; ++start) {
      Vec u0 = start == 0 ? Vec(Vec::Zero(search.nparams))
                          : rng.uniform_vec(search.nparams, -opts.box, opts.box);
      NlsqResult res = levenberg_marquardt(residual, u0, nlsq);
      if (res.max_resid < opts.tol) return TransformWitness{comp, res.x};
    }
  }
  return std::nullopt;
}

int component_count(const GroupPtr& group, int n_max) {
  int per = 2 * n_max + 1;
  int total = 1;
  for (size_t i = 0; i < group->component_generators.size(); ++i) total *= per;
  return total;
}

namespace {

// Index 0,1,2,3,... -> power 0,+1,-1,+2,...
int index_to_power(int idx) { return (idx % 2 == 1) ? (idx + 1) / 2 : -idx / 2; }

GroupElement generator_power(const GroupPtr& group, const Vec& gen, int k) {
  GroupElement g = identity(group);
  GroupElement step{group, gen};
  if (k < 0) {
    step = inverse(step);
    k = -k;
  }
  for (int i = 0; i < k; ++i) g = mul(g, step);
  return g;
}

}  // namespace

GroupElement component_element(const GroupPtr& group, int comp, int n_max) {
  int per = 2 * n_max + 1;
  GroupElement g = identity(group);
  for (const Vec& gen : group->component_generators) {
    int k = index_to_power(comp % per);
    comp /= per;
    g = mul(g, generator_power(group, gen, k));
  }
  return g;
}

std::optional<GroupElement> orbit_equivalent(const GroupPtr& group, const ActionFn& action,
                                             const std::vector<Coord>& coords, const Vec& x1,
                                             const Vec& x2, const OrbitSearchOptions& opts) {
  TransformationSearch search;
  search.nparams = group->ic_dim;
  search.n_components = component_count(group, opts.n_max);
  search.apply = [&](int comp, const Vec& u, const Vec& x) {
    GroupElement g = mul(component_element(group, comp, opts.n_max),
                         GroupElement{group, group->ic_embed(u)});
    return action(g, x);
  };
  auto w = transform_match(search, x1, x2, coords, opts);
  if (!w) return std::nullopt;
  return mul(component_element(group, w->comp, opts.n_max),
             GroupElement{group, group->ic_embed(w->u)});
}

QuotientSet hom_set(const HamiltonianSpace& x1, const HamiltonianSpace& x2,
                    const HomOptions& opts) {
  if (x1.group != x2.group) throw std::invalid_argument("hom_set: spaces over different groups");
  auto prod = std::make_shared<HamiltonianSpace>(product_space(dual_space(x1), x2));
  QuotientSet q;
  q.group = prod->group;
  q.chart_dim = prod->chart_dim;
  q.coords = prod->coords;
  q.constraint = [prod](const Vec& x) { return moment_coeffs(*prod, x); };
  double box = opts.sample_box;
  double level_tol = opts.level_tol;
  auto coords = q.coords;
  auto constraint = q.constraint;
  q.sampler = [constraint, coords, box,
               level_tol](std::uint64_t seed, std::uint64_t index) -> std::optional<Vec> {
    Rng rng = Rng::indexed(seed, index);
    const int n = static_cast<int>(coords.size());
    Vec x0(n);
    for (int i = 0; i < n; ++i)
      x0[i] = coords[i] == Coord::Angle ? rng.uniform(0, 6.283185307179586)
                                        : rng.uniform(-box, box);
    NlsqOptions nlsq;
    nlsq.tol = level_tol * 1e-3;
    NlsqResult res = levenberg_marquardt(constraint, x0, nlsq);
    if (res.max_resid < level_tol) return res.x;
    return std::nullopt;
  };
  OrbitSearchOptions orbit = opts.orbit;
  q.equivalent = [prod, orbit](const Vec& a, const Vec& b) {
    return orbit_equivalent(prod->group, prod->action, prod->coords, a, b, orbit);
  };
  double fd = opts.fd_step;
  q.orbit_span = [prod, fd](const Vec& x) { return orbit_directions(*prod, x, fd); };
  return q;
}

ClassPartition partition_samples(
    const std::vector<Vec>& samples,
    const std::function<std::optional<GroupElement>(const Vec&, const Vec&)>& equivalent,
    const std::function<Vec(const Vec&)>& invariant, double gap) {
  ClassPartition part;
  part.samples = samples;
  part.labels.assign(samples.size(), -1);
  std::vector<Vec> inv;
  if (invariant)
    for (const Vec& s : samples) inv.push_back(invariant(s));
  for (size_t i = 0; i < samples.size(); ++i) {
    for (size_t c = 0; c < part.representatives.size(); ++c) {
      size_t r = static_cast<size_t>(part.representatives[c]);
      if (invariant && (inv[i] - inv[r]).cwiseAbs().maxCoeff() > gap) continue;
      if (equivalent(samples[i], samples[r])) {
        part.labels[i] = static_cast<int>(c);
        break;
      }
    }
    if (part.labels[i] < 0) {
      part.labels[i] = static_cast<int>(part.representatives.size());
      part.representatives.push_back(static_cast<int>(i));
    }
  }
  // One merge pass over representatives catches classes split by a missed
  // early match.
  std::vector<int> remap(part.representatives.size());
  std::iota(remap.begin(), remap.end(), 0);
  for (size_t a = 0; a < part.representatives.size(); ++a)
    for (size_t b = 0; b < a; ++b) {
      if (remap[a] != static_cast<int>(a) || remap[b] != static_cast<int>(b)) continue;
      size_t ra = static_cast<size_t>(part.representatives[a]);
      size_t rb = static_cast<size_t>(part.representatives[b]);
      if (invariant && (inv[ra] - inv[rb]).cwiseAbs().maxCoeff() > gap) continue;
      if (equivalent(part.samples[ra], part.samples[rb])) remap[a] = static_cast<int>(b);
    }
  std::vector<int> final_id(part.representatives.size(), -1);
  std::vector<int> kept;
  for (size_t c = 0; c < remap.size(); ++c) {
    int root = remap[c];
    if (final_id[root] < 0) {
      final_id[root] = static_cast<int>(kept.size());
      kept.push_back(part.representatives[root]);
    }
    final_id[c] = final_id[root];
  }
  for (auto& l : part.labels) l = final_id[l];
  part.representatives = kept;
  part.n_classes = static_cast<int>(kept.size());
  return part;
}

ClassPartition count_classes(const QuotientSet& q, int n_samples, std::uint64_t seed,
                             const std::function<Vec(const Vec&)>& invariant, double gap) {
  std::vector<Vec> samples;
  std::uint64_t index = 0;
  std::uint64_t attempts = 0;
  const std::uint64_t max_attempts = static_cast<std::uint64_t>(n_samples) * 20 + 100;
  while (samples.size() < static_cast<size_t>(n_samples) && attempts < max_attempts) {
    auto s = q.sampler(seed, index++);
    ++attempts;
    if (s) samples.push_back(*s);
  }
  return partition_samples(samples, q.equivalent, invariant, gap);
}

int quotient_dim_estimate(const QuotientSet& q, const Vec& x, double fd_step, double cutoff) {
  Mat jac = jacobian(q.constraint, x, fd_step);
  Mat tang = nullspace(jac);
  Mat orbit = q.orbit_span ? q.orbit_span(x) : Mat(q.chart_dim, 0);
  if (orbit.cols() == 0) return static_cast<int>(tang.cols());
  Mat on = colspace(orbit);
  Mat proj = tang - on * (on.transpose() * tang);
  Eigen::JacobiSVD<Mat> svd(proj);
  int dim = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > cutoff) ++dim;
  return dim;
}

}  // namespace symind
