#include "symind/example_solvable.hpp"

namespace symind {

namespace {

constexpr double kTwoPi = 6.283185307179586;
const std::complex<double> kI{0.0, 1.0};

double real_entry(const CMat& m, int i, int j, const char* what) {
  if (std::abs(m(i, j).imag()) > 1e-8)
    throw ChartDomainError(std::string("non-real entry for ") + what);
  return m(i, j).real();
}

// Chart order everywhere: (a, Re b, Im b, e, f) with zeros dropped per subgroup.
CMat full_matrix(double a, std::complex<double> b, double e, double f) {
  CMat m = CMat::Identity(4, 4);
  m(0, 0) = std::exp(kI * a);
  m(0, 3) = b;
  m(1, 2) = e;
  m(1, 3) = f;
  m(2, 3) = a;
  return m;
}

CMat full_matrix_dir(double a, double da, std::complex<double> db, double de, double df) {
  CMat m = CMat::Zero(4, 4);
  m(0, 0) = kI * da * std::exp(kI * a);
  m(0, 3) = db;
  m(1, 2) = de;
  m(1, 3) = df;
  m(2, 3) = da;
  return m;
}

void check_shape(const CMat& m, double a) {
  if (m.rows() != 4 || m.cols() != 4) throw ChartDomainError("expected a 4x4 matrix");
  if (std::abs(m(0, 0) - std::exp(kI * a)) > 1e-8)
    throw ChartDomainError("corner entry does not match e^{ia}");
  for (int i = 1; i < 4; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(m(i, j)) > 1e-10) throw ChartDomainError("matrix is not upper triangular");
}

CMat basis_a() {
  CMat m = CMat::Zero(4, 4);
  m(0, 0) = kI;
  m(2, 3) = 1.0;
  return m;
}
CMat basis_bre() {
  CMat m = CMat::Zero(4, 4);
  m(0, 3) = 1.0;
  return m;
}
CMat basis_bim() {
  CMat m = CMat::Zero(4, 4);
  m(0, 3) = kI;
  return m;
}
CMat basis_e() {
  CMat m = CMat::Zero(4, 4);
  m(1, 2) = 1.0;
  return m;
}
CMat basis_f() {
  CMat m = CMat::Zero(4, 4);
  m(1, 3) = 1.0;
  return m;
}

// Product law of (13): (a1,b1,e1,f1)(a2,b2,e2,f2)
//   = (a1+a2, b1 + e^{ia1} b2, e1+e2, f1+f2+e1 a2).
Vec compose_full(const Vec& x, const Vec& y) {
  std::complex<double> b1{x[1], x[2]}, b2{y[1], y[2]};
  std::complex<double> b = b1 + std::exp(kI * x[0]) * b2;
  Vec out(5);
  out << x[0] + y[0], b.real(), b.imag(), x[3] + y[3], x[4] + y[4] + x[3] * y[0];
  return out;
}

Vec invert_full(const Vec& x) {
  std::complex<double> b{x[1], x[2]};
  std::complex<double> bi = -std::exp(-kI * x[0]) * b;
  Vec out(5);
  out << -x[0], bi.real(), bi.imag(), -x[3], -x[4] + x[3] * x[0];
  return out;
}

}  // namespace

GroupPtr gprime_group() {
  static GroupPtr cached = [] {
    LieGroup g;
    g.name = "Gprime";
    g.chart_dim = 5;
    g.matrix_size = 4;
    g.param_to_matrix = [](const Vec& x) { return full_matrix(x[0], {x[1], x[2]}, x[3], x[4]); };
    g.param_to_matrix_dir = [](const Vec& x, const Vec& d) {
      return full_matrix_dir(x[0], d[0], {d[1], d[2]}, d[3], d[4]);
    };
    g.matrix_to_param = [](const CMat& m) {
      Vec x(5);
      x[0] = real_entry(m, 2, 3, "a");
      x[1] = m(0, 3).real();
      x[2] = m(0, 3).imag();
      x[3] = real_entry(m, 1, 2, "e");
      x[4] = real_entry(m, 1, 3, "f");
      check_shape(m, x[0]);
      return x;
    };
    g.algebra_basis = {basis_a(), basis_bre(), basis_bim(), basis_e(), basis_f()};
    g.compose = compose_full;
    g.invert = invert_full;
    return finalize_group(std::move(g));
  }();
  return cached;
}

GroupPtr g_group() {
  static GroupPtr cached = [] {
    LieGroup g;
    g.name = "G";
    g.chart_dim = 4;
    g.matrix_size = 4;
    g.param_to_matrix = [](const Vec& x) { return full_matrix(x[0], {x[1], x[2]}, 0.0, x[3]); };
    g.param_to_matrix_dir = [](const Vec& x, const Vec& d) {
      return full_matrix_dir(x[0], d[0], {d[1], d[2]}, 0.0, d[3]);
    };
    g.matrix_to_param = [](const CMat& m) {
      if (std::abs(m(1, 2)) > 1e-9) throw ChartDomainError("not in G: e != 0");
      Vec x(4);
      x[0] = real_entry(m, 2, 3, "a");
      x[1] = m(0, 3).real();
      x[2] = m(0, 3).imag();
      x[3] = real_entry(m, 1, 3, "f");
      check_shape(m, x[0]);
      return x;
    };
    g.algebra_basis = {basis_a(), basis_bre(), basis_bim(), basis_f()};
    g.compose = [](const Vec& x, const Vec& y) {
      std::complex<double> b = std::complex<double>{x[1], x[2]} +
                               std::exp(kI * x[0]) * std::complex<double>{y[1], y[2]};
      Vec out(4);
      out << x[0] + y[0], b.real(), b.imag(), x[3] + y[3];
      return out;
    };
    g.invert = [](const Vec& x) {
      std::complex<double> bi = -std::exp(-kI * x[0]) * std::complex<double>{x[1], x[2]};
      Vec out(4);
      out << -x[0], bi.real(), bi.imag(), -x[3];
      return out;
    };
    return finalize_group(std::move(g));
  }();
  return cached;
}

GroupPtr h_group() {
  static GroupPtr cached = [] {
    LieGroup g;
    g.name = "H";
    g.chart_dim = 4;  // (a, Re b, Im b, f) with a in 2 pi Z
    g.matrix_size = 4;
    g.param_to_matrix = [](const Vec& x) { return full_matrix(x[0], {x[1], x[2]}, 0.0, x[3]); };
    g.param_to_matrix_dir = [](const Vec& x, const Vec& d) {
      return full_matrix_dir(x[0], d[0], {d[1], d[2]}, 0.0, d[3]);
    };
    g.matrix_to_param = [](const CMat& m) {
      if (std::abs(m(1, 2)) > 1e-9) throw ChartDomainError("not in H: e != 0");
      double a = real_entry(m, 2, 3, "a");
      if (std::abs(a - kTwoPi * std::round(a / kTwoPi)) > 1e-6)
        throw ChartDomainError("not in H: a not a multiple of 2 pi");
      Vec x(4);
      x[0] = a;
      x[1] = m(0, 3).real();
      x[2] = m(0, 3).imag();
      x[3] = real_entry(m, 1, 3, "f");
      check_shape(m, x[0]);
      return x;
    };
    g.algebra_basis = {basis_bre(), basis_bim(), basis_f()};
    Vec gen(4);
    gen << kTwoPi, 0, 0, 0;
    g.component_generators = {gen};
    g.ic_dim = 3;
    g.ic_embed = [](const Vec& u) {
      Vec x(4);
      x << 0, u[0], u[1], u[2];
      return x;
    };
    g.compose = [](const Vec& x, const Vec& y) {
      std::complex<double> b = std::complex<double>{x[1], x[2]} +
                               std::exp(kI * x[0]) * std::complex<double>{y[1], y[2]};
      Vec out(4);
      out << x[0] + y[0], b.real(), b.imag(), x[3] + y[3];
      return out;
    };
    g.invert = [](const Vec& x) {
      std::complex<double> bi = -std::exp(-kI * x[0]) * std::complex<double>{x[1], x[2]};
      Vec out(4);
      out << -x[0], bi.real(), bi.imag(), -x[3];
      return out;
    };
    return finalize_group(std::move(g));
  }();
  return cached;
}

GroupPtr hprime_group() {
  static GroupPtr cached = [] {
    LieGroup g;
    g.name = "Hprime";
    g.chart_dim = 4;  // (Re b, Im b, e, f)
    g.matrix_size = 4;
    g.param_to_matrix = [](const Vec& x) { return full_matrix(0.0, {x[0], x[1]}, x[2], x[3]); };
    g.param_to_matrix_dir = [](const Vec&, const Vec& d) {
      return full_matrix_dir(0.0, 0.0, {d[0], d[1]}, d[2], d[3]);
    };
    g.matrix_to_param = [](const CMat& m) {
      double a = real_entry(m, 2, 3, "a");
      if (std::abs(a) > 1e-9) throw ChartDomainError("not in H': a != 0");
      Vec x(4);
      x[0] = m(0, 3).real();
      x[1] = m(0, 3).imag();
      x[2] = real_entry(m, 1, 2, "e");
      x[3] = real_entry(m, 1, 3, "f");
      check_shape(m, 0.0);
      return x;
    };
    g.algebra_basis = {basis_bre(), basis_bim(), basis_e(), basis_f()};
    g.compose = [](const Vec& x, const Vec& y) {
      Vec out(4);
      out << x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3];
      return out;
    };
    g.invert = [](const Vec& x) { return Vec(-x); };
    return finalize_group(std::move(g));
  }();
  return cached;
}

Subgroup h_in_g() {
  Subgroup s;
  s.sub = h_group();
  s.amb = g_group();
  s.inclusion = [](const Vec& x) { return x; };
  Mat inc = Mat::Zero(4, 3);
  inc(1, 0) = inc(2, 1) = inc(3, 2) = 1.0;
  s.algebra_inclusion = inc;
  return s;
}

Subgroup g_in_gprime() {
  Subgroup s;
  s.sub = g_group();
  s.amb = gprime_group();
  s.inclusion = [](const Vec& x) {
    Vec out(5);
    out << x[0], x[1], x[2], 0.0, x[3];
    return out;
  };
  Mat inc = Mat::Zero(5, 4);
  inc(0, 0) = inc(1, 1) = inc(2, 2) = inc(4, 3) = 1.0;
  s.algebra_inclusion = inc;
  return s;
}

Subgroup h_in_gprime() { return compose_subgroups(h_in_g(), g_in_gprime()); }

Subgroup hprime_in_gprime() {
  Subgroup s;
  s.sub = hprime_group();
  s.amb = gprime_group();
  s.inclusion = [](const Vec& x) {
    Vec out(5);
    out << 0.0, x[0], x[1], x[2], x[3];
    return out;
  };
  Mat inc = Mat::Zero(5, 4);
  inc(1, 0) = inc(2, 1) = inc(3, 2) = inc(4, 3) = 1.0;
  s.algebra_inclusion = inc;
  return s;
}

Vec dual_gprime_coeffs(const DualGPrime& m) {
  Vec c(5);
  c << m.p, m.q.real(), m.q.imag(), -m.s, -m.t;
  return c;
}

DualGPrime dual_gprime_from_coeffs(const Vec& c) {
  return {c[0], {c[1], c[2]}, -c[3], -c[4]};
}

DualGPrime coadjoint_gprime(const GroupElement& gp, const DualGPrime& m) {
  if (std::abs(m.t - 1.0) > 1e-12)
    throw std::invalid_argument("coadjoint_gprime: requires t = 1");
  const Vec& x = gp.params;
  double a = x[0], e = x[3], f = x[4];
  (void)f;
  std::complex<double> b{x[1], x[2]};
  DualGPrime out;
  out.p = m.p + e + (std::conj(kI * b) * m.q * std::exp(kI * a)).real();
  out.q = m.q * std::exp(kI * a);
  out.s = m.s + a;
  out.t = 1.0;
  return out;
}

DualVector c_check() {
  Vec c(5);
  c << 0, 1, 0, 0, -1;
  return {gprime_group(), c};
}
DualVector c_check_h() {
  Vec c(3);
  c << 1, 0, -1;
  return {h_group(), c};
}
DualVector c_check_hprime() {
  Vec c(4);
  c << 1, 0, 0, -1;
  return {hprime_group(), c};
}

HamiltonianSpace orbit_X() {
  HamiltonianSpace s;
  s.group = g_group();
  s.chart_dim = 2;
  s.coords = {Coord::Real, Coord::Angle};
  s.action = [](const GroupElement& g, const Vec& x) {
    double a = g.params[0];
    std::complex<double> b{g.params[1], g.params[2]};
    std::complex<double> q = std::exp(kI * x[1]);
    Vec out(2);
    out << x[0] + (std::conj(kI * b) * q * std::exp(kI * a)).real(), x[1] + a;
    return out;
  };
  s.omega = {2, [](const Vec&, const Vec& v, const Vec& w) { return v[0] * w[1] - v[1] * w[0]; }};
  GroupPtr grp = s.group;
  s.moment = [grp](const Vec& x) {
    Vec c(4);
    c << x[0], std::cos(x[1]), std::sin(x[1]), -1.0;
    return DualVector{grp, c};
  };
  return s;
}

HamiltonianSpace orbit_Xprime() {
  HamiltonianSpace s;
  s.group = gprime_group();
  s.chart_dim = 2;
  s.coords = {Coord::Real, Coord::Real};
  s.action = [](const GroupElement& g, const Vec& x) {
    double a = g.params[0], e = g.params[3];
    std::complex<double> b{g.params[1], g.params[2]};
    std::complex<double> q = std::exp(kI * x[1]);
    Vec out(2);
    out << x[0] + e + (std::conj(kI * b) * q * std::exp(kI * a)).real(), x[1] + a;
    return out;
  };
  s.omega = {2, [](const Vec&, const Vec& v, const Vec& w) { return v[0] * w[1] - v[1] * w[0]; }};
  GroupPtr grp = s.group;
  s.moment = [grp](const Vec& x) {
    Vec c(5);
    c << x[0], std::cos(x[1]), std::sin(x[1]), -x[1], -1.0;
    return DualVector{grp, c};
  };
  return s;
}

Vec covering_map(const Vec& xprime) {
  Vec out(2);
  out << xprime[0], xprime[1];  // the X chart reads coordinate 1 as an angle
  return out;
}

OneForm orbit_X_primitive() {
  return {2, [](const Vec& x, const Vec& v) { return x[0] * v[1]; }};
}
OneForm orbit_Xprime_primitive() {
  return {2, [](const Vec& x, const Vec& v) { return x[0] * v[1]; }};
}

PrequantumSpace preq_Xprime() {
  PrequantumSpace s;
  s.group = gprime_group();
  s.chart_dim = 3;
  s.coords = {Coord::Real, Coord::Real, Coord::Angle};
  s.circle_index = 2;
  s.circle_sign = 1.0;
  s.varpi = {3, [](const Vec& x, const Vec& v) { return x[0] * v[1] + v[2]; }};
  s.action = [](const GroupElement& g, const Vec& x) {
    double a = g.params[0], e = g.params[3], f = g.params[4];
    std::complex<double> b{g.params[1], g.params[2]};
    std::complex<double> w = std::exp(kI * (x[1] + a));
    Vec out(3);
    out << x[0] + e + (std::conj(kI * b) * w).real(),  //
        x[1] + a,                                      //
        x[2] + (std::conj(b) * w).real() - x[1] * e - f;
    return out;
  };
  GroupPtr grp = s.group;
  s.moment = [grp](const Vec& x) {
    Vec c(5);
    c << x[0], std::cos(x[1]), std::sin(x[1]), -x[1], -1.0;
    return DualVector{grp, c};
  };
  return s;
}

PrequantumSpace preq_Xlambda(double lambda) {
  PrequantumSpace s;
  s.group = g_group();
  s.chart_dim = 3;
  s.coords = {Coord::Real, Coord::Angle, Coord::Angle};
  s.circle_index = 2;
  s.circle_sign = 1.0;
  s.varpi = {3, [lambda](const Vec& x, const Vec& v) { return (x[0] + lambda) * v[1] + v[2]; }};
  s.action = [lambda](const GroupElement& g, const Vec& x) {
    double a = g.params[0], f = g.params[3];
    std::complex<double> b{g.params[1], g.params[2]};
    std::complex<double> w = std::exp(kI * (x[1] + a));  // q e^{ia}
    Vec out(3);
    out << x[0] + (std::conj(kI * b) * w).real(),  //
        x[1] + a,                                  //
        x[2] + (std::conj(b) * w).real() - lambda * a - f;
    return out;
  };
  GroupPtr grp = s.group;
  s.moment = [grp](const Vec& x) {
    Vec c(4);
    c << x[0], std::cos(x[1]), std::sin(x[1]), -1.0;
    return DualVector{grp, c};
  };
  return s;
}

std::complex<double> char_lambda(double lambda, const GroupElement& h) {
  if (h.group != h_group()) throw std::invalid_argument("char_lambda: expects an element of H");
  const Vec& x = h.params;
  return std::polar(1.0, -lambda * x[0] + x[1] - x[3]);
}

std::complex<double> char_prime(const GroupElement& hp) {
  if (hp.group != hprime_group())
    throw std::invalid_argument("char_prime: expects an element of H'");
  const Vec& x = hp.params;
  return std::polar(1.0, x[0] - x[3]);
}

PrequantumSpace t_lambda(double lambda) {
  Vec mu0(3);
  mu0 << 1, 0, -1;
  return unit_circle_space(
      h_group(),
      [lambda](const GroupElement& h) {
        return -lambda * h.params[0] + h.params[1] - h.params[3];
      },
      mu0);
}

PrequantumSpace t_prime() {
  Vec mu0(4);
  mu0 << 1, 0, 0, -1;
  return unit_circle_space(
      hprime_group(), [](const GroupElement& hp) { return hp.params[0] - hp.params[3]; }, mu0);
}

std::optional<std::function<Vec(const Vec&)>> gauge_equivalence(double lambda1, double lambda2) {
  double diff = lambda1 - lambda2;
  double n = std::round(diff);
  if (std::abs(diff - n) > 1e-9) return std::nullopt;
  return [n](const Vec& x) {
    Vec out = x;
    out[2] += n * x[1];
    return out;
  };
}

namespace {

std::vector<Vec> draw_samples(
    const std::function<std::optional<Vec>(std::uint64_t, std::uint64_t)>& sampler,
    std::uint64_t seed, int n) {
  std::vector<Vec> out;
  for (std::uint64_t idx = 0; static_cast<int>(out.size()) < n && idx < 20ULL * n + 100; ++idx)
    if (auto s = sampler(seed, idx)) out.push_back(*s);
  return out;
}

int preq_class_count(const PrequantumQuotient& q, std::uint64_t seed, int n,
                     const std::function<Vec(const Vec&)>& canon = nullptr) {
  std::vector<Vec> samples = draw_samples(q.sampler, seed, n);
  if (canon)
    for (Vec& s : samples) s = canon(s);
  GroupPtr grp = q.total.group;
  auto eq = [&](const Vec& a, const Vec& b) -> std::optional<GroupElement> {
    if (q.same_component(a, b)) return identity(grp);
    return std::nullopt;
  };
  return partition_samples(samples, eq).n_classes;
}

}  // namespace

FrobeniusExampleResult run_frobenius_example(std::uint64_t seed, int samples,
                                             const OrbitSearchOptions& orbit) {
  FrobeniusExampleResult out;
  HomOptions ho;
  ho.orbit = orbit;

  HamiltonianSpace x = orbit_X();
  HamiltonianSpace res_g = restrict_space(orbit_Xprime(), g_in_gprime());
  QuotientSet g_side = hom_set(x, res_g, ho);
  // Choose in-orbit representatives with s = 0 before matching; the witness
  // search only has to cover the remaining (small) in-class displacements.
  HamiltonianSpace prod = product_space(dual_space(x), res_g);
  std::vector<Vec> reps;
  for (const Vec& v : draw_samples(g_side.sampler, seed, samples)) {
    Vec shift = Vec::Zero(4);
    shift[0] = -v[3];
    reps.push_back(prod.action(GroupElement{g_group(), shift}, v));
  }
  ClassPartition part = partition_samples(reps, g_side.equivalent);
  out.g_side_classes = part.n_classes;
  if (!part.samples.empty()) out.g_side_dim = quotient_dim_estimate(g_side, part.samples.front());

  HamiltonianSpace pt = point_space(h_group(), c_check_h());
  HamiltonianSpace res_h = restrict_space(orbit_Xprime(), h_in_gprime());
  QuotientSet h_side = hom_set(pt, res_h, ho);
  out.h_side_classes = partition_samples(draw_samples(h_side.sampler, seed + 1, samples),
                                         h_side.equivalent)
                           .n_classes;
  return out;
}

PreqFrobeniusExampleResult run_prequantum_frobenius_example(double lambda, std::uint64_t seed,
                                                            int samples,
                                                            const OrbitSearchOptions& orbit) {
  PreqFrobeniusExampleResult out;
  HomOptions ho;
  ho.orbit = orbit;

  PrequantumQuotient g_side = preq_hom(preq_Xlambda(lambda),
                                       restrict_preq(preq_Xprime(), g_in_gprime()), ho);
  // Same representative normalization as the symplectic case: rotate s to 0.
  auto canon_g = [&g_side](const Vec& v) {
    Vec shift = Vec::Zero(4);
    shift[0] = -v[3];
    return g_side.total.action(GroupElement{g_group(), shift}, v);
  };
  out.g_side_classes = preq_class_count(g_side, seed, samples, canon_g);
  std::vector<Vec> pts = draw_samples(g_side.sampler, seed, samples);
  if (!pts.empty()) {
    // local dimension at every sampled point; disagreement is reported as -1
    out.g_side_dim = g_side.local_dim(pts.front());
    for (const Vec& p : pts)
      if (g_side.local_dim(p) != out.g_side_dim) {
        out.g_side_dim = -1;
        break;
      }
    // The surviving circle generates the residual direction: its flow stays on
    // the level set and is transverse to the G-orbits, so one period traces
    // the Hom circle. Any level drift or lost transversality along the way is
    // folded into the reported closure defect.
    const int ci = g_side.total.circle_index;
    auto field = [&](const Vec& p) {
      Vec dir = Vec::Zero(p.size());
      dir[ci] = g_side.total.circle_sign;
      return dir;
    };
    Vec x = pts.front();
    const int steps = 256;
    const double h = kTwoPi / steps;
    double defect = 0;
    for (int i = 0; i < steps; ++i) {
      Vec k1 = field(x);
      Vec k2 = field(x + h / 2 * k1);
      Vec k3 = field(x + h / 2 * k2);
      Vec k4 = field(x + h * k3);
      x += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
      if (i % 32 == 0) {
        defect = std::max(defect, g_side.constraint(x).cwiseAbs().maxCoeff());
        Mat orb = colspace(g_side.orbit_span(x));
        Vec r = field(x);
        if (orb.cols() > 0) r -= orb * (orb.transpose() * r);
        if (r.norm() < 1e-3) defect = std::max(defect, 1.0);  // fell into an orbit
      }
    }
    out.curve_closure = std::max(defect, chart_distance(g_side.total.coords, x, pts.front()));
  }

  PrequantumQuotient h_side =
      preq_hom(t_lambda(lambda), restrict_preq(preq_Xprime(), h_in_gprime()), ho);
  out.h_side_classes = preq_class_count(h_side, seed + 1, samples);
  return out;
}

}  // namespace symind
