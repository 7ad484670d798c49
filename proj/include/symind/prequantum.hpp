#ifndef SYMIND_PREQUANTUM_HPP
#define SYMIND_PREQUANTUM_HPP

#include <complex>

#include "symind/induction.hpp"

namespace symind {

/// Contact G-space with an explicit circle coordinate in the chart. The unit
/// complex z = e^{i t} acts by adding circle_sign * t to that coordinate;
/// dualizing flips the sign.
struct PrequantumSpace {
  GroupPtr group;
  int chart_dim = 0;
  std::vector<Coord> coords;
  int circle_index = -1;
  double circle_sign = 1.0;
  OneForm varpi;
  ActionFn action;
  // Closed-form momentum <Phi, .> when available; null means "use FD".
  std::function<DualVector(const Vec&)> moment;
};

Vec circle_act(const PrequantumSpace& s, double t, const Vec& x);

/// The unique i with d varpi(i, .) = 0 and varpi(i) = 1. Throws
/// DegeneracyError when Ker(d varpi) is not 1-dimensional or not transverse.
Vec reeb(const PrequantumSpace& s, const Vec& x, double fd_step = kDefaultFdStep);

/// <Phi(x), Z> = varpi(Z(x)) via the FD fundamental field.
double preq_moment_pair(const PrequantumSpace& s, const AlgebraElement& z, const Vec& x,
                        double fd_step = kDefaultFdStep);
/// Assembled momentum; always computed from varpi (ignores s.moment).
DualVector preq_moment_fd(const PrequantumSpace& s, const Vec& x,
                          double fd_step = kDefaultFdStep);
/// Closed form when present, FD otherwise.
DualVector preq_moment(const PrequantumSpace& s, const Vec& x, double fd_step = kDefaultFdStep);

/// |varpi(g.x; Dg v) - varpi(x; v)|.
double pullback_residual(const OneForm& form, const std::function<Vec(const Vec&)>& map,
                         const Vec& x, const Vec& v, double fd_step = kDefaultFdStep);

PrequantumSpace preq_dual(const PrequantumSpace& s);
PrequantumSpace restrict_preq(const PrequantumSpace& s, const Subgroup& k);

/// The unit circle with group acting by the character e^{i phase(g)}; mu0 is
/// the (constant) momentum in dual coordinates.
PrequantumSpace unit_circle_space(const GroupPtr& g,
                                  std::function<double(const GroupElement&)> phase,
                                  const Vec& mu0);

/// (s1 x s2)/anti-diagonal, gauge-fixed by zeroing s1's circle coordinate.
/// Chart: [s1 chart minus its circle | s2 chart]. Throws std::invalid_argument
/// when a factor has no explicit circle coordinate.
PrequantumSpace box_product(const PrequantumSpace& s1, const PrequantumSpace& s2);

/// Prequantum reduction held intensionally; `equivalent` is the plain G-orbit
/// match on the level set, `same_component` additionally ignores the circle
/// coordinate (components of the reduced set, not its points).
struct PrequantumQuotient {
  PrequantumSpace total;
  std::function<Vec(const Vec&)> constraint;  // momentum coordinates
  std::function<std::optional<Vec>(std::uint64_t, std::uint64_t)> sampler;
  std::function<std::optional<GroupElement>(const Vec&, const Vec&)> equivalent;
  std::function<bool(const Vec&, const Vec&)> same_component;
  std::function<Mat(const Vec&)> orbit_span;
  /// Rank of the orbit directions equals dim G; failure means a stabilizer.
  bool action_free_at(const Vec& x, double fd_step = kDefaultFdStep) const;
  /// Level-set tangents minus G-orbit directions.
  int local_dim(const Vec& x, double fd_step = kDefaultFdStep, double cutoff = 1e-6) const;
};

PrequantumQuotient preq_reduce(const PrequantumSpace& s, const HomOptions& opts = {});

/// Hom_G(s1, s2) = (s1^- box s2) // G.
PrequantumQuotient preq_hom(const PrequantumSpace& s1, const PrequantumSpace& s2,
                            const HomOptions& opts = {});

/// Ind_H^G Ytilde on the chart [G params | mu | Ytilde chart], as the level set
/// psi^{-1}(0) with varpi = <mu, q^{-1}dq> + varpi_Y, modulo H.
struct PreqInducedSpace {
  GroupPtr big;
  Subgroup h;
  PrequantumSpace ytilde;
  int chart_dim = 0;
  std::vector<Coord> coords;
  int circle_index = -1;
  double circle_sign = 1.0;
  OneForm varpi;
  std::function<Vec(const Vec&)> psi;
  ActionFn g_action;
  ActionFn h_action;
  std::function<DualVector(const Vec&)> moment;
  std::function<std::optional<Vec>(std::uint64_t, std::uint64_t)> sampler;
  std::function<std::optional<GroupElement>(const Vec&, const Vec&)> equivalent;
};

PreqInducedSpace preq_induce(const GroupPtr& g, const Subgroup& h, const PrequantumSpace& ytilde,
                             const InduceOptions& opts = {});

/// Parallel transport around a base loop: integrates the horizontality
/// condition varpi(lift') = 0 with classical RK4 and returns the end/start
/// phase as a unit complex number. `base_loop` maps [0,1] to chart points; the
/// circle coordinate of its output is ignored.
std::complex<double> holonomy(const PrequantumSpace& s, const std::function<Vec(double)>& base_loop,
                              int n_steps = 4096);

/// Holonomy of a loop in the quotient: the path closes up to an H-witness,
/// whose circle shift is folded into the returned phase.
std::complex<double> quotient_holonomy(const PreqInducedSpace& ind,
                                       const std::function<Vec(double)>& path,
                                       const OrbitSearchOptions& orbit, int n_steps = 4096);

/// Frobenius data: Hom_G(Xt, Ind_H^G Yt) vs Hom_H(Res Xt, Yt), realized on the
/// flattened level sets with the anti-diagonal circle gauge-fixed (Xt's circle
/// coordinate pinned to 0, compensation pushed onto Yt's circle).
/// M chart: [xt | q params | mu | yt]; N chart: [xt | yt].
struct PreqFrobeniusSetup {
  PrequantumSpace xt;  // over G
  Subgroup h;
  PrequantumSpace yt;  // over H
  int m_dim = 0;
  std::vector<Coord> m_coords;
  int n_dim = 0;
  std::vector<Coord> n_coords;
  int m_x_circle = -1, m_y_circle = -1;  // chart positions of the two circles
  int n_x_circle = -1, n_y_circle = -1;
  std::function<Vec(const Vec&)> m_gauge;  // anti-diagonal regauge to x-circle = 0
  std::function<Vec(const Vec&)> n_gauge;
  std::function<Vec(const Vec&)> m_constraint;  // (phibar, psibar)
  std::function<Vec(const Vec&)> n_constraint;
  std::function<Vec(const Vec&)> forward;   // (xt, p, yt) -> (q^{-1}(xt), yt), regauged
  std::function<Vec(const Vec&)> backward;  // (xt, yt) -> (xt, e, Phi(xt), yt)
  std::function<std::optional<Vec>(std::uint64_t, std::uint64_t)> m_sampler;
  std::function<std::optional<Vec>(std::uint64_t, std::uint64_t)> n_sampler;
  std::function<std::optional<Vec>(const Vec&, const Vec&)> m_equivalent;  // G x H
  std::function<std::optional<GroupElement>(const Vec&, const Vec&)> n_equivalent;  // H
};

PreqFrobeniusSetup make_preq_frobenius(const PrequantumSpace& xt, const Subgroup& h,
                                       const PrequantumSpace& yt, const InduceOptions& opts = {});

}  // namespace symind

#endif
