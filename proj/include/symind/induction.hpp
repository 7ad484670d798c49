#ifndef SYMIND_INDUCTION_HPP
#define SYMIND_INDUCTION_HPP

#include "symind/ham_spaces.hpp"

namespace symind {

/// A cotangent vector to G in left trivialization: (q, mu) with mu = q^{-1} p.
struct CotangentPoint {
  GroupElement q;
  DualVector mu;
};

// Chart of T*G: [group params | mu coefficients].
int t_star_dim(const GroupPtr& g);
CotangentPoint t_star_unpack(const GroupPtr& g, const Vec& x);
Vec t_star_pack(const CotangentPoint& p);

/// Canonical 1-form <p, dq> in the trivialized chart.
OneForm t_star_one_form(const GroupPtr& g);
double canonical_one_form(const GroupPtr& g, const Vec& x, const Vec& v);

/// T*G as a Hamiltonian G-space (left translations); moment phi(q,mu) = mu o Ad_{q^{-1}}.
HamiltonianSpace t_star_space(const GroupPtr& g, double fd_step = kDefaultFdStep);

/// (g,h)(q,mu,y) = (g q h^{-1}, Ad*(h) mu, h(y)) on the chart of T*G x Y.
Vec gh_action(const GroupPtr& g, const Subgroup& h, const HamiltonianSpace& y,
              const GroupElement& gg, const GroupElement& hh, const Vec& n);

struct InduceOptions {
  double sample_box = 10.0;
  double fd_step = kDefaultFdStep;
  OrbitSearchOptions orbit;
};

/// Ind_H^G Y realized on the level set psi^{-1}(0) in N = T*G x Y, modulo H.
struct InducedSpace {
  GroupPtr big;
  Subgroup h;
  HamiltonianSpace y;
  int chart_dim = 0;  // chart of N
  std::vector<Coord> coords;
  OneForm varpi_n;  // canonical 1-form of the T*G factor
  TwoForm omega_n;  // d varpi + omega_Y
  std::function<Vec(const Vec&)> psi;  // level-set constraint
  ActionFn g_action;
  ActionFn h_action;
  std::function<DualVector(const Vec&)> moment;  // phi, G-momentum
  std::function<std::optional<Vec>(std::uint64_t, std::uint64_t)> sampler;
  std::function<std::optional<GroupElement>(const Vec&, const Vec&)> equivalent;  // H-orbits
  Mat h_orbit_span(const Vec& n, double fd_step = kDefaultFdStep) const;
};

InducedSpace induce(const GroupPtr& g, const Subgroup& h, const HamiltonianSpace& y,
                    const InduceOptions& opts = {});

/// 2 dim(G/H) + dim(Y).
int induced_dim(const GroupPtr& g, const Subgroup& h, const HamiltonianSpace& y);

/// omega_N evaluated on level-set tangents; representative independence and
/// orbit degeneracy are what make this the reduced form.
/// Throws std::invalid_argument when a tangent is not tangent to psi^{-1}(0).
double reduced_form(const InducedSpace& ind, const Vec& pt, const Vec& v, const Vec& w,
                    double tangent_tol = 1e-6, double fd_step = kDefaultFdStep);

/// Stages data for a chain H c K c G on M = T*G x T*K x Y.
struct StagesData {
  GroupPtr big;       // G
  Subgroup k_in_g;
  Subgroup h_in_k;
  Subgroup h_in_g;
  HamiltonianSpace y;  // over H
  OneForm y_varpi;     // optional 1-form on Y (prequantum reuse); zero by default

  int m_dim = 0;
  std::vector<Coord> m_coords;
  int n_dim = 0;
  std::vector<Coord> n_coords;

  std::function<Vec(const Vec&)> m_constraint;  // (phibar, psibar)
  std::function<Vec(const Vec&)> n_constraint;  // psi
  std::function<Vec(const Vec&)> map_s;         // level set of M -> level set of N
  std::function<Vec(const Vec&)> section;       // right inverse of s
  OneForm varpi_m;  // <p,dq> + <pbar,dqbar> + varpi_Y
  OneForm varpi_n;

  std::function<std::optional<Vec>(std::uint64_t, std::uint64_t)> m_sampler;
  // (g,k,h)-action pieces on the M chart:
  std::function<Vec(const GroupElement&, const Vec&)> g_action_m;
  std::function<Vec(const GroupElement&, const Vec&)> k_action_m;  // k over k_in_g.sub
  std::function<Vec(const GroupElement&, const Vec&)> h_action_m;  // h over h_in_g.sub
  // (g,h)-action on the N chart:
  std::function<Vec(const GroupElement&, const Vec&)> g_action_n;
  std::function<Vec(const GroupElement&, const Vec&)> h_action_n;
  // Momentum maps phi on M and N (constant on the respective orbits).
  std::function<Vec(const Vec&)> m_moment;
  std::function<Vec(const Vec&)> n_moment;
  // class equivalences at budget: M modulo K x H, N modulo H
  std::function<std::optional<Vec>(const Vec&, const Vec&)> m_equivalent;
  std::function<std::optional<GroupElement>(const Vec&, const Vec&)> n_equivalent;
};

StagesData make_stages(const GroupPtr& g, const Subgroup& k_in_g, const Subgroup& h_in_k,
                       const HamiltonianSpace& y, const InduceOptions& opts = {},
                       const OneForm* y_varpi = nullptr);

/// | varpi_N(s(m); Ds(m) v) - varpi_M(m; v) | for one tangent v.
double stages_form_residual(const StagesData& st, const Vec& m, const Vec& v,
                            double fd_step = kDefaultFdStep);

/// Frobenius reciprocity data: X over G, Y over H c G.
/// M chart: [x | qbar params | mubar | y]; N chart: [x | y].
struct FrobeniusSetup {
  HamiltonianSpace x;
  Subgroup h;
  HamiltonianSpace y;
  int m_dim = 0;
  std::vector<Coord> m_coords;
  int n_dim = 0;
  std::vector<Coord> n_coords;
  std::function<Vec(const Vec&)> m_constraint;  // (phibar, psibar)
  std::function<Vec(const Vec&)> n_constraint;  // psi
  std::function<Vec(const Vec&)> forward;       // (x, pbar, y) -> (qbar^{-1}(x), y)
  std::function<Vec(const Vec&)> backward;      // (x, y) -> (x, e, Phi(x), y)
  std::function<std::optional<Vec>(std::uint64_t, std::uint64_t)> m_sampler;
  std::function<std::optional<Vec>(std::uint64_t, std::uint64_t)> n_sampler;
  std::function<std::optional<Vec>(const Vec&, const Vec&)> m_equivalent;  // G x H
  std::function<std::optional<GroupElement>(const Vec&, const Vec&)> n_equivalent;  // H
};

FrobeniusSetup make_frobenius(const HamiltonianSpace& x, const Subgroup& h,
                              const HamiltonianSpace& y, const InduceOptions& opts = {});

}  // namespace symind

#endif
