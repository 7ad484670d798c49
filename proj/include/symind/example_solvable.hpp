#ifndef SYMIND_EXAMPLE_SOLVABLE_HPP
#define SYMIND_EXAMPLE_SOLVABLE_HPP

#include "symind/prequantum.hpp"

namespace symind {

// The solvable 4x4 matrix group G' with entries (e^{ia}, b; 1, e, f; 1, a; 1),
// chart (a, Re b, Im b, e, f), and its subgroups G = {e = 0},
// H = {g in G : a in 2 pi Z} (disconnected) and H' = {g' : a = 0}.
GroupPtr gprime_group();
GroupPtr g_group();
GroupPtr h_group();
GroupPtr hprime_group();

Subgroup h_in_g();
Subgroup g_in_gprime();
Subgroup h_in_gprime();
Subgroup hprime_in_gprime();

/// Value (p,q,s,t) of the 1-form p da + Re(q~ db) - s de - t df at the identity.
struct DualGPrime {
  double p = 0;
  std::complex<double> q{0, 0};
  double s = 0;
  double t = 0;
};

/// Coordinates (p, Re q, Im q, -s, -t) dual to the algebra basis.
Vec dual_gprime_coeffs(const DualGPrime& m);
DualGPrime dual_gprime_from_coeffs(const Vec& c);

/// Coadjoint action on the invariant hyperplane t = 1, in closed form.
/// Requires m.t == 1.
DualGPrime coadjoint_gprime(const GroupElement& gp, const DualGPrime& m);

/// check-point c = (0,1,0,1) and its restrictions.
DualVector c_check();         // over g'
DualVector c_check_h();       // over h
DualVector c_check_hprime();  // over h'

/// Coadjoint orbits: X' = G'(c) with chart (p, s), omega = dp ^ ds, and its
/// image X = G(c|g) with chart (p, theta), omega = dp ^ dtheta.
HamiltonianSpace orbit_X();
HamiltonianSpace orbit_Xprime();
/// Covering X' -> X on charts: (p, s) -> (p, s mod 2 pi).
Vec covering_map(const Vec& xprime);

/// Primitives: varpi_X = p dtheta and varpi_X' = p ds.
OneForm orbit_X_primitive();
OneForm orbit_Xprime_primitive();

/// Prequantizations: X~' with chart (p, s, theta_z), varpi = p ds + dtheta_z;
/// X~_lambda with chart (p, theta_q, theta_z), varpi = (p+lambda) dtheta_q + dtheta_z.
PrequantumSpace preq_Xprime();
PrequantumSpace preq_Xlambda(double lambda);

/// Characters chi_lambda(h) = e^{-i lambda a} e^{i[Re(b)-f]} on H and
/// chi'(h') = e^{i[Re(b)-f]} on H', and the circles they act on.
std::complex<double> char_lambda(double lambda, const GroupElement& h);
std::complex<double> char_prime(const GroupElement& hp);
PrequantumSpace t_lambda(double lambda);
PrequantumSpace t_prime();

/// For integer lambda1 - lambda2: the chart map (p,q,z) -> (p,q,z q^{lambda1-lambda2}),
/// an isomorphism from X~_{lambda1} to X~_{lambda2}; absent otherwise.
std::optional<std::function<Vec(const Vec&)>> gauge_equivalence(double lambda1, double lambda2);

struct FrobeniusExampleResult {
  int g_side_classes = -1;
  int h_side_classes = -1;
  int g_side_dim = -1;
};
/// Hom_G(X, Res X') and Hom_H({c|h}, Res X'): class counts and local dimension.
FrobeniusExampleResult run_frobenius_example(std::uint64_t seed, int samples,
                                             const OrbitSearchOptions& orbit = {});

struct PreqFrobeniusExampleResult {
  int g_side_classes = -1;
  int h_side_classes = -1;
  int g_side_dim = -1;
  double curve_closure = -1;  // chart distance between loop endpoint and start
};
/// Hom_G(X~_lambda, Res X~') and Hom_H(T_lambda, Res X~').
PreqFrobeniusExampleResult run_prequantum_frobenius_example(double lambda, std::uint64_t seed,
                                                            int samples,
                                                            const OrbitSearchOptions& orbit = {});

}  // namespace symind

#endif
