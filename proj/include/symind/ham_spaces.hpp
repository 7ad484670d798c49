#ifndef SYMIND_HAM_SPACES_HPP
#define SYMIND_HAM_SPACES_HPP

#include <optional>

#include "symind/forms_numerics.hpp"
#include "symind/nlsq.hpp"

namespace symind {

enum class Coord { Real, Angle };

/// Wrap to (-pi, pi].
double wrap_angle(double x);
/// x - y componentwise, angle coordinates wrapped.
Vec chart_diff(const std::vector<Coord>& coords, const Vec& x, const Vec& y);
double chart_distance(const std::vector<Coord>& coords, const Vec& x, const Vec& y);

using ActionFn = std::function<Vec(const GroupElement&, const Vec&)>;

struct HamiltonianSpace {
  GroupPtr group;
  int chart_dim = 0;
  std::vector<Coord> coords;
  ActionFn action;
  TwoForm omega;
  std::function<DualVector(const Vec&)> moment;
};

Vec moment_coeffs(const HamiltonianSpace& x_space, const Vec& x);

/// Derivative at t=0 of exp(t xi) acting on x.
Vec fundamental_field(const ActionFn& action, const std::vector<Coord>& coords,
                      const AlgebraElement& xi, const Vec& x, double h = kDefaultFdStep);
Vec fundamental_field(const HamiltonianSpace& x_space, const AlgebraElement& xi, const Vec& x,
                      double h = kDefaultFdStep);
/// Columns: fundamental fields of the algebra basis at x.
Mat orbit_directions(const HamiltonianSpace& x_space, const Vec& x, double h = kDefaultFdStep);

/// Ker(D moment) == omega-orthogonal of the orbit directions at x.
bool check_cardinal_a(const HamiltonianSpace& x_space, const Vec& x, double tol = 1e-6,
                      double fd_step = kDefaultFdStep);
/// Im(D moment) == annihilator of the stabilizer subalgebra at x.
bool check_cardinal_b(const HamiltonianSpace& x_space, const Vec& x, double tol = 1e-6,
                      double fd_step = kDefaultFdStep);

/// Same action, negated 2-form and momentum map.
HamiltonianSpace dual_space(const HamiltonianSpace& x_space);
/// Diagonal action of the common group on the concatenated chart.
HamiltonianSpace product_space(const HamiltonianSpace& x1, const HamiltonianSpace& x2);
/// X regarded as a Hamiltonian K-space for a closed subgroup K.
HamiltonianSpace restrict_space(const HamiltonianSpace& x_space, const Subgroup& k);
/// Zero-dimensional space with a fixed momentum value (which must be a fixed
/// point of the coadjoint action for equivariance to hold).
HamiltonianSpace point_space(const GroupPtr& group, const DualVector& mu0);

struct OrbitSearchOptions {
  double tol = 1e-8;
  double box = 10.0;
  int multistarts = 16;
  int n_max = 8;
  std::uint64_t seed = 42;
  int max_iter = 80;
  std::vector<int> ignore_coords;  // chart indices excluded from the match residual
};

/// A family of transformations to search over: a discrete component index and
/// a continuous parameter vector.
struct TransformationSearch {
  int nparams = 0;
  int n_components = 1;
  std::function<Vec(int comp, const Vec& u, const Vec& x)> apply;
};

struct TransformWitness {
  int comp = 0;
  Vec u;
};

std::optional<TransformWitness> transform_match(const TransformationSearch& search, const Vec& x1,
                                                const Vec& x2, const std::vector<Coord>& coords,
                                                const OrbitSearchOptions& opts);

/// Bounded multi-start search for g with action(g, x1) == x2; enumerates
/// component-generator powers up to n_max. Absence means "not equivalent at
/// this budget".
std::optional<GroupElement> orbit_equivalent(const GroupPtr& group, const ActionFn& action,
                                             const std::vector<Coord>& coords, const Vec& x1,
                                             const Vec& x2, const OrbitSearchOptions& opts);

/// Number of components enumerated by orbit_equivalent at a given budget, and
/// the group element for a given component index.
int component_count(const GroupPtr& group, int n_max);
GroupElement component_element(const GroupPtr& group, int comp, int n_max);

/// A reduced space held intensionally: level-set sampler plus orbit
/// equivalence with witnesses.
struct QuotientSet {
  GroupPtr group;
  int chart_dim = 0;
  std::vector<Coord> coords;
  std::function<std::optional<Vec>(std::uint64_t seed, std::uint64_t index)> sampler;
  std::function<std::optional<GroupElement>(const Vec&, const Vec&)> equivalent;
  std::function<Vec(const Vec&)> constraint;   // zero residual on the level set
  std::function<Mat(const Vec&)> orbit_span;   // orbit directions at a level point
};

struct HomOptions {
  double sample_box = 10.0;
  double level_tol = 1e-9;
  double fd_step = kDefaultFdStep;
  OrbitSearchOptions orbit;
};

/// Hom_G(X1, X2): level set { moment2(x2) = moment1(x1) } modulo the diagonal
/// G-action. Empty level sets are valid (sampler returns nullopt).
QuotientSet hom_set(const HamiltonianSpace& x1, const HamiltonianSpace& x2,
                    const HomOptions& opts = {});

struct ClassPartition {
  std::vector<Vec> samples;
  std::vector<int> labels;  // class id per sample
  int n_classes = 0;
  std::vector<int> representatives;  // sample index per class
};

/// Union-find over pairwise equivalence on a seeded sample. An optional
/// invariant prefilter skips the search when invariants differ by more than
/// `gap` (the invariant must be exactly constant on classes).
ClassPartition count_classes(const QuotientSet& q, int n_samples, std::uint64_t seed,
                             const std::function<Vec(const Vec&)>& invariant = nullptr,
                             double gap = 1e-4);
ClassPartition partition_samples(const std::vector<Vec>& samples,
                                 const std::function<std::optional<GroupElement>(const Vec&, const Vec&)>& equivalent,
                                 const std::function<Vec(const Vec&)>& invariant = nullptr,
                                 double gap = 1e-4);

/// Local dimension of the quotient at a level point: level-set tangents minus
/// orbit directions, counted by singular values above the cutoff.
int quotient_dim_estimate(const QuotientSet& q, const Vec& x, double fd_step = kDefaultFdStep,
                          double cutoff = 1e-6);

}  // namespace symind

#endif
