#ifndef SYMIND_LIE_CORE_HPP
#define SYMIND_LIE_CORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace symind {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

struct ChartDomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ProjectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A matrix Lie group described by a global chart on its identity component
/// (plus, for disconnected groups, explicit chart translations that generate
/// the remaining components).
struct LieGroup {
  std::string name;
  int chart_dim = 0;    // length of a parameter vector
  int matrix_size = 0;  // n for the n x n realization

  std::function<CMat(const Vec&)> param_to_matrix;
  std::function<Vec(const CMat&)> matrix_to_param;  // throws ChartDomainError
  // Directional derivative of param_to_matrix; exact for the built-in groups.
  std::function<CMat(const Vec&, const Vec&)> param_to_matrix_dir;

  std::vector<CMat> algebra_basis;  // spans the Lie algebra of the identity component

  // Chart translations enumerating connected components; empty when connected.
  std::vector<Vec> component_generators;

  // Parametrization of the identity component used by orbit searches.
  // Defaults to the chart itself (ic_dim == chart_dim, ic_embed == id).
  int ic_dim = 0;
  std::function<Vec(const Vec&)> ic_embed;

  // Optional closed-form composition/inverse on chart parameters. When
  // absent, mul/inverse go through the matrix realization.
  std::function<Vec(const Vec&, const Vec&)> compose;
  std::function<Vec(const Vec&)> invert;

  int algebra_dim() const { return static_cast<int>(algebra_basis.size()); }

  // Precomputed least-squares projector onto span(algebra_basis); set by
  // finalize_group().
  struct Projector;
  std::shared_ptr<const Projector> projector;
};

using GroupPtr = std::shared_ptr<const LieGroup>;

/// Fills derived fields (projector, ic defaults) and returns the shared handle.
GroupPtr finalize_group(LieGroup g);

struct GroupElement {
  GroupPtr group;
  Vec params;
};

struct AlgebraElement {
  GroupPtr group;
  Vec coeffs;  // coordinates in algebra_basis
};

struct DualVector {
  GroupPtr group;
  Vec coeffs;  // coordinates dual to algebra_basis
};

/// Closed subgroup data: the subgroup as a group in its own right plus the
/// inclusion on chart parameters and algebra coordinates.
struct Subgroup {
  GroupPtr sub;
  GroupPtr amb;
  std::function<Vec(const Vec&)> inclusion;  // sub params -> amb params
  Mat algebra_inclusion;  // amb.algebra_dim x sub.algebra_dim, full column rank
};

Subgroup compose_subgroups(const Subgroup& inner, const Subgroup& outer);

GroupElement identity(const GroupPtr& g);
GroupElement mul(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);
GroupElement group_exp(const AlgebraElement& xi);

CMat algebra_matrix(const AlgebraElement& xi);
/// Coordinates of X in algebra_basis; throws ProjectionError if the residual
/// exceeds tol (relative to |X|).
Vec project_to_algebra(const GroupPtr& g, const CMat& X, double tol = 1e-10);

double pairing(const DualVector& mu, const AlgebraElement& xi);

AlgebraElement ad_action(const GroupElement& g, const AlgebraElement& xi);
DualVector coad_action(const GroupElement& g, const DualVector& mu);
/// Matrix of Ad*(g) on dual coordinates: coad_action(g, mu) = coad_matrix(g) * mu.
Mat coad_matrix(const GroupElement& g);

DualVector restrict_dual(const DualVector& mu, const Subgroup& h);

GroupElement include_element(const Subgroup& h, const GroupElement& sub_elt);
AlgebraElement include_algebra(const Subgroup& h, const AlgebraElement& xi);

}  // namespace symind

#endif
