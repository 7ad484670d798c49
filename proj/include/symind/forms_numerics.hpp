#ifndef SYMIND_FORMS_NUMERICS_HPP
#define SYMIND_FORMS_NUMERICS_HPP

#include <functional>

#include "symind/lie_core.hpp"

namespace symind {

struct OneForm {
  int dim = 0;
  std::function<double(const Vec& point, const Vec& tangent)> eval;
};

struct TwoForm {
  int dim = 0;
  std::function<double(const Vec& point, const Vec& v, const Vec& w)> eval;
};

/// A linear subspace stored as an orthonormal column basis.
struct Subspace {
  int ambient_dim = 0;
  Mat basis;  // ambient_dim x dim, orthonormal columns

  int dim() const { return static_cast<int>(basis.cols()); }
};

constexpr double kDefaultFdStep = 1e-5;
constexpr double kDefaultRankTol = 1e-7;

/// Central-difference d(form)(v, w) at x, with constant-coefficient extension
/// of the tangents in the chart. One level of Richardson extrapolation when
/// requested.
double exterior_derivative(const OneForm& form, const Vec& x, const Vec& v, const Vec& w,
                           double h = kDefaultFdStep, bool richardson = false);

/// Wraps a OneForm as the TwoForm d(form) with a captured step.
TwoForm d(const OneForm& form, double h = kDefaultFdStep, bool richardson = false);

Mat jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x, double h = kDefaultFdStep);

int rank(const Mat& a, double tol_rel = kDefaultRankTol);

/// Orthonormal basis of the nullspace (right singular vectors below tolerance).
Mat nullspace(const Mat& a, double tol_rel = kDefaultRankTol);
/// Orthonormal basis of the column space.
Mat colspace(const Mat& a, double tol_rel = kDefaultRankTol);

Subspace make_subspace(int ambient_dim, const Mat& spanning, double tol_rel = kDefaultRankTol);
Subspace full_subspace(int ambient_dim);
Subspace zero_subspace(int ambient_dim);

/// Orthogonal of S relative to the (nondegenerate) 2-form at x.
/// Throws DegeneracyError when the Gram matrix of the form is singular.
Subspace symplectic_orthogonal(const TwoForm& omega, const Vec& x, const Subspace& s,
                               double tol_rel = kDefaultRankTol);

/// Annihilator in dual coordinates; with matched bases this is the plain
/// orthogonal complement.
Subspace annihilator(const Subspace& s);

/// Largest principal angle between subspaces of equal dimension.
double max_principal_angle(const Subspace& s1, const Subspace& s2);

bool subspace_equal(const Subspace& s1, const Subspace& s2, double tol = 1e-6);

}  // namespace symind

#endif
