#include "symind/forms_numerics.hpp"

#include <Eigen/SVD>

namespace symind {

namespace {

double ext_deriv_step(const OneForm& form, const Vec& x, const Vec& v, const Vec& w, double h) {
  double dv = (form.eval(x + h * v, w) - form.eval(x - h * v, w)) / (2 * h);
  double dw = (form.eval(x + h * w, v) - form.eval(x - h * w, v)) / (2 * h);
  return dv - dw;
}

}  // namespace

double exterior_derivative(const OneForm& form, const Vec& x, const Vec& v, const Vec& w,
                           double h, bool richardson) {
  if (h <= 0) throw std::invalid_argument("exterior_derivative: step must be positive");
  double e1 = ext_deriv_step(form, x, v, w, h);
  if (!richardson) return e1;
  double e2 = ext_deriv_step(form, x, v, w, h / 2);
  return (4 * e2 - e1) / 3;
}

TwoForm d(const OneForm& form, double h, bool richardson) {
  return {form.dim, [form, h, richardson](const Vec& x, const Vec& v, const Vec& w) {
            return exterior_derivative(form, x, v, w, h, richardson);
          }};
}

Mat jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x, double h) {
  Vec f0 = f(x);
  Mat J(f0.size(), x.size());
  Vec xp = x, xm = x;
  for (int j = 0; j < x.size(); ++j) {
    xp[j] += h;
    xm[j] -= h;
    J.col(j) = (f(xp) - f(xm)) / (2 * h);
    xp[j] = x[j];
    xm[j] = x[j];
  }
  return J;
}

int rank(const Mat& a, double tol_rel) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > tol_rel * s[0]) ++r;
  return r;
}

Mat nullspace(const Mat& a, double tol_rel) {
  const int n = static_cast<int>(a.cols());
  if (a.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double smax = s.size() ? s[0] : 0.0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (smax > 0 && s[i] > tol_rel * smax) ++r;
  return svd.matrixV().rightCols(n - r);
}

Mat colspace(const Mat& a, double tol_rel) {
  if (a.size() == 0) return Mat(a.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  double smax = s.size() ? s[0] : 0.0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (smax > 0 && s[i] > tol_rel * smax) ++r;
  return svd.matrixU().leftCols(r);
}

Subspace make_subspace(int ambient_dim, const Mat& spanning, double tol_rel) {
  if (spanning.size() != 0 && spanning.rows() != ambient_dim)
    throw std::invalid_argument("make_subspace: ambient dimension mismatch");
  if (spanning.cols() == 0) return {ambient_dim, Mat(ambient_dim, 0)};
  return {ambient_dim, colspace(spanning, tol_rel)};
}

Subspace full_subspace(int ambient_dim) {
  return {ambient_dim, Mat::Identity(ambient_dim, ambient_dim)};
}

Subspace zero_subspace(int ambient_dim) { return {ambient_dim, Mat(ambient_dim, 0)}; }

Subspace symplectic_orthogonal(const TwoForm& omega, const Vec& x, const Subspace& s,
                               double tol_rel) {
  const int n = omega.dim;
  Mat gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gram(i, j) = omega.eval(x, Vec::Unit(n, i), Vec::Unit(n, j));
  if (rank(gram, tol_rel) < n)
    throw DegeneracyError("symplectic_orthogonal: degenerate 2-form at evaluation point");
  // v is orthogonal to S iff omega(v, s_i) = 0 for all basis columns, i.e.
  // (S^T gram^T) v = 0.
  Mat constraints = s.basis.transpose() * gram.transpose();
  return {n, nullspace(constraints, tol_rel)};
}

Subspace annihilator(const Subspace& s) {
  return {s.ambient_dim, nullspace(s.basis.transpose())};
}

double max_principal_angle(const Subspace& s1, const Subspace& s2) {
  if (s1.dim() == 0 && s2.dim() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(s1.basis.transpose() * s2.basis);
  const auto& sv = svd.singularValues();
  double smin = sv.size() ? sv[sv.size() - 1] : 0.0;
  smin = std::min(1.0, std::max(-1.0, smin));
  return std::acos(smin);
}

bool subspace_equal(const Subspace& s1, const Subspace& s2, double tol) {
  if (s1.ambient_dim != s2.ambient_dim)
    throw std::invalid_argument("subspace_equal: ambient dimension mismatch");
  if (s1.dim() != s2.dim()) return false;
  return max_principal_angle(s1, s2) < tol;
}

}  // namespace symind
