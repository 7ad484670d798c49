#include "symind/lie_core.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace symind {

struct LieGroup::Projector {
  Mat basis_cols;  // (2 n^2) x d, real+imag stacked vectorizations
  Eigen::CompleteOrthogonalDecomposition<Mat> solver;
};

namespace {

Vec vectorize(const CMat& X) {
  const int n = static_cast<int>(X.rows());
  Vec v(2 * n * n);
  int k = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      v[k++] = X(i, j).real();
      v[k++] = X(i, j).imag();
    }
  return v;
}

}  // namespace

GroupPtr finalize_group(LieGroup g) {
  if (g.ic_dim == 0 && !g.ic_embed) {
    g.ic_dim = g.chart_dim;
    g.ic_embed = [](const Vec& u) { return u; };
  }
  auto proj = std::make_shared<LieGroup::Projector>();
  const int d = g.algebra_dim();
  const int n = g.matrix_size;
  proj->basis_cols.resize(2 * n * n, d);
  for (int j = 0; j < d; ++j) proj->basis_cols.col(j) = vectorize(g.algebra_basis[j]);
  proj->solver.compute(proj->basis_cols);
  g.projector = proj;
  return std::make_shared<const LieGroup>(std::move(g));
}

GroupElement identity(const GroupPtr& g) { return {g, Vec::Zero(g->chart_dim)}; }

GroupElement mul(const GroupElement& a, const GroupElement& b) {
  if (a.group != b.group) throw std::invalid_argument("mul: mixed groups");
  const auto& g = *a.group;
  if (g.compose) return {a.group, g.compose(a.params, b.params)};
  CMat M = g.param_to_matrix(a.params) * g.param_to_matrix(b.params);
  return {a.group, g.matrix_to_param(M)};
}

GroupElement inverse(const GroupElement& a) {
  const auto& g = *a.group;
  if (g.invert) return {a.group, g.invert(a.params)};
  CMat M = g.param_to_matrix(a.params).inverse();
  return {a.group, g.matrix_to_param(M)};
}

GroupElement group_exp(const AlgebraElement& xi) {
  const auto& g = *xi.group;
  CMat X = algebra_matrix(xi);
  CMat E = X.exp();
  return {xi.group, g.matrix_to_param(E)};
}

CMat algebra_matrix(const AlgebraElement& xi) {
  const auto& g = *xi.group;
  CMat X = CMat::Zero(g.matrix_size, g.matrix_size);
  for (int i = 0; i < g.algebra_dim(); ++i) X += xi.coeffs[i] * g.algebra_basis[i];
  return X;
}

Vec project_to_algebra(const GroupPtr& g, const CMat& X, double tol) {
  Vec v = vectorize(X);
  Vec c = g->projector->solver.solve(v);
  double resid = (g->projector->basis_cols * c - v).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  if (resid > tol * scale)
    throw ProjectionError(g->name + ": matrix left the algebra span (residual " +
                          std::to_string(resid) + ")");
  return c;
}

double pairing(const DualVector& mu, const AlgebraElement& xi) {
  if (mu.group != xi.group) throw std::invalid_argument("pairing: mixed groups");
  if (mu.coeffs.size() != xi.coeffs.size())
    throw std::invalid_argument("pairing: dimension mismatch");
  return mu.coeffs.dot(xi.coeffs);
}

AlgebraElement ad_action(const GroupElement& g, const AlgebraElement& xi) {
  const auto& grp = *g.group;
  CMat G = grp.param_to_matrix(g.params);
  CMat X = algebra_matrix(xi);
  return {g.group, project_to_algebra(g.group, G * X * G.inverse())};
}

Mat coad_matrix(const GroupElement& g) {
  const auto& grp = *g.group;
  const int d = grp.algebra_dim();
  CMat Gi = grp.param_to_matrix(g.params).inverse();
  CMat G = grp.param_to_matrix(g.params);
  Mat A(d, d);  // Ad(g^{-1}) in basis coordinates
  for (int j = 0; j < d; ++j)
    A.col(j) = project_to_algebra(g.group, Gi * grp.algebra_basis[j] * G);
  return A.transpose();
}

DualVector coad_action(const GroupElement& g, const DualVector& mu) {
  if (g.group != mu.group) throw std::invalid_argument("coad_action: mixed groups");
  return {mu.group, coad_matrix(g) * mu.coeffs};
}

DualVector restrict_dual(const DualVector& mu, const Subgroup& h) {
  if (mu.group != h.amb) throw std::invalid_argument("restrict_dual: wrong ambient group");
  return {h.sub, h.algebra_inclusion.transpose() * mu.coeffs};
}

GroupElement include_element(const Subgroup& h, const GroupElement& sub_elt) {
  if (sub_elt.group != h.sub) throw std::invalid_argument("include_element: wrong group");
  return {h.amb, h.inclusion(sub_elt.params)};
}

AlgebraElement include_algebra(const Subgroup& h, const AlgebraElement& xi) {
  if (xi.group != h.sub) throw std::invalid_argument("include_algebra: wrong group");
  return {h.amb, h.algebra_inclusion * xi.coeffs};
}

Subgroup compose_subgroups(const Subgroup& inner, const Subgroup& outer) {
  if (inner.amb != outer.sub)
    throw std::invalid_argument("compose_subgroups: chain mismatch");
  Subgroup s;
  s.sub = inner.sub;
  s.amb = outer.amb;
  auto in_inc = inner.inclusion;
  auto out_inc = outer.inclusion;
  s.inclusion = [in_inc, out_inc](const Vec& p) { return out_inc(in_inc(p)); };
  s.algebra_inclusion = outer.algebra_inclusion * inner.algebra_inclusion;
  return s;
}

}  // namespace symind
