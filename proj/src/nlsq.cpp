#include "symind/nlsq.hpp"

#include <Eigen/Dense>

namespace symind {

NlsqResult levenberg_marquardt(const std::function<Vec(const Vec&)>& residual, const Vec& x0,
                               const NlsqOptions& opts) {
  Vec x = x0;
  Vec r = residual(x);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  NlsqResult out;
  for (int it = 0; it < opts.max_iter; ++it) {
    out.iters = it + 1;
    if (r.size() == 0 || r.cwiseAbs().maxCoeff() < opts.tol) break;
    Mat J(r.size(), x.size());
    Vec xp = x;
    for (int j = 0; j < x.size(); ++j) {
      double h = opts.fd_step * std::max(1.0, std::abs(x[j]));
      xp[j] = x[j] + h;
      Vec rp = residual(xp);
      xp[j] = x[j] - h;
      Vec rm = residual(xp);
      xp[j] = x[j];
      J.col(j) = (rp - rm) / (2 * h);
    }
    Mat JtJ = J.transpose() * J;
    Vec g = J.transpose() * r;
    bool stepped = false;
    for (int tries = 0; tries < 12; ++tries) {
      Mat A = JtJ;
      A.diagonal().array() += lambda * (JtJ.diagonal().array().abs() + 1e-12);
      Vec dx = A.ldlt().solve(-g);
      Vec xn = x + dx;
      Vec rn = residual(xn);
      double cn = rn.squaredNorm();
      if (cn < cost) {
        x = xn;
        r = rn;
        cost = cn;
        lambda = std::max(lambda * 0.3, 1e-12);
        stepped = true;
        if (dx.cwiseAbs().maxCoeff() < opts.step_tol) it = opts.max_iter;
        break;
      }
      lambda *= 8;
    }
    if (!stepped) break;
  }
  out.x = x;
  out.max_resid = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
  out.converged = out.max_resid < opts.tol;
  return out;
}

}  // namespace symind
