#include "srgeo/tensor.hpp"

#include <Eigen/Eigenvalues>

#include "srgeo/errors.hpp"

namespace srgeo {

namespace {

Eigen::SelfAdjointEigenSolver<Mat> eigensolve(const Mat& g) {
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  if (es.info() != Eigen::Success) throw Error("symmetric eigendecomposition failed");
  return es;
}

double zero_threshold(const Vec& eigenvalues, double tol) {
  return tol * eigenvalues.cwiseAbs().maxCoeff();
}

}  // namespace

Mat eval_metric(const MetricSpec& spec, const Point& p) {
  const int n = spec.dim();
  Env env = spec.env_at(p);
  Mat g(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      g(a, b) = evaluate(spec.component(a, b), env);
      g(b, a) = g(a, b);
    }
  }
  return 0.5 * (g + g.transpose());
}

Signature signature_of(const Mat& g, double tol) {
  auto es = eigensolve(g);
  const Vec& ev = es.eigenvalues();
  const double thr = zero_threshold(ev, tol);
  Signature s;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= thr)
      ++s.zero;
    else if (ev[i] > 0)
      ++s.plus;
    else
      ++s.minus;
  }
  return s;
}

RadicalBasis radical_basis(const Mat& g, double tol) {
  auto es = eigensolve(g);
  const Vec& ev = es.eigenvalues();
  const double thr = zero_threshold(ev, tol);
  int k = 0;
  for (int i = 0; i < ev.size(); ++i) k += std::abs(ev[i]) <= thr;
  RadicalBasis rb;
  rb.tol = tol;
  rb.basis.resize(g.rows(), k);
  int j = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= thr) rb.basis.col(j++) = es.eigenvectors().col(i);
  }
  return rb;
}

bool is_radical_annihilator(const Vec& omega, const Mat& g, double tol) {
  CoMetric co = cometric(g, tol);
  Vec x = co.gplus * omega;
  return (g * x - omega).cwiseAbs().maxCoeff() <= tol * (1.0 + omega.cwiseAbs().maxCoeff());
}

CoMetric cometric(const Mat& g, double tol) {
  auto es = eigensolve(g);
  const Vec& ev = es.eigenvalues();
  const Mat& q = es.eigenvectors();
  const double thr = zero_threshold(ev, tol);

  Vec inv = Vec::Zero(ev.size());
  CoMetric co;
  co.tol = tol;
  int zeros = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= thr)
      ++zeros;
    else
      inv[i] = 1.0 / ev[i];
  }
  co.rank = static_cast<int>(ev.size()) - zeros;
  co.gplus = q * inv.asDiagonal() * q.transpose();
  co.gplus = 0.5 * (co.gplus + co.gplus.transpose().eval());
  co.radical.resize(g.rows(), zeros);
  int j = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= thr) co.radical.col(j++) = q.col(i);
  }
  return co;
}

namespace {

bool annihilates_radical(const Vec& omega, const CoMetric& co) {
  if (co.radical.cols() == 0) return true;
  double bound = co.tol * (1.0 + omega.cwiseAbs().maxCoeff());
  return (co.radical.transpose() * omega).cwiseAbs().maxCoeff() <= bound;
}

}  // namespace

double cocontract(const Vec& omega, const Vec& tau, const CoMetric& co, bool validate) {
  if (validate) {
    if (!annihilates_radical(omega, co))
      throw AnnihilatorError("covector is not a radical annihilator");
    if (!annihilates_radical(tau, co))
      throw AnnihilatorError("covector is not a radical annihilator");
  }
  return omega.dot(co.gplus * tau);
}

}  // namespace srgeo
