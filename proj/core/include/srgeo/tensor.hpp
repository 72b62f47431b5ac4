#pragma once

#include <Eigen/Core>

#include "srgeo/metric.hpp"

namespace srgeo {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Default relative eigenvalue threshold for all rank decisions: an
/// eigenvalue counts as zero when |lambda| <= tol * max|lambda|.
inline constexpr double kRankTol = 1e-10;

/// Eigenvalue counts (zero, plus, minus) of a symmetric matrix, e.g. a
/// Lorentzian metric reads (0, 3, 1).
struct Signature {
  int zero = 0;
  int plus = 0;
  int minus = 0;
  bool operator==(const Signature&) const = default;
};

/// Orthonormal basis of the numerical null space of a metric value.
struct RadicalBasis {
  Mat basis;  // dim x k, columns orthonormal
  double tol;
  int size() const { return static_cast<int>(basis.cols()); }
};

/// Moore-Penrose pseudoinverse of a metric value, realizing the co-inner
/// product on radical-annihilator covectors, plus the null-space data the
/// membership checks need.
struct CoMetric {
  Mat gplus;    // dim x dim, symmetric
  Mat radical;  // dim x k, columns orthonormal, spans ker g
  int rank = 0;
  double tol = kRankTol;
};

/// Entrywise evaluation of the metric at a point, symmetrized as
/// (M + M^T)/2. Expression domain errors propagate.
Mat eval_metric(const MetricSpec& spec, const Point& p);

Signature signature_of(const Mat& g, double tol = kRankTol);

RadicalBasis radical_basis(const Mat& g, double tol = kRankTol);

/// True iff omega lies in the column space of g (equivalently, annihilates
/// the radical): |g x - omega| <= tol (1 + |omega|) for the least-squares x.
bool is_radical_annihilator(const Vec& omega, const Mat& g, double tol = kRankTol);

CoMetric cometric(const Mat& g, double tol = kRankTol);

/// The co-inner product omega^T g+ tau. With validate set, both covectors
/// must annihilate the radical of the underlying metric; violations throw
/// AnnihilatorError.
double cocontract(const Vec& omega, const Vec& tau, const CoMetric& co, bool validate = false);

}  // namespace srgeo
