#pragma once

#include <optional>

#include "srgeo/geometry.hpp"

namespace srgeo {

/// Levi-Civita permutation symbol with epsilon_0123 = +1 (0 on repeated
/// indices).
int levi_civita(int a, int b, int c, int d);

/// Single global factor between the Levi-Civita density formula and the
/// classical Einstein tensor, measured on non-vacuum solutions and pinned:
///   einstein_density_at().upper == kEinsteinDensityFactor * det g * G^{ab}.
inline constexpr double kEinsteinDensityFactor = 4.0;

/// Ricci tensor by co-contraction of the curvature: Ric_bc = g+^{ad} R_abcd,
/// summing the first and last curvature slots. Equals the classical Ricci
/// tensor at non-degenerate points (Ric = 0 on Schwarzschild, Ric = g on the
/// unit 2-sphere); at degenerate radical-stationary points it is the
/// extended co-contraction convention.
Mat ricci_at(const ChristoffelFirst& chr, const Point& p, double tol = kRankTol);

/// Scalar curvature s = g+^{bc} Ric_bc.
double scalar_at(const ChristoffelFirst& chr, const Point& p, double tol = kRankTol);

/// Einstein tensor G = Ric - s g / 2. Throws DegeneracyError when g(p) is
/// degenerate (no smoothness guarantee across a signature change).
Mat einstein_at(const ChristoffelFirst& chr, const Point& p, double tol = kRankTol);

struct EinsteinDensityValue {
  Mat upper;  // G^{ab} det g = g_kl eps^{akst} eps^{blpq} R_stpq
  Mat lower;  // g_ak g_bl (G^{kl} det g)
};

/// The Einstein tensor density from the Levi-Civita symbol contraction.
/// Stays finite wherever the curvature does, including degenerate points.
/// Requires dim = 4.
EinsteinDensityValue einstein_density_at(const ChristoffelFirst& chr, const Point& p,
                                         double tol = kRankTol);

struct HodgeDualResult {
  std::vector<double> double_dual;  // (*R*)_abcd, dim^4, indexed like CurvatureValue
  Mat einstein_candidate;           // g^{st} (*R*)_asbt
  /// Measured constant einstein_candidate / einstein_at, empty when the
  /// Einstein tensor vanishes at p.
  std::optional<double> ratio_to_einstein;
};

/// Double Hodge dual of the curvature, (*R*)_abcd = eps_ab^{st} eps_cd^{pq}
/// R_stpq, built from the volume form eps_abcd = levi_civita * sqrt(-det g).
/// Requires a non-degenerate Lorentzian metric at p and dim = 4.
HodgeDualResult hodge_double_dual_at(const ChristoffelFirst& chr, const Point& p,
                                     double tol = kRankTol);

/// Residual of the densitized Einstein equation,
///   G_ab det g + Lambda g_ab det g - kappa T_ab det g,
/// with the G density normalized by kEinsteinDensityFactor so that it equals
/// det g times the classical Einstein tensor at non-degenerate points.
Mat densitized_residual(const ChristoffelFirst& chr, const Point& p, double lambda,
                        const Mat& stress_energy, double kappa, double tol = kRankTol);

/// Boyer-Lindquist Kerr-Newman metric multiplied through by Sigma*Delta and
/// expanded so no component contains a quotient: every component evaluates
/// finitely at Delta = 0 and along Sigma -> 0 paths.
MetricSpec kerr_newman_regularized(double m, double a, double e);

}  // namespace srgeo
