#pragma once

#include <array>
#include <vector>

#include "srgeo/metric.hpp"
#include "srgeo/tensor.hpp"

namespace srgeo {

/// Vector field (or covector field) given by one component expression per
/// coordinate of the chart.
struct VectorField {
  std::vector<Expr> comps;

  int dim() const { return static_cast<int>(comps.size()); }

  /// The coordinate field d/dx^a.
  static VectorField coordinate(int dim, int a);
  static VectorField zero(int dim);
};

/// g(X,Y) as an expression.
Expr pairing(const MetricSpec& spec, const VectorField& X, const VectorField& Y);

/// X(f): the directional derivative of a scalar expression.
Expr directional(const std::vector<std::string>& coords, const VectorField& X, const Expr& f);

/// [X,Y]^c = X^a d_a Y^c - Y^a d_a X^c.
VectorField lie_bracket(const std::vector<std::string>& coords, const VectorField& X,
                        const VectorField& Y);

/// The Koszul form on coordinate fields: the symbolic array
/// Gamma_abc = (d_a g_bc + d_b g_ca - d_c g_ab) / 2 (Christoffel symbols of
/// the first kind), together with its coordinate partials d_d Gamma_abc.
/// Construction simplifies every entry once; instances are immutable and
/// safe to share across threads.
class ChristoffelFirst {
 public:
  explicit ChristoffelFirst(MetricSpec spec);

  const MetricSpec& spec() const { return spec_; }
  int dim() const { return spec_.dim(); }

  const Expr& at(int a, int b, int c) const { return gamma_[index(a, b, c)]; }

  /// d_d Gamma_abc.
  const Expr& partial(int d, int a, int b, int c) const {
    return partials_[index(a, b, c) * spec_.dim() + d];
  }

  /// The covector Gamma_ab. evaluated in the coordinate cobasis.
  Vec covector(int a, int b, const Env& env) const;

  /// All Gamma values at a point, indexed like at().
  std::vector<double> values(const Env& env) const;

 private:
  std::size_t index(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * spec_.dim() + b) * spec_.dim() + c;
  }

  MetricSpec spec_;
  std::vector<Expr> gamma_;
  std::vector<Expr> partials_;
};

/// The full six-term Koszul form as an expression; Lie brackets of the
/// argument fields are computed symbolically.
Expr koszul_expression(const MetricSpec& spec, const VectorField& X, const VectorField& Y,
                       const VectorField& Z);

/// K(X,Y,Z) evaluated at a point.
double koszul_general(const MetricSpec& spec, const VectorField& X, const VectorField& Y,
                      const VectorField& Z, const Point& p);

/// The lower covariant derivative: the covector Z -> K(X,Y,Z) at p, in the
/// coordinate cobasis.
Vec lower_cov_derivative(const MetricSpec& spec, const VectorField& X, const VectorField& Y,
                         const Point& p);

/// True iff every covector Gamma_ab. at p is a radical annihilator of g(p).
bool check_radical_stationary(const ChristoffelFirst& chr, const Point& p,
                              double tol = kRankTol);

struct OneFormDerivative {
  Vec value;
  /// Set when g(p) is degenerate: the signature may change at p and the
  /// derivative is only guaranteed smooth where the signature is constant.
  bool degenerate_point = false;
};

/// Covariant derivative of a radical-annihilator 1-form omega (given as
/// component expressions) in the direction X, evaluated on the coordinate
/// fields: (grad_X omega)(d_b) = X(omega_b) - << K(X, d_b, .), omega >>.
/// Throws AnnihilatorError if omega(p) is not an annihilator and
/// StationarityError if the metric is not radical-stationary at p.
OneFormDerivative cov_derivative_oneform(const ChristoffelFirst& chr, const VectorField& X,
                                         const VectorField& omega, const Point& p,
                                         double tol = kRankTol);

/// The rank-4 all-covariant curvature array at a point.
struct CurvatureValue {
  int dim = 0;
  std::vector<double> r;  // dim^4, indexed [((a dim + b) dim + c) dim + d]
  Point point;
  double tol = kRankTol;

  double at(int a, int b, int c, int d) const {
    return r[((static_cast<std::size_t>(a) * dim + b) * dim + c) * dim + d];
  }
};

/// Riemann curvature with all indices covariant:
///   R_abcd = d_a Gamma_bcd - d_b Gamma_acd
///          + << Gamma_ac. , Gamma_bd. >> - << Gamma_ad. , Gamma_bc. >>
/// where <<,>> is the co-inner product of g(p). Requires radical
/// stationarity at p (throws StationarityError otherwise). At non-degenerate
/// points this is the classical all-lower curvature tensor with the
/// convention R(X,Y,Z,T) = <(nabla_X nabla_Y - nabla_Y nabla_X -
/// nabla_[X,Y]) Z, T>.
CurvatureValue riemann_at(const ChristoffelFirst& chr, const Point& p, double tol = kRankTol);

/// Sampled necessary-condition check of semi-regularity along a path of
/// non-degenerate points approaching a degenerate one. For every index pair
/// the co-contracted Koszul product << Gamma_ab. , Gamma_cd. >> is sampled
/// along the path; a trace counts as converged when the spread of its last
/// five samples is below cauchy_tol * (1 + scale) or keeps halving. For
/// diagonal metrics the ratios d_a alpha_b^2 / alpha_c, c in {a,b}, are also
/// sampled with a boundedness verdict per triple, reported under both the
/// "for all c" and "for some c" readings.
struct SemiregularReport {
  struct ProductTrace {
    std::array<int, 2> ab, cd;
    std::vector<double> values;
    bool converged = true;
  };
  struct RatioTrace {
    int a, b, c;
    std::vector<double> values;
    bool bounded = true;
  };

  std::vector<ProductTrace> products;
  bool all_products_converged = true;

  bool diagonal = false;
  std::vector<RatioTrace> ratios;
  bool ratios_bounded_for_all_c = true;   // meaningful when diagonal
  bool ratios_bounded_for_some_c = true;  // meaningful when diagonal

  double tol = kRankTol;
  double cauchy_tol = 1e-3;
};

/// Throws Error if the path has fewer than 8 points.
SemiregularReport check_semiregular(const ChristoffelFirst& chr, const std::vector<Point>& path,
                                    double tol = kRankTol, double cauchy_tol = 1e-3);

}  // namespace srgeo
