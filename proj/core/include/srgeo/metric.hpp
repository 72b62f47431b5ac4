#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "srgeo/expr.hpp"

namespace srgeo {

/// Coordinate values of a chart point, ordered like MetricSpec::coords().
using Point = Eigen::VectorXd;

/// A chart dimension, coordinate names, fixed parameter bindings, and a
/// symmetric matrix of component expressions for g_ab. Immutable after
/// construction; construction validates symmetry and that every component
/// references only declared coordinates and parameters.
class MetricSpec {
 public:
  /// `components` is dim*dim, row-major. Symmetric slots may be given on
  /// either side (the other left as the marker Expr constant 0); when both
  /// (a,b) and (b,a) are nonzero they must be structurally equal after
  /// simplification. Throws MetricError on any validation failure.
  MetricSpec(int dim, std::vector<std::string> coords,
             std::map<std::string, double> params, std::vector<Expr> components);

  int dim() const { return dim_; }
  const std::vector<std::string>& coords() const { return coords_; }
  const std::map<std::string, double>& params() const { return params_; }

  const Expr& component(int a, int b) const { return components_[a * dim_ + b]; }

  /// Index of a coordinate name, or -1.
  int coord_index(std::string_view name) const;

  /// Evaluation environment binding coordinates to the point and parameters
  /// to their values.
  Env env_at(const Point& p) const;

  /// Copy with some parameter values replaced. Unknown names throw.
  MetricSpec with_params(const std::map<std::string, double>& overrides) const;

 private:
  int dim_;
  std::vector<std::string> coords_;
  std::map<std::string, double> params_;
  std::vector<Expr> components_;
};

/// Parses the line-oriented metric file format:
///
///   # comment
///   dim = 4
///   coords = t, r, theta, phi
///   param m = 1.0
///   g[0][0] = -(1 - 2*m/r)
///
/// Unspecified components default to 0. Both g[a][b] and g[b][a] may appear
/// if they are structurally equal after simplification. Throws ParseError
/// (with offset into `text`) for lexical problems and MetricError for
/// structural ones.
MetricSpec parse_metric_file(std::string_view text);

}  // namespace srgeo
