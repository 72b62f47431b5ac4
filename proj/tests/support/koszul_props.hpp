#pragma once

#include <array>
#include <random>
#include <vector>

#include "srgeo/geometry.hpp"
#include "support/generators.hpp"

namespace testsupport {

/// Largest scaled deviation per Koszul-form property (1..8), measured over
/// random polynomial fields X, Y, Z and a random polynomial f at the given
/// points. Deviations are |lhs - rhs| / max(1, |lhs|, |rhs|).
///
/// 1 additivity and R-linearity in each slot
/// 2 K(fX,Y,Z) = f K(X,Y,Z)
/// 3 K(X,fY,Z) = f K(X,Y,Z) + X(f) <Y,Z>
/// 4 K(X,Y,fZ) = f K(X,Y,Z)
/// 5 K(X,Y,Z) + K(X,Z,Y) = X<Y,Z>
/// 6 K(X,Y,Z) - K(Y,X,Z) = <[X,Y],Z>
/// 7 K(X,Y,Z) + K(Z,Y,X) = (L_Y g)(Z,X)
/// 8 K(X,Y,Z) + K(Y,Z,X) = Y<Z,X> + <[X,Y],Z>
inline std::array<double, 8> koszul_property_violations(const srgeo::MetricSpec& spec,
                                                        const std::vector<srgeo::Point>& points,
                                                        std::mt19937& rng, int trials = 2) {
  using srgeo::Expr;
  using srgeo::VectorField;
  const int n = spec.dim();
  const auto& coords = spec.coords();

  std::array<double, 8> worst{};

  auto rand_field = [&] {
    VectorField v = VectorField::zero(n);
    for (int i = 0; i < n; ++i) v.comps[i] = random_polynomial(rng, coords);
    return v;
  };
  auto scale_field = [&](const Expr& f, const VectorField& v) {
    VectorField out = VectorField::zero(n);
    for (int i = 0; i < n; ++i) out.comps[i] = Expr::mul(f, v.comps[i]);
    return out;
  };
  auto add_fields = [&](const VectorField& a, const VectorField& b) {
    VectorField out = VectorField::zero(n);
    for (int i = 0; i < n; ++i) out.comps[i] = Expr::add(a.comps[i], b.comps[i]);
    return out;
  };

  // (L_Y g)_ab = Y^c d_c g_ab + g_cb d_a Y^c + g_ac d_b Y^c, contracted with
  // Z^a X^b. Assembled from components, independently of koszul_expression.
  auto lie_derivative_metric = [&](const VectorField& y, const VectorField& z,
                                   const VectorField& x) {
    Expr sum = Expr::constant(0.0);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        Expr entry = Expr::constant(0.0);
        for (int c = 0; c < n; ++c) {
          entry = Expr::add(entry,
                            Expr::mul(y.comps[c], srgeo::differentiate(spec.component(a, b),
                                                                       coords[c])));
          entry = Expr::add(entry, Expr::mul(spec.component(c, b),
                                             srgeo::differentiate(y.comps[c], coords[a])));
          entry = Expr::add(entry, Expr::mul(spec.component(a, c),
                                             srgeo::differentiate(y.comps[c], coords[b])));
        }
        sum = Expr::add(sum, Expr::mul(entry, Expr::mul(z.comps[a], x.comps[b])));
      }
    }
    return sum;
  };

  std::uniform_real_distribution<double> scalars(-2.0, 2.0);
  for (int trial = 0; trial < trials; ++trial) {
    VectorField X = rand_field(), Y = rand_field(), Z = rand_field();
    VectorField X2 = rand_field();
    Expr f = random_polynomial(rng, coords);
    double cr = scalars(rng);

    Expr k_xyz = srgeo::koszul_expression(spec, X, Y, Z);
    Expr k_x2yz = srgeo::koszul_expression(spec, X2, Y, Z);
    Expr k_sum = srgeo::koszul_expression(spec, add_fields(X, X2), Y, Z);
    auto scaled = [&](const VectorField& v) {
      VectorField out = VectorField::zero(n);
      for (int i = 0; i < n; ++i) out.comps[i] = Expr::mul(Expr::constant(cr), v.comps[i]);
      return out;
    };
    Expr k_cx = srgeo::koszul_expression(spec, scaled(X), Y, Z);
    Expr k_fx = srgeo::koszul_expression(spec, scale_field(f, X), Y, Z);
    Expr k_fy = srgeo::koszul_expression(spec, X, scale_field(f, Y), Z);
    Expr k_fz = srgeo::koszul_expression(spec, X, Y, scale_field(f, Z));
    Expr k_xzy = srgeo::koszul_expression(spec, X, Z, Y);
    Expr k_yxz = srgeo::koszul_expression(spec, Y, X, Z);
    Expr k_zyx = srgeo::koszul_expression(spec, Z, Y, X);
    Expr k_yzx = srgeo::koszul_expression(spec, Y, Z, X);

    Expr pair_yz = srgeo::pairing(spec, Y, Z);
    Expr pair_zx = srgeo::pairing(spec, Z, X);
    Expr x_pair_yz = srgeo::directional(coords, X, pair_yz);
    Expr y_pair_zx = srgeo::directional(coords, Y, pair_zx);
    Expr xf = srgeo::directional(coords, X, f);
    Expr bracket_xy_z = srgeo::pairing(spec, srgeo::lie_bracket(coords, X, Y), Z);
    Expr lie_y = lie_derivative_metric(Y, Z, X);

    auto record = [&](int prop, double lhs, double rhs) {
      double dev = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
      worst[prop - 1] = std::max(worst[prop - 1], dev);
    };

    for (const auto& p : points) {
      srgeo::Env env = spec.env_at(p);
      double k1 = srgeo::evaluate(k_xyz, env);
      double fv = srgeo::evaluate(f, env);
      record(1, srgeo::evaluate(k_sum, env), k1 + srgeo::evaluate(k_x2yz, env));
      record(1, srgeo::evaluate(k_cx, env), cr * k1);
      record(2, srgeo::evaluate(k_fx, env), fv * k1);
      record(3, srgeo::evaluate(k_fy, env),
             fv * k1 + srgeo::evaluate(xf, env) * srgeo::evaluate(pair_yz, env));
      record(4, srgeo::evaluate(k_fz, env), fv * k1);
      record(5, k1 + srgeo::evaluate(k_xzy, env), srgeo::evaluate(x_pair_yz, env));
      record(6, k1 - srgeo::evaluate(k_yxz, env), srgeo::evaluate(bracket_xy_z, env));
      record(7, k1 + srgeo::evaluate(k_zyx, env), srgeo::evaluate(lie_y, env));
      record(8, k1 + srgeo::evaluate(k_yzx, env),
             srgeo::evaluate(y_pair_zx, env) + srgeo::evaluate(bracket_xy_z, env));
    }
  }
  return worst;
}

}  // namespace testsupport
