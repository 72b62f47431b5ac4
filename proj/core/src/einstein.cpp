#include "srgeo/einstein.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "srgeo/catalog.hpp"
#include "srgeo/errors.hpp"

namespace srgeo {

int levi_civita(int a, int b, int c, int d) {
  const int idx[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (idx[i] == idx[j]) return 0;
      if (idx[i] > idx[j]) sign = -sign;
    }
  }
  return sign;
}

Mat ricci_at(const ChristoffelFirst& chr, const Point& p, double tol) {
  const int n = chr.dim();
  CurvatureValue R = riemann_at(chr, p, tol);
  CoMetric co = cometric(eval_metric(chr.spec(), p), tol);
  Mat ric = Mat::Zero(n, n);
  for (int b = 0; b < n; ++b) {
    for (int c = 0; c < n; ++c) {
      double sum = 0.0;
      for (int a = 0; a < n; ++a)
        for (int d = 0; d < n; ++d) sum += co.gplus(a, d) * R.at(a, b, c, d);
      ric(b, c) = sum;
    }
  }
  return ric;
}

double scalar_at(const ChristoffelFirst& chr, const Point& p, double tol) {
  Mat ric = ricci_at(chr, p, tol);
  CoMetric co = cometric(eval_metric(chr.spec(), p), tol);
  return (co.gplus * ric).trace();
}

Mat einstein_at(const ChristoffelFirst& chr, const Point& p, double tol) {
  Mat g = eval_metric(chr.spec(), p);
  if (signature_of(g, tol).zero > 0)
    throw DegeneracyError("Einstein tensor requires a non-degenerate metric at the point");
  Mat ric = ricci_at(chr, p, tol);
  CoMetric co = cometric(g, tol);
  double s = (co.gplus * ric).trace();
  return ric - 0.5 * s * g;
}

EinsteinDensityValue einstein_density_at(const ChristoffelFirst& chr, const Point& p,
                                         double tol) {
  const int n = chr.dim();
  if (n != 4) throw Error("Einstein density requires a 4-dimensional metric");
  CurvatureValue R = riemann_at(chr, p, tol);
  Mat g = eval_metric(chr.spec(), p);

  EinsteinDensityValue out;
  out.upper = Mat::Zero(4, 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      double sum = 0.0;
      for (int k = 0; k < 4; ++k) {
        for (int s = 0; s < 4; ++s) {
          for (int t = 0; t < 4; ++t) {
            int eps1 = levi_civita(a, k, s, t);
            if (eps1 == 0) continue;
            for (int l = 0; l < 4; ++l) {
              if (g(k, l) == 0.0) continue;
              for (int pp = 0; pp < 4; ++pp) {
                for (int q = 0; q < 4; ++q) {
                  int eps2 = levi_civita(b, l, pp, q);
                  if (eps2 == 0) continue;
                  sum += g(k, l) * eps1 * eps2 * R.at(s, t, pp, q);
                }
              }
            }
          }
        }
      }
      out.upper(a, b) = sum;
    }
  }
  out.lower = g * out.upper * g;
  return out;
}

HodgeDualResult hodge_double_dual_at(const ChristoffelFirst& chr, const Point& p, double tol) {
  const int n = chr.dim();
  if (n != 4) throw Error("Hodge double dual requires a 4-dimensional metric");
  Mat g = eval_metric(chr.spec(), p);
  if (signature_of(g, tol).zero > 0)
    throw DegeneracyError("Hodge dual requires a non-degenerate metric at the point");
  double detg = g.determinant();
  if (-detg <= 0.0) throw Error("Hodge dual requires a Lorentzian metric (-det g > 0)");
  Mat ginv = g.inverse();
  CurvatureValue R = riemann_at(chr, p, tol);

  const double vol = std::sqrt(-detg);
  // eps_ab^{st} = eps_abkl g^{ks} g^{lt}, with eps_abkl = symbol * vol
  auto eps_mixed = [&](int a, int b, int s, int t) {
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) {
      for (int l = 0; l < 4; ++l) {
        int e = levi_civita(a, b, k, l);
        if (e != 0) sum += e * vol * ginv(k, s) * ginv(l, t);
      }
    }
    return sum;
  };

  HodgeDualResult out;
  out.double_dual.assign(256, 0.0);
  auto idx = [](int a, int b, int c, int d) {
    return static_cast<std::size_t>(((a * 4 + b) * 4 + c) * 4 + d);
  };
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        for (int d = 0; d < 4; ++d) {
          double sum = 0.0;
          for (int s = 0; s < 4; ++s)
            for (int t = 0; t < 4; ++t) {
              double e1 = eps_mixed(a, b, s, t);
              if (e1 == 0.0) continue;
              for (int pp = 0; pp < 4; ++pp)
                for (int q = 0; q < 4; ++q) sum += e1 * eps_mixed(c, d, pp, q) * R.at(s, t, pp, q);
            }
          out.double_dual[idx(a, b, c, d)] = sum;
        }
      }
    }
  }

  out.einstein_candidate = Mat::Zero(4, 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      double sum = 0.0;
      for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) sum += ginv(s, t) * out.double_dual[idx(a, s, b, t)];
      out.einstein_candidate(a, b) = sum;
    }
  }

  Mat gein = einstein_at(chr, p, tol);
  double scale = gein.cwiseAbs().maxCoeff();
  if (scale > 1e-12) {
    std::vector<double> ratios;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        if (std::abs(gein(a, b)) > 1e-6 * scale)
          ratios.push_back(out.einstein_candidate(a, b) / gein(a, b));
    if (!ratios.empty()) {
      std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
      out.ratio_to_einstein = ratios[ratios.size() / 2];
    }
  }
  return out;
}

Mat densitized_residual(const ChristoffelFirst& chr, const Point& p, double lambda,
                        const Mat& stress_energy, double kappa, double tol) {
  Mat g = eval_metric(chr.spec(), p);
  double detg = g.determinant();
  EinsteinDensityValue density = einstein_density_at(chr, p, tol);
  return density.lower / kEinsteinDensityFactor + lambda * detg * g -
         kappa * detg * stress_energy;
}

MetricSpec kerr_newman_regularized(double m, double a, double e) {
  return get_metric("kerr_newman_regularized", {{"m", m}, {"a", a}, {"e", e}});
}

}  // namespace srgeo
