#include "srgeo/geometry.hpp"

#include <cmath>

#include "srgeo/errors.hpp"

namespace srgeo {

VectorField VectorField::coordinate(int dim, int a) {
  VectorField f;
  f.comps.assign(dim, Expr::constant(0.0));
  f.comps[a] = Expr::constant(1.0);
  return f;
}

VectorField VectorField::zero(int dim) {
  VectorField f;
  f.comps.assign(dim, Expr::constant(0.0));
  return f;
}

Expr pairing(const MetricSpec& spec, const VectorField& X, const VectorField& Y) {
  Expr sum = Expr::constant(0.0);
  for (int a = 0; a < spec.dim(); ++a) {
    for (int b = 0; b < spec.dim(); ++b) {
      sum = Expr::add(sum, Expr::mul(spec.component(a, b), Expr::mul(X.comps[a], Y.comps[b])));
    }
  }
  return sum;
}

Expr directional(const std::vector<std::string>& coords, const VectorField& X, const Expr& f) {
  Expr sum = Expr::constant(0.0);
  for (std::size_t a = 0; a < coords.size(); ++a) {
    sum = Expr::add(sum, Expr::mul(X.comps[a], differentiate(f, coords[a])));
  }
  return sum;
}

VectorField lie_bracket(const std::vector<std::string>& coords, const VectorField& X,
                        const VectorField& Y) {
  const int n = static_cast<int>(coords.size());
  VectorField out = VectorField::zero(n);
  for (int c = 0; c < n; ++c) {
    Expr sum = Expr::constant(0.0);
    for (int a = 0; a < n; ++a) {
      sum = Expr::add(sum, Expr::sub(Expr::mul(X.comps[a], differentiate(Y.comps[c], coords[a])),
                                     Expr::mul(Y.comps[a], differentiate(X.comps[c], coords[a]))));
    }
    out.comps[c] = sum;
  }
  return out;
}

ChristoffelFirst::ChristoffelFirst(MetricSpec spec) : spec_(std::move(spec)) {
  const int n = spec_.dim();
  const auto& coords = spec_.coords();

  // d_a g_bc, simplified once and shared by the Gamma entries.
  std::vector<Expr> dg(static_cast<std::size_t>(n) * n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = b; c < n; ++c) {
        Expr d = simplify(differentiate(spec_.component(b, c), coords[a]));
        dg[index(a, b, c)] = d;
        dg[index(a, c, b)] = d;
      }
    }
  }

  const Expr half = Expr::constant(0.5);
  gamma_.resize(dg.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        Expr sum = Expr::sub(Expr::add(dg[index(a, b, c)], dg[index(b, c, a)]),
                             dg[index(c, a, b)]);
        gamma_[index(a, b, c)] = simplify(Expr::mul(half, sum));
      }
    }
  }

  partials_.resize(dg.size() * n);
  for (std::size_t i = 0; i < gamma_.size(); ++i) {
    for (int d = 0; d < n; ++d) {
      partials_[i * n + d] = simplify(differentiate(gamma_[i], coords[d]));
    }
  }
}

Vec ChristoffelFirst::covector(int a, int b, const Env& env) const {
  const int n = spec_.dim();
  Vec v(n);
  for (int c = 0; c < n; ++c) v[c] = evaluate(at(a, b, c), env);
  return v;
}

std::vector<double> ChristoffelFirst::values(const Env& env) const {
  std::vector<double> out(gamma_.size());
  for (std::size_t i = 0; i < gamma_.size(); ++i) out[i] = evaluate(gamma_[i], env);
  return out;
}

Expr koszul_expression(const MetricSpec& spec, const VectorField& X, const VectorField& Y,
                       const VectorField& Z) {
  const auto& coords = spec.coords();
  Expr term = Expr::add(
      Expr::sub(Expr::add(directional(coords, X, pairing(spec, Y, Z)),
                          directional(coords, Y, pairing(spec, Z, X))),
                directional(coords, Z, pairing(spec, X, Y))),
      Expr::add(Expr::sub(pairing(spec, Y, lie_bracket(coords, Z, X)),
                          pairing(spec, X, lie_bracket(coords, Y, Z))),
                pairing(spec, Z, lie_bracket(coords, X, Y))));
  return simplify(Expr::mul(Expr::constant(0.5), term));
}

double koszul_general(const MetricSpec& spec, const VectorField& X, const VectorField& Y,
                      const VectorField& Z, const Point& p) {
  return evaluate(koszul_expression(spec, X, Y, Z), spec.env_at(p));
}

Vec lower_cov_derivative(const MetricSpec& spec, const VectorField& X, const VectorField& Y,
                         const Point& p) {
  const int n = spec.dim();
  Env env = spec.env_at(p);
  Vec out(n);
  for (int b = 0; b < n; ++b) {
    out[b] = evaluate(koszul_expression(spec, X, Y, VectorField::coordinate(n, b)), env);
  }
  return out;
}

bool check_radical_stationary(const ChristoffelFirst& chr, const Point& p, double tol) {
  const int n = chr.dim();
  Env env = chr.spec().env_at(p);
  Mat g = eval_metric(chr.spec(), p);
  CoMetric co = cometric(g, tol);
  if (co.radical.cols() == 0) return true;  // non-degenerate: every covector qualifies
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      Vec gamma = chr.covector(a, b, env);
      double bound = tol * (1.0 + gamma.cwiseAbs().maxCoeff());
      if ((co.radical.transpose() * gamma).cwiseAbs().maxCoeff() > bound) return false;
    }
  }
  return true;
}

OneFormDerivative cov_derivative_oneform(const ChristoffelFirst& chr, const VectorField& X,
                                         const VectorField& omega, const Point& p, double tol) {
  const int n = chr.dim();
  const MetricSpec& spec = chr.spec();
  Env env = spec.env_at(p);

  if (!check_radical_stationary(chr, p, tol))
    throw StationarityError("metric is not radical-stationary at the evaluation point");

  Mat g = eval_metric(spec, p);
  CoMetric co = cometric(g, tol);

  Vec omega_val(n);
  for (int b = 0; b < n; ++b) omega_val[b] = evaluate(omega.comps[b], env);
  if (co.radical.cols() > 0) {
    double bound = tol * (1.0 + omega_val.cwiseAbs().maxCoeff());
    if ((co.radical.transpose() * omega_val).cwiseAbs().maxCoeff() > bound)
      throw AnnihilatorError("1-form is not a radical annihilator at the evaluation point");
  }

  Vec x_val(n);
  for (int a = 0; a < n; ++a) x_val[a] = evaluate(X.comps[a], env);

  OneFormDerivative out;
  out.degenerate_point = co.radical.cols() > 0;
  out.value.resize(n);
  for (int b = 0; b < n; ++b) {
    // X(omega_b)
    double lead = 0.0;
    for (int a = 0; a < n; ++a) {
      lead += x_val[a] * evaluate(differentiate(omega.comps[b], spec.coords()[a]), env);
    }
    // K(X, d_b, .) = X^a Gamma_ab. by f-linearity in the first slot
    Vec kcov = Vec::Zero(n);
    for (int a = 0; a < n; ++a) {
      if (x_val[a] != 0.0) kcov += x_val[a] * chr.covector(a, b, env);
    }
    out.value[b] = lead - cocontract(kcov, omega_val, co);
  }
  return out;
}

CurvatureValue riemann_at(const ChristoffelFirst& chr, const Point& p, double tol) {
  const int n = chr.dim();
  const MetricSpec& spec = chr.spec();
  Env env = spec.env_at(p);

  if (!check_radical_stationary(chr, p, tol))
    throw StationarityError("metric is not radical-stationary at the evaluation point");

  Mat g = eval_metric(spec, p);
  CoMetric co = cometric(g, tol);

  std::vector<Vec> gam(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      Vec v = chr.covector(a, b, env);
      gam[a * n + b] = v;
      gam[b * n + a] = v;
    }
  }
  // << Gamma_ab. , Gamma_cd. >> for all pairs
  std::vector<double> prod(static_cast<std::size_t>(n) * n * n * n);
  auto pidx = [n](int a, int b, int c, int d) {
    return ((static_cast<std::size_t>(a) * n + b) * n + c) * n + d;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          prod[pidx(a, b, c, d)] = cocontract(gam[a * n + b], gam[c * n + d], co);

  CurvatureValue cv;
  cv.dim = n;
  cv.point = p;
  cv.tol = tol;
  cv.r.resize(prod.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          double val = evaluate(chr.partial(a, b, c, d), env) -
                       evaluate(chr.partial(b, a, c, d), env) +
                       prod[pidx(a, c, b, d)] - prod[pidx(a, d, b, c)];
          cv.r[pidx(a, b, c, d)] = val;
        }
      }
    }
  }
  return cv;
}

namespace {

double spread(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  double mn = v[lo], mx = v[lo];
  for (std::size_t i = lo; i < hi; ++i) {
    mn = std::min(mn, v[i]);
    mx = std::max(mx, v[i]);
  }
  return mx - mn;
}

bool trace_converged(const std::vector<double>& v, double cauchy_tol) {
  const std::size_t n = v.size();
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  double scale = 0.0;
  for (std::size_t i = n - 5; i < n; ++i) scale = std::max(scale, std::abs(v[i]));
  double tail = spread(v, n - 5, n);
  if (tail <= cauchy_tol * (1.0 + scale)) return true;
  // geometric decay of the spreads also counts as Cauchy
  std::size_t lo = n >= 10 ? n - 10 : 0;
  double prev = spread(v, lo, n - 5);
  return tail <= 0.5 * prev;
}

bool trace_bounded(const std::vector<double>& v) {
  const std::size_t n = v.size();
  double head = 0.0;
  for (std::size_t i = 0; i < n - 5; ++i) head = std::max(head, std::abs(v[i]));
  double tail = 0.0;
  for (std::size_t i = n - 5; i < n; ++i) {
    if (!std::isfinite(v[i])) return false;
    tail = std::max(tail, std::abs(v[i]));
  }
  return tail <= std::max(1.0, 2.0 * head);
}

}  // namespace

SemiregularReport check_semiregular(const ChristoffelFirst& chr, const std::vector<Point>& path,
                                    double tol, double cauchy_tol) {
  if (path.size() < 8) throw Error("path too short: need at least 8 points");
  const int n = chr.dim();
  const MetricSpec& spec = chr.spec();

  SemiregularReport rep;
  rep.tol = tol;
  rep.cauchy_tol = cauchy_tol;

  // Pointwise data along the path.
  std::vector<CoMetric> cos;
  std::vector<std::vector<Vec>> gams;
  std::vector<Env> envs;
  cos.reserve(path.size());
  for (const Point& p : path) {
    Env env = spec.env_at(p);
    cos.push_back(cometric(eval_metric(spec, p), tol));
    std::vector<Vec> gam(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        Vec v = chr.covector(a, b, env);
        gam[a * n + b] = v;
        gam[b * n + a] = v;
      }
    }
    gams.push_back(std::move(gam));
    envs.push_back(std::move(env));
  }

  // Unordered pairs {ab} x {cd} with a<=b, c<=d.
  std::vector<std::array<int, 2>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) pairs.push_back({a, b});
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i; j < pairs.size(); ++j) {
      SemiregularReport::ProductTrace tr;
      tr.ab = pairs[i];
      tr.cd = pairs[j];
      tr.values.reserve(path.size());
      for (std::size_t k = 0; k < path.size(); ++k) {
        const auto& gam = gams[k];
        tr.values.push_back(
            cocontract(gam[tr.ab[0] * n + tr.ab[1]], gam[tr.cd[0] * n + tr.cd[1]], cos[k]));
      }
      tr.converged = trace_converged(tr.values, cauchy_tol);
      rep.all_products_converged = rep.all_products_converged && tr.converged;
      rep.products.push_back(std::move(tr));
    }
  }

  // Diagonal-criterion ratios d_a alpha_b^2 / alpha_c for c in {a,b}.
  rep.diagonal = true;
  for (int a = 0; a < n && rep.diagonal; ++a)
    for (int b = 0; b < n && rep.diagonal; ++b)
      if (a != b && !spec.component(a, b).is_constant(0.0)) rep.diagonal = false;

  if (rep.diagonal) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        Expr dgbb = simplify(differentiate(spec.component(b, b), spec.coords()[a]));
        if (dgbb.is_constant(0.0)) continue;  // trivially satisfied with f = 0
        std::array<int, 2> cs = {a, b};
        int ncs = a == b ? 1 : 2;
        for (int ci = 0; ci < ncs; ++ci) {
          int c = cs[ci];
          SemiregularReport::RatioTrace tr;
          tr.a = a;
          tr.b = b;
          tr.c = c;
          for (std::size_t k = 0; k < path.size(); ++k) {
            double num = evaluate(dgbb, envs[k]);
            double alpha = std::sqrt(std::abs(evaluate(spec.component(c, c), envs[k])));
            tr.values.push_back(alpha == 0.0 ? (num == 0.0 ? 0.0 : INFINITY) : num / alpha);
          }
          tr.bounded = trace_bounded(tr.values);
          rep.ratios.push_back(std::move(tr));
        }
      }
    }
    // "for all c" / "for some c" readings, aggregated over (a,b) pairs.
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        bool any = false, all = true, present = false;
        for (const auto& tr : rep.ratios) {
          if (tr.a == a && tr.b == b) {
            present = true;
            any = any || tr.bounded;
            all = all && tr.bounded;
          }
        }
        if (present) {
          rep.ratios_bounded_for_all_c = rep.ratios_bounded_for_all_c && all;
          rep.ratios_bounded_for_some_c = rep.ratios_bounded_for_some_c && any;
        }
      }
    }
  }
  return rep;
}

}  // namespace srgeo
