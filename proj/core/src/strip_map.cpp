#include "srgeo/strip_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "srgeo/quadrature.hpp"

namespace srgeo {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kPrevertexEps = 1e-12;
constexpr double kAvoidance = 1e-3;  // minimum path distance to off-path prevertices

int prevertex_near(Complex z, const StripConfig& cfg) {
  for (int k = 0; k < cfg.count(); ++k) {
    Complex zk = cfg.prevertex(k);
    if (std::abs(z - zk) <= kPrevertexEps * (1.0 + std::abs(zk))) return k;
  }
  return -1;
}

// log sinh / log cosh on the branch that is continuous on the strip, stable
// for large |Re u| where sinh itself overflows.
Complex log_sinh(Complex u) {
  if (u.real() > 20.0) return u + std::log(0.5 * (1.0 - std::exp(-2.0 * u)));
  if (u.real() < -20.0)
    return -u + Complex(0.0, std::numbers::pi) + std::log(0.5 * (1.0 - std::exp(2.0 * u)));
  return std::log(std::sinh(u));
}

Complex log_cosh(Complex u) {
  if (u.real() > 20.0) return u + std::log(0.5 * (1.0 + std::exp(-2.0 * u)));
  if (u.real() < -20.0) return -u + std::log(0.5 * (1.0 + std::exp(2.0 * u)));
  return std::log(std::cosh(u));
}

// log of the k-th sinh factor. Lower prevertices keep sinh(pi/2 (zeta - x))
// in Im >= 0; upper ones are rewritten as -i cosh(pi/2 (zeta - x)) with cosh
// in Re >= 0. Either way the principal log never crosses its cut along a
// path inside the strip, so the factor branch is single-valued.
Complex log_factor(Complex zeta, const StripConfig& cfg, int k) {
  if (cfg.is_lower(k)) return log_sinh(kHalfPi * (zeta - cfg.lower[k]));
  double x = cfg.upper[k - cfg.lower.size()];
  return log_cosh(kHalfPi * (zeta - x)) - Complex(0.0, kHalfPi);
}

Complex log_integrand(Complex zeta, const StripConfig& cfg) {
  Complex s = kHalfPi * (cfg.alpha_minus - cfg.alpha_plus) * zeta;
  for (int k = 0; k < cfg.count(); ++k) {
    double ak = cfg.angle(k);
    if (ak == 1.0) continue;  // factor^0
    s += (ak - 1.0) * log_factor(zeta, cfg, k);
  }
  return s;
}

Complex integrate_plain(Complex a, Complex b, const StripConfig& cfg, double tol) {
  Complex d = b - a;
  double len = std::abs(d);
  return d * integrate_gk(
                 [&](double t) { return std::exp(log_integrand(a + t * d, cfg)); }, 0.0, 1.0,
                 tol / std::max(len, 1e-30));
}

// Segment ending exactly on the prevertex b with angle alpha: substitute
// zeta = b + (a-b) tau^{1/alpha}, which turns the endpoint power law
// (exponent alpha-1 > -1) into a bounded integrand. The jacobian is folded
// into log space to dodge overflow near tau = 0.
Complex integrate_to_prevertex(Complex a, Complex b, double alpha, const StripConfig& cfg,
                               double tol) {
  Complex d = b - a;
  double len = std::abs(d);
  double inv = 1.0 / alpha;
  return d * integrate_gk(
                 [&](double t) {
                   Complex zeta = b + (a - b) * std::pow(t, inv);
                   Complex lg = log_integrand(zeta, cfg) + (inv - 1.0) * std::log(t) -
                                std::log(alpha);
                   return std::exp(lg);
                 },
                 0.0, 1.0, tol / std::max(len, 1e-30));
}

Complex integrate_segment(Complex a, Complex b, const StripConfig& cfg, double tol) {
  if (a == b) return 0.0;
  int ka = prevertex_near(a, cfg);
  int kb = prevertex_near(b, cfg);
  if (ka >= 0 && kb >= 0) {
    Complex mid = 0.5 * (a + b);
    return integrate_segment(a, mid, cfg, 0.5 * tol) +
           integrate_segment(mid, b, cfg, 0.5 * tol);
  }
  if (kb >= 0 && cfg.angle(kb) != 1.0)
    return integrate_to_prevertex(a, b, cfg.angle(kb), cfg, tol);
  if (ka >= 0 && cfg.angle(ka) != 1.0)
    return -integrate_to_prevertex(b, a, cfg.angle(ka), cfg, tol);
  return integrate_plain(a, b, cfg, tol);
}

Complex integrate_polyline(const std::vector<Complex>& pts, const StripConfig& cfg,
                           double tol) {
  Complex sum = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += std::abs(pts[i + 1] - pts[i]);
  if (total == 0.0) return 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double share = std::abs(pts[i + 1] - pts[i]) / total;
    if (share > 0.0) sum += integrate_segment(pts[i], pts[i + 1], cfg, tol * share);
  }
  return sum;
}

// Base -> midline -> above the target -> target, dodging prevertices that
// sit within kAvoidance of the final descent.
std::vector<Complex> default_path(Complex z0, Complex z, const StripConfig& cfg) {
  std::vector<Complex> pts;
  auto push = [&](Complex w) {
    if (pts.empty() || pts.back() != w) pts.push_back(w);
  };
  push(z0);
  push(Complex(z0.real(), 0.5));

  double x = z.real();
  double descent_x = x;
  if (prevertex_near(z, cfg) < 0) {
    double side = z.imag() < 0.5 ? 0.0 : 1.0;
    if (std::abs(z.imag() - side) < kAvoidance) {
      for (int k = 0; k < cfg.count(); ++k) {
        Complex zk = cfg.prevertex(k);
        if (zk.imag() != side) continue;
        if (std::abs(zk.real() - x) < kAvoidance) {
          descent_x = zk.real() + (x >= zk.real() ? kAvoidance : -kAvoidance);
          break;
        }
      }
    }
  }
  push(Complex(descent_x, 0.5));
  push(Complex(descent_x, z.imag()));
  push(z);
  return pts;
}

}  // namespace

std::vector<std::string> validate_config(const StripConfig& cfg) {
  std::vector<std::string> findings;
  const int n = cfg.count();

  if (static_cast<int>(cfg.angles.size()) != n)
    findings.push_back("angle count does not match the prevertex count");

  for (std::size_t i = 0; i + 1 < cfg.lower.size(); ++i) {
    if (!(cfg.lower[i] < cfg.lower[i + 1]))
      findings.push_back("lower prevertices not strictly increasing");
  }
  for (std::size_t i = 0; i < cfg.lower.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.lower.size(); ++j)
      if (std::abs(cfg.lower[i] - cfg.lower[j]) < kPrevertexEps)
        findings.push_back("coincident prevertices on the lower boundary");
  for (std::size_t i = 0; i < cfg.upper.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.upper.size(); ++j)
      if (std::abs(cfg.upper[i] - cfg.upper[j]) < kPrevertexEps)
        findings.push_back("coincident prevertices on the upper boundary");

  for (std::size_t i = 0; i < cfg.angles.size(); ++i) {
    if (!(cfg.angles[i] > 0.0)) findings.push_back("angles must be positive");
  }
  if (cfg.alpha_minus < 0.0 || cfg.alpha_plus < 0.0)
    findings.push_back("end angles must be non-negative");

  if (static_cast<int>(cfg.angles.size()) == n) {
    double sum = cfg.alpha_minus + cfg.alpha_plus;
    for (double a : cfg.angles) sum += a;
    // n_total - 2 with n_total counting the two strip ends
    if (std::abs(sum - n) > 1e-12)
      findings.push_back("angle sum violates the polygon condition (sum != n_total - 2)");
  }

  if (!(cfg.base.imag() > 0.0 && cfg.base.imag() < 1.0))
    findings.push_back("base point not interior to the strip");
  if (prevertex_near(cfg.base, cfg) >= 0)
    findings.push_back("base point coincides with a prevertex");

  return findings;
}

Complex sc_integrand(Complex zeta, const StripConfig& cfg) {
  int k = prevertex_near(zeta, cfg);
  if (k >= 0 && cfg.angle(k) < 1.0)
    throw Error("sc integrand has a pole at a prevertex with angle < pi");
  return std::exp(log_integrand(zeta, cfg));
}

Complex sc_map(Complex z, const StripConfig& cfg, double abs_tol) {
  std::vector<Complex> pts = default_path(cfg.base, z, cfg);
  return cfg.affine_a + cfg.affine_c * integrate_polyline(pts, cfg, abs_tol);
}

Complex sc_map_via(Complex z, const StripConfig& cfg, std::span<const Complex> waypoints,
                   double abs_tol) {
  std::vector<Complex> pts;
  pts.push_back(cfg.base);
  for (Complex w : waypoints) {
    if (pts.back() != w) pts.push_back(w);
  }
  if (pts.back() != z) pts.push_back(z);
  return cfg.affine_a + cfg.affine_c * integrate_polyline(pts, cfg, abs_tol);
}

VertexImages polygon_vertices(const StripConfig& cfg, double abs_tol) {
  VertexImages out;
  for (int k = 0; k < cfg.count(); ++k)
    out.finite.push_back(sc_map(cfg.prevertex(k), cfg, abs_tol));

  auto end_limit = [&](double dir) -> std::optional<Complex> {
    double x = 4.0;
    Complex prev = sc_map(Complex(dir * x, 0.5), cfg, abs_tol);
    double prev_step = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 8; ++it) {
      x *= 2.0;
      Complex cur = sc_map(Complex(dir * x, 0.5), cfg, abs_tol);
      double step = std::abs(cur - prev);
      if (!std::isfinite(step)) return std::nullopt;
      if (step < 1e-7) return cur;
      if (step >= prev_step) return std::nullopt;  // not settling
      prev = cur;
      prev_step = step;
    }
    return std::nullopt;
  };
  out.left_end = end_limit(-1.0);
  out.right_end = end_limit(1.0);
  return out;
}

namespace {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Incrementally computed image of one horizontal line segment set.
Polyline trace_line(const StripConfig& cfg, Polyline::Kind kind, std::string label,
                    double level, double x0, double x1, int samples, double abs_tol) {
  Polyline pl;
  pl.kind = kind;
  pl.label = std::move(label);
  pl.level = level;
  pl.points.reserve(samples);
  Complex z_prev(x0, level);
  Complex f = sc_map(z_prev, cfg, abs_tol);
  pl.points.push_back(f);
  for (int i = 1; i < samples; ++i) {
    Complex z(x0 + (x1 - x0) * i / (samples - 1), level);
    f += cfg.affine_c * integrate_segment(z_prev, z, cfg, abs_tol);
    pl.points.push_back(f);
    z_prev = z;
  }
  return pl;
}

}  // namespace

PolylineSet foliation(const StripConfig& cfg, int leaves, std::pair<double, double> x_range,
                      int samples, double abs_tol) {
  if (leaves < 2) throw Error("foliation needs at least 2 leaves");
  if (samples < 16) throw Error("foliation needs at least 16 samples per leaf");
  const auto [x_lo, x_hi] = x_range;
  if (!(x_lo < x_hi)) throw Error("empty x range");

  PolylineSet ps;
  for (int j = 1; j <= leaves; ++j) {
    double c = static_cast<double>(j) / (leaves + 1);
    ps.items.push_back(
        trace_line(cfg, Polyline::Kind::leaf, fmt_g(c), c, x_lo, x_hi, samples, abs_tol));
  }

  // Boundary images, each side split at its prevertices.
  for (double level : {0.0, 1.0}) {
    std::vector<double> cuts = {x_lo, x_hi};
    const auto& pv = level == 0.0 ? cfg.lower : cfg.upper;
    for (double x : pv) {
      if (x > x_lo && x < x_hi) cuts.push_back(x);
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      double u = cuts[i], v = cuts[i + 1];
      if (v - u < kPrevertexEps) continue;
      int n = std::max(2, static_cast<int>(std::lround((samples - 1) * (v - u) / (x_hi - x_lo))) + 1);
      ps.items.push_back(
          trace_line(cfg, Polyline::Kind::boundary, "boundary", level, u, v, n, abs_tol));
    }
  }

  VertexImages vx = polygon_vertices(cfg, abs_tol);
  for (Complex v : vx.finite) {
    Polyline pl;
    pl.kind = Polyline::Kind::vertex;
    pl.label = "vertex";
    pl.points.push_back(v);
    ps.items.push_back(std::move(pl));
  }
  for (const auto& end : {vx.left_end, vx.right_end}) {
    if (end) {
      Polyline pl;
      pl.kind = Polyline::Kind::vertex;
      pl.label = "vertex";
      pl.points.push_back(*end);
      ps.items.push_back(std::move(pl));
    }
  }
  return ps;
}

StripConfig preset(const std::string& name, double a, double b) {
  auto positive = [&](double v, const char* what) {
    if (!(v > 0.0)) throw Error(std::string("preset parameter ") + what + " must be positive");
  };
  StripConfig cfg;
  cfg.alpha_minus = 0.5;
  cfg.alpha_plus = 0.5;
  if (name == "hexagon") {
    positive(a, "a");
    cfg.lower = {-a, a};
    cfg.upper = {a, -a};
    cfg.angles = {0.75, 0.75, 0.75, 0.75};
  } else if (name == "threeoo3s") {
    positive(a, "a");
    positive(b, "b");
    if (!(b < a)) throw Error("preset threeoo3s needs 0 < b < a");
    cfg.lower = {-a, 0.0, a};
    cfg.upper = {b, -b};
    cfg.angles = {0.5, 1.5, 0.5, 0.75, 0.75};
  } else if (name == "diamond") {
    cfg.lower = {0.0};
    cfg.upper = {0.0};
    cfg.angles = {0.5, 0.5};
  } else if (name == "rn_kerr") {
    positive(a, "a");
    cfg.lower = {-a, 0.0, a};
    cfg.upper = {0.0};
    cfg.angles = {0.5, 1.5, 0.5, 0.5};
  } else if (name == "superman") {
    positive(a, "a");
    cfg.lower = {0.0};
    cfg.upper = {a, -a};
    cfg.angles = {0.5, 0.75, 0.75};
  } else {
    throw Error("unknown preset '" + name + "'");
  }
  return cfg;
}

std::vector<std::string> preset_names() {
  return {"hexagon", "threeoo3s", "diamond", "rn_kerr", "superman"};
}

StripConfig mirrored(const StripConfig& cfg) {
  StripConfig m;
  const std::size_t nl = cfg.lower.size();
  m.lower.assign(cfg.lower.rbegin(), cfg.lower.rend());
  for (double& x : m.lower) x = -x;
  m.upper.assign(cfg.upper.rbegin(), cfg.upper.rend());
  for (double& x : m.upper) x = -x;
  m.angles.resize(cfg.angles.size());
  for (std::size_t i = 0; i < nl; ++i) m.angles[i] = cfg.angles[nl - 1 - i];
  for (std::size_t i = 0; i < cfg.upper.size(); ++i)
    m.angles[nl + i] = cfg.angles[nl + cfg.upper.size() - 1 - i];
  m.alpha_minus = cfg.alpha_plus;
  m.alpha_plus = cfg.alpha_minus;
  m.base = Complex(-cfg.base.real(), cfg.base.imag());
  m.affine_a = -std::conj(cfg.affine_a);
  m.affine_c = std::conj(cfg.affine_c);
  return m;
}

namespace {

struct Bounds {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool any = false;

  void include(Complex p) {
    double x = p.real(), y = -p.imag();  // SVG y grows downward
    if (!any) {
      xmin = xmax = x;
      ymin = ymax = y;
      any = true;
    } else {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
};

std::string fmt_svg(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string render_svg(const PolylineSet& ps) {
  Bounds bb;
  for (const auto& pl : ps.items)
    for (Complex p : pl.points) bb.include(p);
  double w = bb.xmax - bb.xmin, h = bb.ymax - bb.ymin;
  double margin = 0.05 * std::max({w, h, 1e-9});
  double diag = std::hypot(w + 2 * margin, h + 2 * margin);

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt_svg(bb.xmin - margin)
     << " " << fmt_svg(bb.ymin - margin) << " " << fmt_svg(w + 2 * margin) << " "
     << fmt_svg(h + 2 * margin) << "\">\n";
  os << "<g fill=\"none\" stroke-linecap=\"round\" stroke-linejoin=\"round\">\n";
  for (const auto& pl : ps.items) {
    if (pl.points.empty()) continue;
    if (pl.kind == Polyline::Kind::vertex) {
      for (Complex p : pl.points) {
        os << "<circle cx=\"" << fmt_svg(p.real()) << "\" cy=\"" << fmt_svg(-p.imag())
           << "\" r=\"" << fmt_svg(0.008 * diag) << "\" fill=\"#1a1a1a\" stroke=\"none\"/>\n";
      }
      continue;
    }
    const char* stroke = pl.kind == Polyline::Kind::leaf ? "#2a7ab0" : "#1a1a1a";
    double width = (pl.kind == Polyline::Kind::leaf ? 0.0030 : 0.0060) * diag;
    os << "<path stroke=\"" << stroke << "\" stroke-width=\"" << fmt_svg(width) << "\" d=\"";
    for (std::size_t i = 0; i < pl.points.size(); ++i) {
      os << (i == 0 ? "M" : " L") << fmt_svg(pl.points[i].real()) << " "
         << fmt_svg(-pl.points[i].imag());
    }
    os << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string render_csv(const PolylineSet& ps) {
  std::ostringstream os;
  os << "label,index,re,im\n";
  for (const auto& pl : ps.items) {
    for (std::size_t i = 0; i < pl.points.size(); ++i) {
      os << pl.label << "," << i << "," << fmt_g(pl.points[i].real()) << ","
         << fmt_g(pl.points[i].imag()) << "\n";
    }
  }
  return os.str();
}

}  // namespace

std::string render(const PolylineSet& ps, RenderFormat format) {
  return format == RenderFormat::svg ? render_svg(ps) : render_csv(ps);
}

}  // namespace srgeo
