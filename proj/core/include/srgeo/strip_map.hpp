#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srgeo/errors.hpp"

namespace srgeo {

using Complex = std::complex<double>;

/// Schwarz-Christoffel data for the strip map
///
///   f(z) = A + C Int_{z0}^{z} exp[pi/2 (alpha- - alpha+) zeta]
///            prod_k [sinh(pi/2 (zeta - z_k))]^{alpha_k - 1} dzeta,
///
/// with prevertices z_k on the strip boundary Im(z) in {0,1} and angles
/// alpha_k in units of pi. The two strip ends at Re -> -/+ infinity are the
/// remaining polygon vertices, with angles alpha_minus / alpha_plus. The
/// default-constructed config is the trivial identity-like map (no finite
/// prevertices, zero end angles).
struct StripConfig {
  std::vector<double> lower;  // prevertices on Im = 0, strictly increasing
  std::vector<double> upper;  // prevertices on Im = 1, boundary traversal order
  std::vector<double> angles; // pi-multiples, lower entries then upper entries
  double alpha_minus = 0.0;
  double alpha_plus = 0.0;
  Complex affine_a{0.0, 0.0};  // A
  Complex affine_c{1.0, 0.0};  // C
  Complex base{0.0, 0.5};      // z0, interior integration base point

  int count() const { return static_cast<int>(lower.size() + upper.size()); }
  bool is_lower(int k) const { return k < static_cast<int>(lower.size()); }
  Complex prevertex(int k) const {
    return is_lower(k) ? Complex(lower[k], 0.0)
                       : Complex(upper[k - lower.size()], 1.0);
  }
  double angle(int k) const { return angles[k]; }
};

/// Checks the config invariants (prevertex ordering and distinctness, angle
/// count and positivity, the angle sum n_total - 2, base point placement).
/// Returns findings as text; an empty list means valid.
std::vector<std::string> validate_config(const StripConfig& cfg);

/// The integrand of the strip map at a point of the closed strip. Each
/// sinh factor uses a fixed analytic branch continuous on the strip (lower
/// prevertices map it into Im >= 0; upper ones are rewritten through cosh,
/// which keeps Re >= 0), so values never jump across a cut along any path
/// inside the strip. Throws Error at a prevertex with angle < 1.
Complex sc_integrand(Complex zeta, const StripConfig& cfg);

/// f(z), integrating from cfg.base along a polyline through the strip
/// midline. A prevertex endpoint with angle alpha is handled by the
/// substitution u = (zeta - z_k)^alpha, which removes the integrable
/// endpoint singularity. Adaptive quadrature to abs_tol.
Complex sc_map(Complex z, const StripConfig& cfg, double abs_tol = 1e-9);

/// f(z) along an explicit waypoint polyline (base -> w_0 -> ... -> z).
Complex sc_map_via(Complex z, const StripConfig& cfg, std::span<const Complex> waypoints,
                   double abs_tol = 1e-9);

struct VertexImages {
  std::vector<Complex> finite;       // images of the finite prevertices
  std::optional<Complex> left_end;   // limit of f(-X + i/2), if it converges
  std::optional<Complex> right_end;  // limit of f(+X + i/2)
};

/// Images of all finite prevertices plus the two end limits, each end
/// reported as non-convergent (nullopt) when f(+-X + i/2) does not settle
/// below 1e-7 between doublings of X.
VertexImages polygon_vertices(const StripConfig& cfg, double abs_tol = 1e-9);

struct Polyline {
  enum class Kind { leaf, boundary, vertex };
  Kind kind;
  std::string label;
  double level = 0.0;  // Im(z) of the source line, for leaves and boundary
  std::vector<Complex> points;
};

struct PolylineSet {
  std::vector<Polyline> items;
};

/// Foliation by the images of the level curves Im(z) = c for `leaves`
/// uniformly spaced c in (0,1), sampled over x_range, plus the boundary
/// images (split at prevertices) and vertex markers.
PolylineSet foliation(const StripConfig& cfg, int leaves, std::pair<double, double> x_range,
                      int samples, double abs_tol = 1e-9);

/// Built-in Penrose-diagram presets. `a` (and `b` for threeoo3s, with
/// 0 < b < a) position the finite prevertices; angles are fixed per preset.
/// The angle tuples are read positionally against the prevertex tuples: the
/// -/+ infinity entries carry alpha_minus / alpha_plus.
///   hexagon    (-inf, -a, a, +inf, a+i, -a+i),  (1/2, 3/4, 3/4, 1/2, 3/4, 3/4)
///   threeoo3s  (-inf, -a, 0, a, +inf, b+i, -b+i), (1/2, 1/2, 3/2, 1/2, 1/2, 3/4, 3/4)
///   diamond    (-inf, 0, +inf, i),              (1/2, 1/2, 1/2, 1/2)
///   rn_kerr    (-inf, -a, 0, a, +inf, i),       (1/2, 1/2, 3/2, 1/2, 1/2, 1/2)
///   superman   (-inf, 0, +inf, a+i, -a+i),      (1/2, 1/2, 1/2, 3/4, 3/4)
StripConfig preset(const std::string& name, double a = 1.0, double b = 0.5);

std::vector<std::string> preset_names();

/// Mirror image of a config across the imaginary axis (prevertices negated,
/// orders and end angles swapped, base and affine data conjugate-mirrored).
StripConfig mirrored(const StripConfig& cfg);

enum class RenderFormat { svg, csv };

/// SVG 1.1 (leaves styled distinctly from the boundary, viewBox autoscaled
/// with a 5% margin) or CSV rows label,index,re,im with 12 significant
/// digits. Output is deterministic for identical inputs.
std::string render(const PolylineSet& ps, RenderFormat format);

}  // namespace srgeo
