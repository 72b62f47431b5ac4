#include "srgeo/catalog.hpp"

#include <cmath>

#include "srgeo/errors.hpp"

namespace srgeo {

namespace {

// Metric-file sources for the built-in catalog. Parameter values in the
// text are the schema defaults; get_metric() overrides them.

constexpr const char* kMinkowski = R"(
dim = 4
coords = t, x, y, z
g[0][0] = -1
g[1][1] = 1
g[2][2] = 1
g[3][3] = 1
)";

constexpr const char* kSphere2 = R"(
# unit 2-sphere
dim = 2
coords = theta, phi
g[0][0] = 1
g[1][1] = sin(theta)^2
)";

constexpr const char* kSchwarzschild = R"(
dim = 4
coords = t, r, theta, phi
param m = 1.0
g[0][0] = -(1 - 2*m/r)
g[1][1] = 1/(1 - 2*m/r)
g[2][2] = r^2
g[3][3] = r^2*sin(theta)^2
)";

constexpr const char* kReissnerNordstrom = R"(
dim = 4
coords = t, r, theta, phi
param m = 1.0
param e = 0.5
g[0][0] = -(1 - 2*m/r + e^2/r^2)
g[1][1] = 1/(1 - 2*m/r + e^2/r^2)
g[2][2] = r^2
g[3][3] = r^2*sin(theta)^2
)";

// Boyer-Lindquist, with Sigma = r^2 + a^2 cos^2(theta) and
// Delta = r^2 + a^2 + e^2 - 2 m r written out (the file format has no
// abbreviations). The cross term uses r^2 + a^2 - Delta = 2 m r - e^2.
constexpr const char* kKerrNewman = R"(
dim = 4
coords = t, r, theta, phi
param m = 1.0
param a = 0.5
param e = 0.0
g[0][0] = -(r^2 + a^2 + e^2 - 2*m*r - a^2*sin(theta)^2)/(r^2 + a^2*cos(theta)^2)
g[0][3] = -a*sin(theta)^2*(2*m*r - e^2)/(r^2 + a^2*cos(theta)^2)
g[1][1] = (r^2 + a^2*cos(theta)^2)/(r^2 + a^2 + e^2 - 2*m*r)
g[2][2] = r^2 + a^2*cos(theta)^2
g[3][3] = ((r^2 + a^2)^2 - (r^2 + a^2 + e^2 - 2*m*r)*a^2*sin(theta)^2)*sin(theta)^2/(r^2 + a^2*cos(theta)^2)
)";

// Every component multiplied by Sigma*Delta and the quotients cancelled
// symbolically, so evaluation at Delta = 0 or Sigma = 0 stays finite.
constexpr const char* kKerrNewmanRegularized = R"(
dim = 4
coords = t, r, theta, phi
param m = 1.0
param a = 0.5
param e = 0.0
g[0][0] = -(r^2 + a^2 + e^2 - 2*m*r - a^2*sin(theta)^2)*(r^2 + a^2 + e^2 - 2*m*r)
g[0][3] = -a*sin(theta)^2*(2*m*r - e^2)*(r^2 + a^2 + e^2 - 2*m*r)
g[1][1] = (r^2 + a^2*cos(theta)^2)^2
g[2][2] = (r^2 + a^2*cos(theta)^2)^2*(r^2 + a^2 + e^2 - 2*m*r)
g[3][3] = ((r^2 + a^2)^2 - (r^2 + a^2 + e^2 - 2*m*r)*a^2*sin(theta)^2)*sin(theta)^2*(r^2 + a^2 + e^2 - 2*m*r)
)";

constexpr const char* kDiagSemiregular = R"(
# degenerate at t = 0, semi-regular (alpha_x = t^2 vanishes with its derivative)
dim = 4
coords = t, x, y, z
g[0][0] = -1
g[1][1] = t^4
g[2][2] = 1
g[3][3] = 1
)";

constexpr const char* kDiagNonregular = R"(
# degenerate at t = 0, not semi-regular (d/dt g_xx = 1 does not vanish with g_xx)
dim = 4
coords = t, x, y, z
g[0][0] = -1
g[1][1] = t
g[2][2] = 1
g[3][3] = 1
)";

std::vector<CatalogEntry> build_entries() {
  auto from_text = [](const char* text) {
    return [text](const std::map<std::string, double>& params) {
      return parse_metric_file(text).with_params(params);
    };
  };

  std::vector<CatalogEntry> entries;
  entries.push_back({"minkowski", "flat spacetime, signature (0,3,1)", {}, {}, from_text(kMinkowski)});
  entries.push_back({"sphere2", "unit 2-sphere", {}, {"theta = 0, pi (chart)"}, from_text(kSphere2)});
  entries.push_back({"schwarzschild",
                     "static black hole",
                     {{"m", 1.0, 0.0}},
                     {"r = 0", "r = 2m (chart)"},
                     from_text(kSchwarzschild)});
  entries.push_back({"reissner_nordstrom",
                     "charged static black hole",
                     {{"m", 1.0, 0.0}, {"e", 0.5}},
                     {"r = 0", "Delta(r) = 0 (chart)"},
                     from_text(kReissnerNordstrom)});
  entries.push_back({"kerr_newman",
                     "rotating charged black hole, Boyer-Lindquist chart",
                     {{"m", 1.0, 0.0}, {"a", 0.5}, {"e", 0.0}},
                     {"Delta(r) = 0 (chart)", "Sigma = 0 (ring)"},
                     from_text(kKerrNewman)});
  entries.push_back({"kerr_newman_regularized",
                     "Kerr-Newman times Sigma*Delta, finite components everywhere",
                     {{"m", 1.0, 0.0}, {"a", 0.5}, {"e", 0.0}},
                     {},
                     from_text(kKerrNewmanRegularized)});
  entries.push_back({"diag_semiregular",
                     "-dt^2 + t^4 dx^2 + dy^2 + dz^2, degenerate and semi-regular at t = 0",
                     {},
                     {"t = 0 (degenerate)"},
                     from_text(kDiagSemiregular)});
  entries.push_back({"diag_nonregular",
                     "-dt^2 + t dx^2 + dy^2 + dz^2, degenerate and not semi-regular at t = 0",
                     {},
                     {"t = 0 (degenerate)"},
                     from_text(kDiagNonregular)});
  return entries;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = build_entries();
  return entries;
}

MetricSpec get_metric(const std::string& name, const std::map<std::string, double>& params) {
  for (const auto& entry : catalog_entries()) {
    if (entry.name != name) continue;
    for (const auto& [pname, value] : params) {
      const ParamSchema* schema = nullptr;
      for (const auto& s : entry.params) {
        if (s.name == pname) schema = &s;
      }
      if (!schema) throw MetricError("metric '" + name + "' has no parameter '" + pname + "'");
      if (!(value > schema->min && value < schema->max))
        throw MetricError("parameter '" + pname + "' = " + std::to_string(value) +
                          " outside the admissible range of '" + name + "'");
    }
    return entry.factory(params);
  }
  throw MetricError("unknown metric '" + name + "'");
}

}  // namespace srgeo
