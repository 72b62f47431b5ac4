#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "srgeo/metric.hpp"

namespace srgeo {

struct ParamSchema {
  std::string name;
  double default_value = 0.0;
  double min = -HUGE_VAL;  // admissible range, inclusive of neither bound
  double max = HUGE_VAL;
};

/// A named built-in metric: parameter schema, spec factory, and the known
/// singular loci (documentation only; nothing is fenced off).
struct CatalogEntry {
  std::string name;
  std::string summary;
  std::vector<ParamSchema> params;
  std::vector<std::string> singular_loci;
  std::function<MetricSpec(const std::map<std::string, double>&)> factory;
};

const std::vector<CatalogEntry>& catalog_entries();

/// Builds a catalog metric with parameters substituted. Throws MetricError
/// for unknown names, unknown parameters, and out-of-range values.
MetricSpec get_metric(const std::string& name,
                      const std::map<std::string, double>& params = {});

}  // namespace srgeo
