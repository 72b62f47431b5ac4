#include "srgeo/metric.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace srgeo {

namespace {

std::string slot_name(int a, int b) {
  return "g[" + std::to_string(a) + "][" + std::to_string(b) + "]";
}

}  // namespace

MetricSpec::MetricSpec(int dim, std::vector<std::string> coords,
                       std::map<std::string, double> params, std::vector<Expr> components)
    : dim_(dim), coords_(std::move(coords)), params_(std::move(params)),
      components_(std::move(components)) {
  if (dim_ <= 0) throw MetricError("dimension must be positive");
  if (static_cast<int>(coords_.size()) != dim_)
    throw MetricError("dimension mismatch: expected " + std::to_string(dim_) +
                      " coordinates, got " + std::to_string(coords_.size()));
  if (components_.size() != static_cast<std::size_t>(dim_) * dim_)
    throw MetricError("dimension mismatch: expected " + std::to_string(dim_ * dim_) +
                      " components");

  std::set<std::string> declared;
  for (const auto& c : coords_) {
    if (!declared.insert(c).second) throw MetricError("name declared twice: '" + c + "'");
  }
  for (const auto& [name, value] : params_) {
    (void)value;
    if (!declared.insert(name).second) throw MetricError("name declared twice: '" + name + "'");
  }

  for (int a = 0; a < dim_; ++a) {
    for (int b = a + 1; b < dim_; ++b) {
      Expr& ab = components_[a * dim_ + b];
      Expr& ba = components_[b * dim_ + a];
      if (structurally_equal(simplify(ab), simplify(ba))) continue;
      if (ba.is_constant(0.0)) {
        ba = ab;
      } else if (ab.is_constant(0.0)) {
        ab = ba;
      } else {
        throw MetricError("asymmetric components: " + slot_name(a, b) + " = '" + to_string(ab) +
                          "' vs " + slot_name(b, a) + " = '" + to_string(ba) + "'");
      }
    }
  }

  for (int a = 0; a < dim_; ++a) {
    for (int b = 0; b < dim_; ++b) {
      for (const auto& sym : free_symbols(component(a, b))) {
        if (!declared.contains(sym))
          throw MetricError("undeclared name '" + sym + "' in " + slot_name(a, b));
      }
    }
  }
}

int MetricSpec::coord_index(std::string_view name) const {
  for (int i = 0; i < dim_; ++i) {
    if (coords_[i] == name) return i;
  }
  return -1;
}

Env MetricSpec::env_at(const Point& p) const {
  if (p.size() != dim_)
    throw MetricError("point has " + std::to_string(p.size()) + " coordinates, expected " +
                      std::to_string(dim_));
  Env env(params_.begin(), params_.end());
  for (int i = 0; i < dim_; ++i) env[coords_[i]] = p[i];
  return env;
}

MetricSpec MetricSpec::with_params(const std::map<std::string, double>& overrides) const {
  std::map<std::string, double> params = params_;
  for (const auto& [name, value] : overrides) {
    auto it = params.find(name);
    if (it == params.end()) throw MetricError("unknown parameter '" + name + "'");
    it->second = value;
  }
  return MetricSpec(dim_, coords_, std::move(params), components_);
}

// ---------------------------------------------------------------------------
// Metric file parser

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// A single "key = value" line, split at the first '='.
struct Line {
  std::string_view key, value;
  std::size_t offset;        // byte offset of the line in the file
  std::size_t value_offset;  // byte offset of the value
};

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

MetricSpec parse_metric_file(std::string_view text) {
  int dim = -1;
  std::vector<std::string> coords;
  std::map<std::string, double> params;
  struct Slot {
    Expr e;
    bool set = false;
  };
  std::vector<Slot> slots;

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    std::size_t line_offset = pos;
    pos = eol + 1;

    std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view stripped = trim(raw);
    if (stripped.empty()) continue;

    std::size_t eq = stripped.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(line_offset + (stripped.data() - raw.data()) + stripped.size(),
                       "expected '='");
    Line line;
    line.key = trim(stripped.substr(0, eq));
    line.value = trim(stripped.substr(eq + 1));
    line.offset = line_offset;
    line.value_offset = line_offset + (line.value.data() - raw.data());

    if (line.key == "dim") {
      if (dim != -1) throw MetricError("dim declared twice");
      int v = 0;
      auto res = std::from_chars(line.value.data(), line.value.data() + line.value.size(), v);
      if (res.ec != std::errc() || res.ptr != line.value.data() + line.value.size() || v <= 0)
        throw ParseError(line.value_offset, "expected a positive integer dimension");
      dim = v;
      slots.assign(static_cast<std::size_t>(dim) * dim, Slot{});
    } else if (line.key == "coords") {
      if (!coords.empty()) throw MetricError("coords declared twice");
      if (dim == -1) throw MetricError("dim must be declared before coords");
      std::string_view rest = line.value;
      while (!rest.empty()) {
        std::size_t comma = rest.find(',');
        std::string_view name = trim(rest.substr(0, comma));
        if (name.empty() || !std::all_of(name.begin(), name.end(), is_name_char))
          throw ParseError(line.value_offset, "malformed coordinate list");
        coords.emplace_back(name);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
      if (static_cast<int>(coords.size()) != dim)
        throw MetricError("dimension mismatch: dim = " + std::to_string(dim) + " but " +
                          std::to_string(coords.size()) + " coordinates declared");
    } else if (line.key.starts_with("param")) {
      std::string_view name = trim(line.key.substr(5));
      if (name.empty() || !std::all_of(name.begin(), name.end(), is_name_char))
        throw ParseError(line.offset, "expected 'param NAME = VALUE'");
      if (params.contains(std::string(name)))
        throw MetricError("parameter declared twice: '" + std::string(name) + "'");
      double v = 0.0;
      std::string_view num = line.value;
      bool negative = !num.empty() && num.front() == '-';
      if (negative) num.remove_prefix(1);
      auto res = std::from_chars(num.data(), num.data() + num.size(), v);
      if (res.ec != std::errc() || res.ptr != num.data() + num.size())
        throw ParseError(line.value_offset, "expected a real parameter value");
      params[std::string(name)] = negative ? -v : v;
    } else if (line.key.starts_with("g[")) {
      if (dim == -1) throw MetricError("dim must be declared before components");
      int idx[2] = {-1, -1};
      std::string_view k = line.key.substr(1);
      for (int i = 0; i < 2; ++i) {
        if (k.empty() || k.front() != '[')
          throw ParseError(line.offset, "expected 'g[A][B] = EXPR'");
        std::size_t close = k.find(']');
        if (close == std::string_view::npos)
          throw ParseError(line.offset, "expected 'g[A][B] = EXPR'");
        std::string_view digits = k.substr(1, close - 1);
        auto res = std::from_chars(digits.data(), digits.data() + digits.size(), idx[i]);
        if (res.ec != std::errc() || res.ptr != digits.data() + digits.size())
          throw ParseError(line.offset, "expected 'g[A][B] = EXPR'");
        k = k.substr(close + 1);
      }
      if (!k.empty()) throw ParseError(line.offset, "expected 'g[A][B] = EXPR'");
      if (idx[0] < 0 || idx[0] >= dim || idx[1] < 0 || idx[1] >= dim)
        throw MetricError("dimension mismatch: component " + slot_name(idx[0], idx[1]) +
                          " outside a " + std::to_string(dim) + "-dimensional metric");
      Expr e;
      try {
        e = parse_expression(line.value);
      } catch (const ParseError& pe) {
        throw ParseError(line.value_offset + pe.offset(), pe.hint());
      }
      Slot& slot = slots[static_cast<std::size_t>(idx[0]) * dim + idx[1]];
      Slot& mirror = slots[static_cast<std::size_t>(idx[1]) * dim + idx[0]];
      if (slot.set)
        throw MetricError("component " + slot_name(idx[0], idx[1]) + " declared twice");
      if (idx[0] != idx[1] && mirror.set &&
          !structurally_equal(simplify(e), simplify(mirror.e)))
        throw MetricError("asymmetric components: " + slot_name(idx[0], idx[1]) + " = '" +
                          to_string(e) + "' vs mirror '" + to_string(mirror.e) + "'");
      slot.e = e;
      slot.set = true;
    } else {
      throw ParseError(line.offset, "unknown directive '" + std::string(line.key) + "'");
    }
  }

  if (dim == -1) throw MetricError("missing dim declaration");
  if (coords.empty()) throw MetricError("missing coords declaration");

  std::vector<Expr> components(slots.size());
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      const Slot& s = slots[static_cast<std::size_t>(a) * dim + b];
      const Slot& m = slots[static_cast<std::size_t>(b) * dim + a];
      components[static_cast<std::size_t>(a) * dim + b] =
          s.set ? s.e : (m.set ? m.e : Expr::constant(0.0));
    }
  }
  return MetricSpec(dim, std::move(coords), std::move(params), std::move(components));
}

}  // namespace srgeo
