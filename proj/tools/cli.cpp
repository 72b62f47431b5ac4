#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "srgeo/catalog.hpp"
#include "srgeo/einstein.hpp"
#include "srgeo/geometry.hpp"
#include "srgeo/strip_map.hpp"

namespace srgeo::cli {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// --- shared option plumbing -------------------------------------------------

struct MetricArgs {
  std::string name;
  std::string file;
  std::vector<std::string> params;
};

void add_metric_options(CLI::App* cmd, MetricArgs& args) {
  cmd->add_option("--name", args.name, "catalog metric name (see 'metric list')");
  cmd->add_option("--metric", args.file, "path to a metric file");
  cmd->add_option("--param", args.params, "parameter override NAME=VALUE (repeatable)");
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
  std::map<std::string, double> out;
  for (const auto& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--param expects NAME=VALUE, got '" + kv + "'");
    try {
      out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--param value in '" + kv + "' is not a number");
    }
  }
  return out;
}

MetricSpec load_spec(const MetricArgs& args) {
  if (args.name.empty() == args.file.empty())
    throw UsageError("give exactly one of --name or --metric");
  if (!args.name.empty()) return get_metric(args.name, parse_params(args.params));
  std::ifstream in(args.file);
  if (!in) throw Error("cannot open metric file '" + args.file + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  MetricSpec spec = parse_metric_file(ss.str());
  auto overrides = parse_params(args.params);
  return overrides.empty() ? spec : spec.with_params(overrides);
}

// "t=0,r=3,theta=1.0,phi=0" against the metric's coordinate names; every
// coordinate must be given, none defaulted.
Point parse_point(const MetricSpec& spec, const std::string& at) {
  std::map<std::string, double> values;
  std::stringstream ss(at);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error("--at expects NAME=VALUE pairs, got '" + item + "'");
    std::string name = item.substr(0, eq);
    if (spec.coord_index(name) < 0) throw Error("unknown coordinate '" + name + "' in --at");
    try {
      values[name] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error("coordinate value in '" + item + "' is not a number");
    }
  }
  Point p(spec.dim());
  for (int i = 0; i < spec.dim(); ++i) {
    auto it = values.find(spec.coords()[i]);
    if (it == values.end())
      throw Error("missing coordinate '" + spec.coords()[i] + "' in --at");
    p[i] = it->second;
  }
  return p;
}

ordered_json point_json(const MetricSpec& spec, const Point& p) {
  ordered_json j = ordered_json::object();
  for (int i = 0; i < spec.dim(); ++i) j[spec.coords()[i]] = p[i];
  return j;
}

ordered_json matrix_json(const Mat& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

void print_matrix(std::ostream& out, const std::string& label, const Mat& m) {
  out << label << ":\n";
  for (int i = 0; i < m.rows(); ++i) {
    out << " ";
    for (int j = 0; j < m.cols(); ++j) out << " " << std::setw(22) << fmt(m(i, j));
    out << "\n";
  }
}

// --- subcommand state --------------------------------------------------------

struct Options {
  bool json = false;

  MetricArgs metric;
  std::string at;
  double tol = kRankTol;

  bool radical_stationary = false;
  bool semiregular = false;
  std::string path_spec;

  bool density = false;
  double lambda = 0.0;
  double kappa = 1.0;

  std::string preset_name;
  double preset_a = 1.0;
  double preset_b = 0.5;
  int leaves = 20;
  int samples = 64;
  double x_min = -3.0;
  double x_max = 3.0;
  std::string out_file;

  std::string expr_text;
  std::string var;
};

int cmd_metric_list(const Options& opt, std::ostream& out) {
  if (opt.json) {
    ordered_json j = ordered_json::array();
    for (const auto& e : catalog_entries()) {
      MetricSpec spec = e.factory({});
      ordered_json params = ordered_json::array();
      for (const auto& p : e.params) {
        ordered_json pj = {{"name", p.name}, {"default", p.default_value}};
        if (std::isfinite(p.min)) pj["min"] = p.min;
        if (std::isfinite(p.max)) pj["max"] = p.max;
        params.push_back(pj);
      }
      j.push_back({{"name", e.name},
                   {"dim", spec.dim()},
                   {"coords", spec.coords()},
                   {"params", params},
                   {"singular_loci", e.singular_loci},
                   {"summary", e.summary}});
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  for (const auto& e : catalog_entries()) {
    std::string params;
    for (const auto& p : e.params) {
      if (!params.empty()) params += ", ";
      params += p.name + "=" + fmt(p.default_value);
    }
    out << std::left << std::setw(26) << e.name << std::setw(24)
        << (params.empty() ? "-" : params) << e.summary << "\n";
  }
  return 0;
}

int cmd_metric_show(const Options& opt, std::ostream& out) {
  MetricSpec spec = load_spec(opt.metric);
  if (opt.json) {
    ordered_json comps = ordered_json::array();
    for (int a = 0; a < spec.dim(); ++a)
      for (int b = a; b < spec.dim(); ++b)
        if (!spec.component(a, b).is_constant(0.0))
          comps.push_back({{"a", a}, {"b", b}, {"expr", to_string(spec.component(a, b))}});
    ordered_json j = {{"dim", spec.dim()},
                      {"coords", spec.coords()},
                      {"params", spec.params()},
                      {"components", comps}};
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "dim = " << spec.dim() << "\n";
  out << "coords = ";
  for (std::size_t i = 0; i < spec.coords().size(); ++i)
    out << (i ? ", " : "") << spec.coords()[i];
  out << "\n";
  for (const auto& [name, value] : spec.params())
    out << "param " << name << " = " << fmt(value) << "\n";
  for (int a = 0; a < spec.dim(); ++a)
    for (int b = a; b < spec.dim(); ++b)
      if (!spec.component(a, b).is_constant(0.0))
        out << "g[" << a << "][" << b << "] = " << to_string(spec.component(a, b)) << "\n";
  return 0;
}

std::vector<Point> build_path(const MetricSpec& spec, const Point& base,
                              const std::string& path_spec) {
  std::string coord = spec.coords()[0];
  double first = 0.5, ratio = 0.5;
  int count = 12;
  if (!path_spec.empty()) {
    std::stringstream ss(path_spec);
    std::string c, f, r, n;
    if (!std::getline(ss, c, ',') || !std::getline(ss, f, ',') || !std::getline(ss, r, ',') ||
        !std::getline(ss, n, ','))
      throw UsageError("--path expects COORD,FIRST,RATIO,COUNT");
    coord = c;
    try {
      first = std::stod(f);
      ratio = std::stod(r);
      count = std::stoi(n);
    } catch (const std::exception&) {
      throw UsageError("--path expects COORD,FIRST,RATIO,COUNT with numeric fields");
    }
  }
  int ci = spec.coord_index(coord);
  if (ci < 0) throw Error("unknown coordinate '" + coord + "' in --path");
  std::vector<Point> path;
  double step = first;
  for (int k = 0; k < count; ++k) {
    Point p = base;
    p[ci] += step;
    path.push_back(p);
    step *= ratio;
  }
  return path;
}

int cmd_check(const Options& opt, std::ostream& out) {
  if (opt.radical_stationary == opt.semiregular)
    throw UsageError("give exactly one of --radical-stationary or --semiregular");
  MetricSpec spec = load_spec(opt.metric);
  Point base = parse_point(spec, opt.at);
  ChristoffelFirst chr(spec);

  if (opt.radical_stationary) {
    bool ok = check_radical_stationary(chr, base, opt.tol);
    if (opt.json) {
      ordered_json j = {{"check", "radical_stationary"},
                        {"point", point_json(spec, base)},
                        {"result", ok}};
      out << j.dump(2) << "\n";
    } else {
      out << "radical-stationary at the point: " << (ok ? "yes" : "no") << "\n";
    }
    return 0;
  }

  std::vector<Point> path = build_path(spec, base, opt.path_spec);
  SemiregularReport rep = check_semiregular(chr, path, opt.tol);
  if (opt.json) {
    ordered_json products = ordered_json::array();
    for (const auto& tr : rep.products) {
      products.push_back({{"ab", tr.ab},
                          {"cd", tr.cd},
                          {"converged", tr.converged},
                          {"values", tr.values}});
    }
    ordered_json j = {{"check", "semiregular"},
                      {"limit_point", point_json(spec, base)},
                      {"converged", rep.all_products_converged},
                      {"products", products},
                      {"diagonal", rep.diagonal}};
    if (rep.diagonal) {
      ordered_json ratios = ordered_json::array();
      for (const auto& tr : rep.ratios)
        ratios.push_back(
            {{"a", tr.a}, {"b", tr.b}, {"c", tr.c}, {"bounded", tr.bounded}, {"values", tr.values}});
      j["ratios"] = ratios;
      j["bounded_for_all_c"] = rep.ratios_bounded_for_all_c;
      j["bounded_for_some_c"] = rep.ratios_bounded_for_some_c;
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "semi-regularity (sampled necessary condition): "
      << (rep.all_products_converged ? "converged" : "DIVERGED") << "\n";
  for (const auto& tr : rep.products) {
    if (!tr.converged) {
      out << "  diverging co-contraction: Gamma[" << tr.ab[0] << "][" << tr.ab[1]
          << "]. x Gamma[" << tr.cd[0] << "][" << tr.cd[1] << "]. (last value "
          << fmt(tr.values.back()) << ")\n";
    }
  }
  if (rep.diagonal) {
    out << "diagonal criterion, 'for all c' reading: "
        << (rep.ratios_bounded_for_all_c ? "bounded" : "UNBOUNDED") << "\n";
    out << "diagonal criterion, 'for some c' reading: "
        << (rep.ratios_bounded_for_some_c ? "bounded" : "UNBOUNDED") << "\n";
  }
  return 0;
}

int cmd_curvature(const Options& opt, std::ostream& out) {
  MetricSpec spec = load_spec(opt.metric);
  Point p = parse_point(spec, opt.at);
  ChristoffelFirst chr(spec);
  CurvatureValue cv = riemann_at(chr, p, opt.tol);

  double scale = 0.0;
  for (double v : cv.r) scale = std::max(scale, std::abs(v));
  const double cutoff = 1e-13 * std::max(scale, 1e-300);

  if (opt.json) {
    ordered_json nz = ordered_json::array();
    for (int a = 0; a < cv.dim; ++a)
      for (int b = 0; b < cv.dim; ++b)
        for (int c = 0; c < cv.dim; ++c)
          for (int d = 0; d < cv.dim; ++d)
            if (std::abs(cv.at(a, b, c, d)) > cutoff)
              nz.push_back({{"indices", {a, b, c, d}}, {"value", cv.at(a, b, c, d)}});
    ordered_json j = {{"point", point_json(spec, p)},
                      {"dim", cv.dim},
                      {"max_abs", scale},
                      {"nonzero", nz}};
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "R_abcd at the point (nonzero components, all indices covariant):\n";
  int count = 0;
  for (int a = 0; a < cv.dim; ++a)
    for (int b = 0; b < cv.dim; ++b)
      for (int c = 0; c < cv.dim; ++c)
        for (int d = 0; d < cv.dim; ++d)
          if (std::abs(cv.at(a, b, c, d)) > cutoff) {
            out << "  R[" << a << "][" << b << "][" << c << "][" << d
                << "] = " << fmt(cv.at(a, b, c, d)) << "\n";
            ++count;
          }
  if (count == 0) out << "  (all components vanish)\n";
  return 0;
}

int cmd_einstein(const Options& opt, std::ostream& out) {
  MetricSpec spec = load_spec(opt.metric);
  Point p = parse_point(spec, opt.at);
  ChristoffelFirst chr(spec);

  if (opt.density) {
    EinsteinDensityValue d = einstein_density_at(chr, p, opt.tol);
    Mat residual = densitized_residual(chr, p, opt.lambda, Mat::Zero(4, 4), opt.kappa, opt.tol);
    if (opt.json) {
      ordered_json j = {{"point", point_json(spec, p)},
                        {"density_upper", matrix_json(d.upper)},
                        {"density_lower", matrix_json(d.lower)},
                        {"lambda", opt.lambda},
                        {"kappa", opt.kappa},
                        {"residual", matrix_json(residual)}};
      out << j.dump(2) << "\n";
    } else {
      print_matrix(out, "G^{ab} det g", d.upper);
      print_matrix(out, "G_{ab} det g", d.lower);
      print_matrix(out, "densitized residual (T = 0)", residual);
    }
    return 0;
  }

  Mat g_tensor = einstein_at(chr, p, opt.tol);
  double s = scalar_at(chr, p, opt.tol);
  if (opt.json) {
    ordered_json j = {{"point", point_json(spec, p)},
                      {"scalar", s},
                      {"einstein", matrix_json(g_tensor)}};
    out << j.dump(2) << "\n";
  } else {
    out << "scalar curvature s = " << fmt(s) << "\n";
    print_matrix(out, "Einstein tensor G_ab", g_tensor);
  }
  return 0;
}

int cmd_foliate(const Options& opt, std::ostream& out) {
  auto names = preset_names();
  if (std::find(names.begin(), names.end(), opt.preset_name) == names.end()) {
    std::string known;
    for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
    throw UsageError("unknown preset '" + opt.preset_name + "' (known: " + known + ")");
  }
  RenderFormat format;
  if (opt.out_file.ends_with(".svg")) {
    format = RenderFormat::svg;
  } else if (opt.out_file.ends_with(".csv")) {
    format = RenderFormat::csv;
  } else {
    throw UsageError("--out must end in .svg or .csv");
  }

  StripConfig cfg = preset(opt.preset_name, opt.preset_a, opt.preset_b);
  PolylineSet ps = foliation(cfg, opt.leaves, {opt.x_min, opt.x_max}, opt.samples);
  std::string doc = render(ps, format);

  std::ofstream file(opt.out_file, std::ios::binary);
  if (!file) throw Error("cannot write '" + opt.out_file + "'");
  file << doc;
  file.close();

  if (opt.json) {
    ordered_json j = {{"preset", opt.preset_name},
                      {"out", opt.out_file},
                      {"polylines", ps.items.size()},
                      {"bytes", doc.size()}};
    out << j.dump(2) << "\n";
  } else {
    out << "wrote " << opt.out_file << " (" << ps.items.size() << " polylines, " << doc.size()
        << " bytes)\n";
  }
  return 0;
}

int cmd_expr_diff(const Options& opt, std::ostream& out) {
  Expr derivative = simplify(differentiate(parse_expression(opt.expr_text), opt.var));
  if (opt.json) {
    ordered_json j = {{"expr", opt.expr_text},
                      {"var", opt.var},
                      {"derivative", to_string(derivative)}};
    out << j.dump(2) << "\n";
  } else {
    out << to_string(derivative) << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"singular semi-Riemannian geometry toolkit"};
  app.require_subcommand(1);
  app.fallthrough(false);

  Options opt;
  app.add_flag("--json", opt.json, "machine-readable JSON output");

  int verb = 0;  // dispatch tag set by the chosen subcommand

  auto* metric = app.add_subcommand("metric", "catalog access");
  metric->require_subcommand(1);
  auto* metric_list = metric->add_subcommand("list", "list catalog metrics");
  metric_list->callback([&] { verb = 1; });
  auto* metric_show = metric->add_subcommand("show", "print a metric spec");
  add_metric_options(metric_show, opt.metric);
  metric_show->callback([&] { verb = 2; });

  auto* check = app.add_subcommand("check", "degeneracy diagnostics");
  add_metric_options(check, opt.metric);
  check->add_flag("--radical-stationary", opt.radical_stationary,
                  "test radical stationarity at --at");
  check->add_flag("--semiregular", opt.semiregular,
                  "sample co-contracted Koszul products along a path toward --at");
  check->add_option("--at", opt.at, "point as c1=v1,c2=v2,...")->required();
  check->add_option("--path", opt.path_spec,
                    "approach path COORD,FIRST,RATIO,COUNT (default: first coord,0.5,0.5,12)");
  check->add_option("--tol", opt.tol, "rank tolerance");
  check->callback([&] { verb = 3; });

  auto* curvature = app.add_subcommand("curvature", "covariant Riemann tensor at a point");
  add_metric_options(curvature, opt.metric);
  curvature->add_option("--at", opt.at, "point as c1=v1,c2=v2,...")->required();
  curvature->add_option("--tol", opt.tol, "rank tolerance");
  curvature->callback([&] { verb = 4; });

  auto* einstein = app.add_subcommand("einstein", "Einstein tensor or its density");
  add_metric_options(einstein, opt.metric);
  einstein->add_option("--at", opt.at, "point as c1=v1,c2=v2,...")->required();
  einstein->add_flag("--density", opt.density, "densitized form (works at degenerate points)");
  einstein->add_option("--lambda", opt.lambda, "cosmological constant (default 0)");
  einstein->add_option("--kappa", opt.kappa, "coupling constant (default 1)");
  einstein->add_option("--tol", opt.tol, "rank tolerance");
  einstein->callback([&] { verb = 5; });

  auto* foliate = app.add_subcommand("foliate", "Schwarz-Christoffel strip foliation figures");
  foliate->add_option("--preset", opt.preset_name, "hexagon|threeoo3s|diamond|rn_kerr|superman")
      ->required();
  foliate->add_option("--a", opt.preset_a, "preset length parameter (default 1)");
  foliate->add_option("--b", opt.preset_b, "second length parameter (default 0.5)");
  foliate->add_option("--leaves", opt.leaves, "number of foliation leaves (default 20)");
  foliate->add_option("--samples", opt.samples, "points per leaf (default 64)");
  foliate->add_option("--x-min", opt.x_min, "left end of the sampled strip (default -3)");
  foliate->add_option("--x-max", opt.x_max, "right end of the sampled strip (default 3)");
  foliate->add_option("--out", opt.out_file, "output file, .svg or .csv")->required();
  foliate->callback([&] { verb = 6; });

  auto* expr = app.add_subcommand("expr", "expression utilities");
  expr->require_subcommand(1);
  auto* expr_diff = expr->add_subcommand("diff", "symbolic derivative");
  expr_diff->add_option("--expr", opt.expr_text, "expression text")->required();
  expr_diff->add_option("--var", opt.var, "differentiation variable")->required();
  expr_diff->callback([&] { verb = 7; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    switch (verb) {
      case 1: return cmd_metric_list(opt, out);
      case 2: return cmd_metric_show(opt, out);
      case 3: return cmd_check(opt, out);
      case 4: return cmd_curvature(opt, out);
      case 5: return cmd_einstein(opt, out);
      case 6: return cmd_foliate(opt, out);
      case 7: return cmd_expr_diff(opt, out);
      default: err << app.help(); return 1;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace srgeo::cli
