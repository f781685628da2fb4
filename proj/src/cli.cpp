#include "xmo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "xmo/approximation.hpp"
#include "xmo/catalog.hpp"
#include "xmo/compactness.hpp"
#include "xmo/expr.hpp"
#include "xmo/kernels.hpp"
#include "xmo/operators.hpp"
#include "xmo/quadrature.hpp"
#include "xmo/oscillation.hpp"
#include "xmo/report.hpp"
#include "xmo/weights.hpp"

namespace xmo::cli {

namespace {

using Options = std::map<std::string, std::string>;

struct Result {
  Json json;
  CsvTable csv;
  std::string summary;
};

/// A schema violation naming the offending field.
PreconditionError field_error(const std::string& field, const std::string& what) {
  return PreconditionError("--" + field + ": " + what);
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double number(const Options& o, const std::string& key) {
  try {
    return parse_number(o.at(key));
  } catch (const Error& e) {
    throw field_error(key, e.what());
  }
}

int integer(const Options& o, const std::string& key) {
  const double v = number(o, key);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw field_error(key, "expected an integer");
  return static_cast<int>(v);
}

std::vector<double> number_list(const Options& o, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(o.at(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw field_error(key, "empty list item");
    try {
      out.push_back(parse_number(item));
    } catch (const Error& e) {
      throw field_error(key, e.what());
    }
  }
  if (out.empty()) throw field_error(key, "empty list");
  return out;
}

/// "[a,b]" or "[a,b]x[c,d]..." with equal lengths, repeated to `dim` axes
/// when a single interval is given.
Cube parse_cube(const Options& o, const std::string& key, int dim) {
  const std::string text = o.at(key);
  std::vector<std::pair<double, double>> iv;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto open = text.find('[', pos), close = text.find(']', pos);
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw field_error(key, "expected intervals like [a,b]");
    const std::string body = text.substr(open + 1, close - open - 1);
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw field_error(key, "interval needs two endpoints");
    try {
      iv.emplace_back(parse_number(trim(body.substr(0, comma))), parse_number(trim(body.substr(comma + 1))));
    } catch (const Error& e) {
      throw field_error(key, e.what());
    }
    pos = close + 1;
    while (pos < text.size() && (text[pos] == 'x' || text[pos] == ' ')) ++pos;
  }
  if (iv.empty()) throw field_error(key, "no interval given");
  if (iv.size() == 1)
    while (static_cast<int>(iv.size()) < dim) iv.push_back(iv.front());
  if (static_cast<int>(iv.size()) != dim) throw field_error(key, "interval count does not match the dimension");
  const double side = iv.front().second - iv.front().first;
  Point lo;
  for (const auto& [a, b] : iv) {
    if (!(b > a)) throw field_error(key, "interval must have positive length");
    if (std::abs((b - a) - side) > 1e-12 * std::max(1.0, side)) throw field_error(key, "intervals must be equal");
    lo.push_back(a);
  }
  return Cube::from_corner(lo, side);
}

/// Catalog name or expression in x1..x4. dim 0 infers it.
Field make_field(const Options& o, const std::string& key, int dim) {
  const std::string text = o.at(key);
  Field f = catalog::constant(1, 0.0);
  if (catalog::lookup(text, dim == 0 ? 1 : dim, &f)) return f;
  try {
    const FunctionSpec spec = parse_function(text, dim == 0 ? 1 : dim);
    if (dim != 0 && spec.dim() > dim) throw PreconditionError("uses more variables than the dimension");
    return field_from_spec(spec, dim == 0 ? spec.dim() : dim);
  } catch (const ParseError& e) {
    throw field_error(key, e.what());
  }
}

int infer_dim(const Options& o, const std::vector<std::string>& function_keys) {
  int dim = integer(o, "dim");
  if (dim < 0 || dim > kMaxDim) throw field_error("dim", "must lie in 1..4");
  if (dim != 0) return dim;
  dim = 1;
  for (const auto& key : function_keys) {
    const std::string& text = o.at(key);
    Field probe = catalog::constant(1, 0.0);
    if (catalog::lookup(text, 1, &probe)) continue;
    try {
      dim = std::max(dim, parse_function(text).dim());
    } catch (const ParseError& e) {
      throw field_error(key, e.what());
    }
  }
  return dim;
}

BilinearKernel make_kernel(const Options& o, int dim) {
  const std::string name = o.at("kernel");
  std::optional<BilinearKernel> k;
  if (name == "reference") {
    k = reference_kernel(dim);
  } else if (name == "singular") {
    k = singular_kernel(dim);
  } else if (name == "far_piece") {
    k = far_piece_kernel(dim, number(o, "A"));
  } else {
    throw field_error("kernel", "expected reference, singular or far_piece");
  }
  const double eta = number(o, "eta");
  if (eta < 0.0) throw field_error("eta", "must be nonnegative");
  if (eta > 0.0) return truncate(*k, eta);
  return *k;
}

std::vector<Point> points_1d(const std::vector<double>& v, int dim) {
  std::vector<Point> out;
  for (double x : v) {
    Point p(static_cast<std::size_t>(dim), 0.0);
    p[0] = x;
    out.push_back(p);
  }
  return out;
}

Result cmd_oscillation(const Options& o) {
  const int dim = infer_dim(o, {"f"});
  const Field f = make_field(o, "f", dim);
  ScanConfig cfg = ScanConfig::defaults(dim);
  if (!o.at("tol").empty()) cfg.tolerance = number(o, "tol");
  if (!o.at("extent").empty()) cfg.extent = number(o, "extent");
  if (!o.at("spacing").empty()) cfg.center_spacing = number(o, "spacing");
  cfg.resolution = integer(o, "resolution");
  const int res = cfg.resolution == 0 ? default_resolution(dim) : cfg.resolution;
  const std::string mode = o.at("mode");
  Result r;
  if (mode == "classify") {
    const Diagnosis d = classify(f, cfg);
    r.json = to_json(d);
    r.csv.header = {"profile", "parameter", "value", "argmax_center", "argmax_side", "cube_count"};
    for (const OscillationProfile* p : {&d.small_scale, &d.translation, &d.large_scale, &d.annulus}) {
      const CsvTable t = profile_csv(*p);
      for (auto row : t.rows) {
        row.insert(row.begin(), p->kind);
        r.csv.add(row);
      }
    }
    r.summary = "vmo=" + std::to_string(d.vmo_smallscale_ok) + " xmo=" + std::to_string(d.xmo_translation_ok) +
                " cmo=" + std::to_string(d.cmo_largescale_ok);
    return r;
  }
  OscillationProfile p;
  if (mode == "translation") {
    const Cube q = parse_cube(o, "cube", dim);
    p = translation_profile(f, q, axis_directions(dim), number_list(o, "radii"), res);
  } else if (mode == "small" || mode == "large") {
    const auto scales = o.at("scales").empty() ? (mode == "small" ? cfg.small_scales : cfg.large_scales)
                                               : number_list(o, "scales");
    const auto centers = lattice_centers(dim, cfg.extent, cfg.center_spacing);
    p = mode == "small" ? small_scale_profile(f, scales, centers, res)
                        : large_scale_profile(f, scales, centers,
                                              cfg.resolution == 0 ? (dim == 1 ? 8192 : 256) : cfg.resolution);
  } else if (mode == "annulus") {
    p = annulus_profile(f, number_list(o, "radii"), [dim](double rr) { return default_annulus_probes(dim, rr); },
                        res);
  } else {
    throw field_error("mode", "expected classify, small, translation, large or annulus");
  }
  r.json = to_json(p);
  r.csv = profile_csv(p);
  std::ostringstream s;
  s << p.kind << " profile:";
  for (const auto& e : p.entries) s << ' ' << format_number(e.value);
  r.summary = s.str();
  return r;
}

Result cmd_approx(const Options& o) {
  const int dim = infer_dim(o, {"f"});
  const Field f = make_field(o, "f", dim);
  const double eps = number(o, "eps");
  const int kmax = integer(o, "kmax");
  ThresholdScanConfig scan;
  scan.extent = number(o, "extent");
  scan.resolution = integer(o, "resolution");
  const ThresholdSchedule sched = select_thresholds(f, eps, scan, kmax);
  const int res = scan.resolution == 0 ? default_resolution(dim) : scan.resolution;
  const DyadicApproximation approx = project_simple(f, build_family(sched, dim), res);
  const JumpReport jump = adjacency_jump(approx);
  const MollifiedApproximation h = mollify(approx);
  const double gap = mollification_gap(h, gap_points(approx, number(o, "gap-window")));
  const auto cubes = regime_family(approx, number(o, "error-extent"));
  const SupEstimate err = approximation_error(f, approx, false, cubes, res);

  Result r;
  r.json["schedule"] = to_json(sched);
  r.json["cube_count"] = approx.cube_count();
  r.json["coverage"] = approx.coverage();
  r.json["adjacency_jump"] = to_json(jump);
  r.json["mollification_gap"] = gap;
  r.json["gap_within_jump"] = gap <= jump.value;
  r.json["approximation_error"] = err.value;
  r.json["approximation_error_detail"] = to_json(err);
  r.json["approximation_error_worst_cube"] = to_json(cubes[err.argmax]);
  r.json["error_constant"] = err.value / eps;
  r.json["test_cubes"] = cubes.size();
  if (o.at("decay-radii") != "none") {
    Json decay;
    const auto radii = number_list(o, "decay-radii");
    for (int order : {1, 2}) {
      MultiIndex alpha;
      alpha.order.assign(static_cast<std::size_t>(dim), 0);
      alpha.order[0] = order;
      Json rows = Json::array();
      for (const DecayEntry& e : derivative_decay(h, alpha, radii)) rows.push_back(to_json(e));
      decay["order" + std::to_string(order)] = rows;
    }
    r.json["derivative_decay"] = decay;
  }
  if (!o.at("save").empty()) write_file(o.at("save"), to_json(approx).dump(1) + "\n");
  r.csv.header = {"k", "side", "inner", "outer", "threshold"};
  for (const Generation& g : approx.generations())
    r.csv.add({std::to_string(g.k), format_number(g.side), format_number(g.inner), format_number(g.outer),
               std::to_string(sched.jk[static_cast<std::size_t>(g.k - 1)])});
  r.summary = "j0=" + std::to_string(sched.j0) + " approximation_error=" + format_number(err.value) +
              " jump=" + format_number(jump.value) + " gap=" + format_number(gap);
  return r;
}

Result cmd_kernel_verify(const Options& o) {
  const int dim = std::max(1, integer(o, "dim"));
  const BilinearKernel k = make_kernel(o, dim);
  SamplePlan plan;
  plan.samples = static_cast<std::size_t>(integer(o, "samples"));
  plan.s_min = number(o, "s-min");
  plan.s_max = number(o, "s-max");
  plan.seed = static_cast<std::uint64_t>(integer(o, "seed"));
  const KernelVerification v = verify_bounds(k, plan);
  Result r;
  r.json = to_json(v);
  if (std::isfinite(k.declared_decay())) r.json["decay_slope"] = decay_slope(k, number_list(o, "slope-seps"));
  r.csv.header = {"bound", "measured", "declared", "ok"};
  auto row = [&](const char* name, const BoundMeasurement& b) {
    r.csv.add({name, format_number(b.measured), format_number(b.declared), b.ok ? "1" : "0"});
  };
  row("size", v.size);
  row("regularity", v.regularity);
  row("decay", v.decay);
  r.summary = k.id() + (v.passed() ? " passed" : " failed");
  return r;
}

std::vector<Point> evaluation_points(const Options& o, int dim) {
  if (!o.at("grid").empty()) {
    const auto g = number_list(o, "grid");
    if (g.size() != 3 || g[2] < 1 || g[2] != std::floor(g[2]) || !(g[1] >= g[0]))
      throw field_error("grid", "expected lo,hi,count");
    std::vector<double> xs;
    const int count = static_cast<int>(g[2]);
    for (int i = 0; i < count; ++i) xs.push_back(count == 1 ? g[0] : g[0] + (g[1] - g[0]) * i / (count - 1));
    return points_1d(xs, dim);
  }
  return points_1d(number_list(o, "xs"), dim);
}

Result cmd_commutator(const Options& o) {
  const int dim = infer_dim(o, {"f", "g", "b"});
  const BilinearKernel k = make_kernel(o, dim);
  const SupportedFunction f{make_field(o, "f", dim), parse_cube(o, "f-box", dim)};
  const SupportedFunction g{make_field(o, "g", dim), parse_cube(o, "g-box", dim)};
  const Field b = make_field(o, "b", dim);
  const std::vector<Point> xs = evaluation_points(o, dim);
  const int res = integer(o, "resolution");
  const std::string mode = o.at("mode");
  Result r;
  if (mode == "gap") {
    const BilinearKernel base = make_kernel([&] {
      Options copy = o;
      copy["eta"] = "0";
      return copy;
    }(), dim);
    const TruncationGapReport rep = truncation_gap(b, base, number_list(o, "etas"), f, g, xs, res);
    r.json = to_json(rep);
    r.csv.header = {"eta", "sup_gap", "constant"};
    for (const GapEntry& e : rep.entries)
      r.csv.add({format_number(e.eta), format_number(e.sup_gap), format_number(e.constant)});
    r.summary = "slope=" + format_number(rep.slope) + " constant_ratio=" + format_number(rep.constant_ratio);
    return r;
  }
  OperatorOutput out;
  if (mode == "T") {
    out = apply_T(k, f, g, xs, res);
  } else if (mode == "commutator") {
    const int i = integer(o, "i");
    if (i != 1 && i != 2) throw field_error("i", "must be 1 or 2");
    out = commutator(i, b, k, f, g, xs, res);
  } else {
    throw field_error("mode", "expected commutator, T or gap");
  }
  r.json = to_json(out);
  r.csv = output_csv(out);
  double m = 0.0;
  for (double v : out.values) m = std::max(m, std::abs(v));
  r.summary = out.quantity + " sup=" + format_number(m);
  return r;
}

Result cmd_weights(const Options& o) {
  const int dim = infer_dim(o, {"w1", "w2"});
  const VectorWeight vw(make_field(o, "w1", dim), make_field(o, "w2", dim), number(o, "p1"), number(o, "p2"));
  const auto cubes = weight_scan_family(dim, number(o, "extent"), integer(o, "levels"));
  const WeightConstant c = vector_ap_constant(vw, cubes, integer(o, "resolution"));
  Result r;
  r.json = {{"p1", vw.p1()}, {"p2", vw.p2()}, {"p", vw.p()}, {"constant", c.value}};
  r.json["argmax"] = to_json(c.argmax);
  r.json["scan_size"] = c.cubes;
  r.csv.header = {"p1", "p2", "p", "constant", "argmax_center", "argmax_side", "scan_size"};
  std::string center;
  for (double x : c.argmax.center()) center += (center.empty() ? "" : " ") + format_number(x);
  r.csv.add({format_number(vw.p1()), format_number(vw.p2()), format_number(vw.p()), format_number(c.value), center,
             format_number(c.argmax.side()), std::to_string(c.cubes)});
  r.summary = "constant=" + format_number(c.value);
  return r;
}

Result cmd_compactness(const Options& o) {
  const int dim = 1;
  if (integer(o, "dim") > 1) throw field_error("dim", "the compactness harness runs in one dimension");
  const std::string family = o.at("family");
  const double extent = number(o, "grid-extent"), spacing = number(o, "spacing");
  if (!(extent > 0.0) || !(spacing > 0.0)) throw field_error("grid-extent", "grid extent and spacing must be positive");
  const auto cells = static_cast<std::size_t>(std::llround(2.0 * extent / spacing));
  const UniformGrid grid{{-extent}, spacing, {cells}};
  const Field one = catalog::constant(dim, 1.0);
  std::vector<SampledFunction> members;
  double p = number(o, "p");
  Json family_json;
  if (family == "zero") {
    members.push_back(SampledFunction(grid, std::vector<double>(grid.size(), 0.0)));
  } else if (family == "translates") {
    for (double c : number_list(o, "centers"))
      members.push_back(SampledFunction::sample(catalog::bump({c}, 1.0), grid));
  } else if (family == "commutator") {
    const VectorWeight vw(one, one, number(o, "p1"), number(o, "p2"));
    p = vw.p();
    const Field b = make_field(o, "b", dim);
    const BilinearKernel k = make_kernel(o, dim);
    const auto centers = number_list(o, "centers");
    const auto scales = number_list(o, "scales");
    if (centers.size() != scales.size() || centers.size() < 2)
      throw field_error("scales", "needs one scale per centre and at least two centres");
    std::vector<InputPair> pairs;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      const std::size_t j = (i + 1) % centers.size();
      const SupportedFunction f{catalog::bump({centers[i]}, scales[i]), Cube({centers[i]}, scales[i])};
      const SupportedFunction g{catalog::bump({centers[j]}, scales[j]), Cube({centers[j]}, scales[j])};
      pairs.push_back({normalized(f, one, vw.p1()), normalized(g, one, vw.p2())});
    }
    const CommutatorFamily fam = commutator_family(b, k, pairs, vw, grid, integer(o, "resolution"));
    members = fam.sampled();
    family_json["kernel_id"] = k.id();
    family_json["b_id"] = b.label();
  } else {
    throw field_error("family", "expected zero, translates or commutator");
  }
  std::vector<Point> ts;
  for (double t : number_list(o, "t")) ts.push_back({t});
  const CompactnessReport rep = fk_check(members, one, p, number_list(o, "A"), ts);
  Result r;
  r.json = to_json(rep);
  r.json["family"] = family_json.is_null() ? Json::object() : family_json;
  r.json["family"]["name"] = family;
  r.json["p"] = p;
  r.csv.header = {"curve", "parameter", "value"};
  for (const auto& c : rep.tail_norms) r.csv.add({"tail", format_number(c.parameter), format_number(c.value)});
  for (const auto& c : rep.modulus) r.csv.add({"modulus", format_number(c.parameter), format_number(c.value)});
  r.summary = "bounded=" + std::to_string(rep.bounded_ok) + " tail=" + std::to_string(rep.tail_ok) +
              " modulus=" + std::to_string(rep.modulus_ok);
  return r;
}

const std::string kRequired = "<required>";

struct Command {
  std::string name;
  std::string help;
  std::vector<std::tuple<std::string, std::string, std::string>> options;  // name, default, help
  Result (*handler)(const Options&);
};

const std::vector<Command>& table() {
  static const std::vector<Command> cmds = {
      {"oscillation",
       "mean-oscillation profiles and classification",
       {{"f", kRequired, "catalog name or expression in x1..x4"},
        {"dim", "0", "dimension (0: infer)"},
        {"mode", "classify", "classify, small, translation, large or annulus"},
        {"cube", "[-0.5,0.5]", "base cube for translation mode, e.g. [-pi/2,pi/2]"},
        {"radii", "10,100,1000", "translation or annulus radii"},
        {"scales", "", "cube volumes for small or large mode"},
        {"tol", "", "classification tolerance"},
        {"extent", "", "centre lattice half width"},
        {"spacing", "", "centre lattice spacing"},
        {"resolution", "0", "quadrature points per axis (0: default)"}},
       cmd_oscillation},
      {"approx",
       "threshold selection, dyadic projection and mollification",
       {{"f", "smoothed_log", "catalog name or expression"},
        {"dim", "0", "dimension (0: infer)"},
        {"eps", kRequired, "oscillation bound epsilon"},
        {"kmax", "6", "number of annuli"},
        {"extent", "1e4", "certification scan half width"},
        {"resolution", "0", "quadrature points per axis (0: default)"},
        {"error-extent", "0", "test cubes restricted to this half width (0: covered box)"},
        {"gap-window", "256", "half width of the |g - h| probe lines"},
        {"decay-radii", "none", "radii for derivative decay, or none"},
        {"save", "", "also write the approximation to this JSON file"}},
       cmd_approx},
      {"kernel-verify",
       "sampled size, regularity and decay bounds of a kernel",
       {{"kernel", "reference", "reference, singular or far_piece"},
        {"dim", "1", "dimension"},
        {"eta", "0", "truncation level (0: none)"},
        {"A", "8", "cutoff parameter of far_piece"},
        {"samples", "20000", "sample count"},
        {"s-min", "1e-3", "smallest separation"},
        {"s-max", "1e3", "largest separation"},
        {"seed", "24301", "sampler seed"},
        {"slope-seps", "10,20,40,100,1000", "separations for the decay slope"}},
       cmd_kernel_verify},
      {"commutator",
       "bilinear operator, commutators and the truncation gap",
       {{"mode", "commutator", "commutator, T or gap"},
        {"i", "1", "commutator slot"},
        {"b", "smoothed_log", "symbol"},
        {"f", kRequired, "first input"},
        {"g", kRequired, "second input"},
        {"f-box", kRequired, "support box of f"},
        {"g-box", kRequired, "support box of g"},
        {"kernel", "reference", "reference, singular or far_piece"},
        {"eta", "0", "truncation level (0: none)"},
        {"A", "8", "cutoff parameter of far_piece"},
        {"dim", "0", "dimension (0: infer)"},
        {"xs", "3", "evaluation points (first coordinate)"},
        {"grid", "", "evaluation grid lo,hi,count (overrides xs)"},
        {"etas", "0.5,0.25,0.125", "truncation levels for gap mode"},
        {"resolution", "0", "quadrature points per axis (0: default)"}},
       cmd_commutator},
      {"weights",
       "vector A_p constant over a cube scan",
       {{"w1", kRequired, "first weight"},
        {"w2", kRequired, "second weight"},
        {"p1", kRequired, "first exponent in (1, 16]"},
        {"p2", kRequired, "second exponent in (1, 16]"},
        {"dim", "0", "dimension (0: infer)"},
        {"extent", "10", "scan half width"},
        {"levels", "6", "dyadic levels in the scan"},
        {"resolution", "0", "quadrature points per axis (0: default)"}},
       cmd_weights},
      {"compactness",
       "finite-family Frechet-Kolmogorov diagnostics",
       {{"family", "commutator", "zero, translates or commutator"},
        {"b", "smoothed_log", "symbol"},
        {"kernel", "singular", "reference, singular or far_piece"},
        {"eta", "0.25", "truncation level"},
        {"A", "5,10,20", "tail radii"},
        {"t", "0.04,0.02,0.01", "translation lengths"},
        {"p", "2", "norm exponent (commutator family: from p1, p2)"},
        {"p1", "4", "first input exponent"},
        {"p2", "4", "second input exponent"},
        {"centers", "-3.5,-2,-1,0,0.5,1.5,2.5,4", "bump centres"},
        {"scales", "0.5,1,2,1.5,0.75,2,1,0.5", "bump radii (commutator family)"},
        {"grid-extent", "40", "output grid half width"},
        {"spacing", "0.01", "output grid spacing"},
        {"dim", "1", "dimension (one only)"},
        {"resolution", "0", "quadrature points per axis (0: default)"}},
       cmd_compactness},
  };
  return cmds;
}

}  // namespace

std::vector<std::string> commands() {
  std::vector<std::string> out;
  for (const auto& c : table()) out.push_back(c.name);
  return out;
}

std::vector<std::string> config_arguments(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw PreconditionError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw PreconditionError("config line " + std::to_string(lineno) + ": empty key");
    out.push_back("--" + key);
    out.push_back(value);
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    err << "usage: xmo <command> [options]; commands:";
    for (const auto& c : commands()) err << ' ' << c;
    err << '\n';
    return kUnknownCommand;
  }
  const auto it = std::find_if(table().begin(), table().end(), [&](const Command& c) { return c.name == args[0]; });
  if (it == table().end()) {
    if (args[0] == "--version") {
      out << kVersion << '\n';
      return kOk;
    }
    err << "unknown command '" << args[0] << "'\n";
    return kUnknownCommand;
  }
  const Command& cmd = *it;
  try {
    // Config file values come first so command-line flags override them.
    std::vector<std::string> argv{args.begin() + 1, args.end()};
    for (std::size_t i = 0; i < argv.size(); ++i) {
      std::string path;
      if (argv[i] == "--config" && i + 1 < argv.size()) path = argv[i + 1];
      if (argv[i].rfind("--config=", 0) == 0) path = argv[i].substr(9);
      if (!path.empty()) {
        auto extra = config_arguments(read_file(path));
        argv.insert(argv.begin(), extra.begin(), extra.end());
        break;
      }
    }

    Options opts;
    std::string config_path, out_prefix = "xmo-" + cmd.name;
    int threads = 1;
    CLI::App app(cmd.help, "xmo " + cmd.name);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.add_option("--config", config_path, "key = value file");
    app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256));
    app.add_option("--out", out_prefix, "report path prefix (.json and .csv are appended)");
    for (const auto& [name, def, help] : cmd.options) {
      opts[name] = def == kRequired ? "" : def;
      app.add_option("--" + name, opts[name], help);
    }
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::ParseError& e) {
      err << cmd.name << ": " << e.what() << '\n';
      return kPrecondition;
    }
    for (const auto& [name, def, help] : cmd.options)
      if (def == kRequired && trim(opts[name]).empty()) throw field_error(name, "is required");
    set_thread_count(threads);

    Result r = cmd.handler(opts);
    Json config = Json::object();
    for (const auto& [k, v] : opts) config[k] = v;
    config["threads"] = threads;
    Json report{{"command", cmd.name}, {"version", kVersion}, {"config", config}, {"result", r.json}};
    write_file(out_prefix + ".json", report.dump(2) + "\n");
    write_file(out_prefix + ".csv", r.csv.str());
    out << cmd.name << ": " << r.summary << '\n';
    return kOk;
  } catch (const DomainError& e) {
    err << cmd.name << ": domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const Error& e) {
    err << cmd.name << ": " << e.what() << '\n';
    return kPrecondition;
  } catch (const nlohmann::json::exception& e) {
    err << cmd.name << ": " << e.what() << '\n';
    return kPrecondition;
  }
}

}  // namespace xmo::cli
