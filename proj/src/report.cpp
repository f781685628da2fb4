#include "xmo/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace xmo {

namespace {

// JSON has no infinities; they are written as strings.
Json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Json nums(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

Json points(const std::vector<Point>& xs) {
  Json a = Json::array();
  for (const Point& x : xs) a.push_back(nums(x));
  return a;
}

std::string join_coords(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ' ';
    s += format_number(p[i]);
  }
  return s;
}

Json curve(const std::vector<CurvePoint>& c) {
  Json a = Json::array();
  for (const CurvePoint& p : c) a.push_back({{"parameter", num(p.parameter)}, {"value", num(p.value)}});
  return a;
}

}  // namespace

Json to_json(const Cube& q) { return {{"center", nums(q.center())}, {"half_side", num(q.half_side())}}; }

Cube cube_from_json(const Json& j) {
  return Cube(j.at("center").get<std::vector<double>>(), j.at("half_side").get<double>());
}

Json to_json(const OscillationProfile& p) {
  Json entries = Json::array();
  for (const ProfileEntry& e : p.entries)
    entries.push_back({{"parameter", num(e.parameter)},
                       {"value", num(e.value)},
                       {"argmax", to_json(e.argmax)},
                       {"cube_count", e.cube_count}});
  return {{"kind", p.kind}, {"resolution", p.resolution}, {"entries", entries}};
}

Json to_json(const ScanConfig& c) {
  return {{"dim", c.dim},
          {"tolerance", c.tolerance},
          {"extent", c.extent},
          {"center_spacing", c.center_spacing},
          {"resolution", c.resolution},
          {"large_resolution", c.large_resolution},
          {"small_scales", nums(c.small_scales)},
          {"translation_half_sides", nums(c.translation_half_sides)},
          {"translation_radii", nums(c.translation_radii)},
          {"large_scales", nums(c.large_scales)},
          {"annulus_radii", nums(c.annulus_radii)}};
}

Json to_json(const Diagnosis& d) {
  return {{"vmo_smallscale_ok", d.vmo_smallscale_ok},
          {"xmo_translation_ok", d.xmo_translation_ok},
          {"cmo_largescale_ok", d.cmo_largescale_ok},
          {"small_scale", to_json(d.small_scale)},
          {"translation", to_json(d.translation)},
          {"large_scale", to_json(d.large_scale)},
          {"annulus", to_json(d.annulus)},
          {"config", to_json(d.config)},
          {"note", "finite-scan evidence, not a membership proof"}};
}

Json to_json(const Certificate& c) {
  return {{"stage", c.stage},         {"threshold", c.threshold}, {"bound", num(c.bound)},
          {"observed", num(c.observed)}, {"cubes", c.cubes},       {"worst", to_json(c.worst)}};
}

Json to_json(const ThresholdSchedule& s) {
  Json certs = Json::array();
  for (const Certificate& c : s.certificates) certs.push_back(to_json(c));
  return {{"epsilon", s.epsilon},
          {"dim", s.dim},
          {"j0", s.j0},
          {"jk", s.jk},
          {"certificates", certs},
          {"scan",
           {{"extent", s.scan.extent},
            {"small_side_factors", nums(s.scan.small_side_factors)},
            {"resolution", s.scan.resolution},
            {"min_j0", s.scan.min_j0}}}};
}

ThresholdSchedule schedule_from_json(const Json& j) {
  ThresholdSchedule s;
  s.epsilon = j.at("epsilon").get<double>();
  s.dim = j.at("dim").get<int>();
  s.j0 = j.at("j0").get<int>();
  s.jk = j.at("jk").get<std::vector<int>>();
  for (const Json& c : j.at("certificates")) {
    Certificate cert;
    cert.stage = c.at("stage").get<std::string>();
    cert.threshold = c.at("threshold").get<int>();
    cert.bound = c.at("bound").get<double>();
    cert.observed = c.at("observed").get<double>();
    cert.cubes = c.at("cubes").get<std::size_t>();
    cert.worst = cube_from_json(c.at("worst"));
    s.certificates.push_back(cert);
  }
  const Json& scan = j.at("scan");
  s.scan.extent = scan.at("extent").get<double>();
  s.scan.small_side_factors = scan.at("small_side_factors").get<std::vector<double>>();
  s.scan.resolution = scan.at("resolution").get<int>();
  s.scan.min_j0 = scan.at("min_j0").get<int>();
  s.validate();
  return s;
}

Json to_json(const DyadicApproximation& a) {
  Json gens = Json::array();
  for (const Generation& g : a.generations()) {
    Json vals = Json::array();
    for (double v : g.values) vals.push_back(std::isnan(v) ? Json(nullptr) : Json(v));
    gens.push_back({{"k", g.k},
                    {"side", g.side},
                    {"inner", g.inner},
                    {"outer", g.outer},
                    {"per_axis", g.per_axis},
                    {"values", vals}});
  }
  return {{"schedule", to_json(a.schedule())},
          {"dim", a.dim()},
          {"filled", a.filled()},
          {"cube_count", a.cube_count()},
          {"generations", gens}};
}

DyadicApproximation approximation_from_json(const Json& j) {
  try {
    ThresholdSchedule s = schedule_from_json(j.at("schedule"));
    std::vector<Generation> gens;
    for (const Json& gj : j.at("generations")) {
      Generation g;
      g.k = gj.at("k").get<int>();
      g.side = gj.at("side").get<double>();
      g.inner = gj.at("inner").get<double>();
      g.outer = gj.at("outer").get<double>();
      g.per_axis = gj.at("per_axis").get<std::size_t>();
      for (const Json& v : gj.at("values"))
        g.values.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>());
      gens.push_back(std::move(g));
    }
    return DyadicApproximation::restore(std::move(s), j.at("dim").get<int>(), std::move(gens),
                                        j.at("filled").get<bool>());
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed approximation document: ") + e.what());
  }
}

Json to_json(const JumpReport& r) {
  return {{"value", num(r.value)}, {"first", to_json(r.first)}, {"second", to_json(r.second)}, {"pairs", r.pairs}};
}

Json to_json(const SupEstimate& s) {
  return {{"value", num(s.value)}, {"argmax", s.argmax}, {"cube_count", s.cube_count}};
}

Json to_json(const DecayEntry& e) {
  return {{"radius", num(e.radius)}, {"value", num(e.value)}, {"argmax", nums(e.argmax)}, {"samples", e.samples}};
}

Json to_json(const BoundMeasurement& b) {
  return {{"measured", num(b.measured)}, {"declared", num(b.declared)}, {"ok", b.ok},
          {"witness", nums(b.witness)},  {"witness_s", num(b.witness_s)}, {"samples", b.samples}};
}

Json to_json(const KernelVerification& v) {
  return {{"kernel_id", v.kernel_id},
          {"seed", v.seed},
          {"size", to_json(v.size)},
          {"regularity", to_json(v.regularity)},
          {"decay", to_json(v.decay)},
          {"passed", v.passed()}};
}

Json to_json(const OperatorOutput& o) {
  return {{"quantity", o.quantity},
          {"xs", points(o.xs)},
          {"values", nums(o.values)},
          {"quadrature_box", {{"f", to_json(o.box_f)}, {"g", to_json(o.box_g)}}},
          {"resolution", o.resolution},
          {"kernel_id", o.kernel_id},
          {"b_id", o.b_id},
          {"f_id", o.f_id},
          {"g_id", o.g_id},
          {"form_difference", num(o.form_difference)},
          {"consistent", o.consistent},
          {"cross_checked", o.cross_checked}};
}

Json to_json(const TruncationGapReport& r) {
  Json entries = Json::array();
  for (const GapEntry& e : r.entries)
    entries.push_back({{"eta", num(e.eta)},
                       {"sup_gap", num(e.sup_gap)},
                       {"argmax", nums(e.argmax)},
                       {"constant", num(e.constant)},
                       {"gaps", nums(e.gaps)}});
  return {{"entries", entries},
          {"gradient_bound", num(r.gradient_bound)},
          {"maximal", nums(r.maximal)},
          {"slope", num(r.slope)},
          {"constant_ratio", num(r.constant_ratio)}};
}

Json to_json(const WeightConstant& w) {
  return {{"value", num(w.value)}, {"argmax", to_json(w.argmax)}, {"scan_size", w.cubes}};
}

Json to_json(const CompactnessReport& r) {
  return {{"members", r.members},
          {"bounded_sup", num(r.bounded_sup)},
          {"tail_norms", curve(r.tail_norms)},
          {"modulus", curve(r.modulus)},
          {"verdict", {{"bounded", r.bounded_ok}, {"tail", r.tail_ok}, {"modulus", r.modulus_ok}}},
          {"tolerances",
           {{"bound_cap", r.tolerances.bound_cap}, {"tail", r.tolerances.tail}, {"modulus", r.tolerances.modulus}}},
          {"note", "finite family: evidence for the three conditions, not a compactness certificate"}};
}

Json to_json(const TailProfiles& t) {
  return {{"a", num(t.a)},       {"xs", points(t.xs)}, {"l1", nums(t.l1)},   {"l2", nums(t.l2)},
          {"l3", nums(t.l3)},    {"commutator", nums(t.commutator)},         {"g12", num(t.g12)},
          {"g3", num(t.g3)}};
}

Json to_json(const TranslationProfiles& t) {
  Json entries = Json::array();
  for (const TranslationEntry& e : t.entries)
    entries.push_back({{"t", num(e.t_norm)}, {"sup_l4", num(e.sup_l4)}, {"sup_l5", num(e.sup_l5)}});
  return {{"entries", entries}, {"slope_l4", num(t.slope_l4)}, {"slope_l5", num(t.slope_l5)}};
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void CsvTable::add(std::vector<std::string> row) {
  if (row.size() != header.size()) throw PreconditionError("CSV row width does not match the header");
  rows.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

CsvTable profile_csv(const OscillationProfile& p) {
  CsvTable t;
  t.header = {"parameter", "value", "argmax_center", "argmax_side", "cube_count"};
  for (const ProfileEntry& e : p.entries)
    t.add({format_number(e.parameter), format_number(e.value), join_coords(e.argmax.center()),
           format_number(e.argmax.side()), std::to_string(e.cube_count)});
  return t;
}

CsvTable output_csv(const OperatorOutput& o) {
  CsvTable t;
  t.header = {"x", "value"};
  for (std::size_t i = 0; i < o.xs.size(); ++i) t.add({join_coords(o.xs[i]), format_number(o.values[i])});
  return t;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw Error("failed writing " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace xmo
