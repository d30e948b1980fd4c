// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "muck/error.hpp"
#include "muck/homogeneity.hpp"
#include "muck/isotropy.hpp"

namespace muck::cli {

std::string_view to_string(Experiment e) noexcept {
  switch (e) {
    case Experiment::Mass: return "mass";
    case Experiment::ApScan: return "ap-scan";
    case Experiment::Doubling: return "doubling";
    case Experiment::SubsetScan: return "subset-scan";
    case Experiment::Homogeneity: return "homogeneity";
    case Experiment::Isotropy: return "isotropy";
  }
  return "mass";
}

namespace {

// Maps a key path such as {"params", "radii"} back to a source line by
// searching for each quoted key after the previous one. Good enough for
// diagnostics; array elements report the line of their enclosing key.
class Locator {
 public:
  explicit Locator(const std::string& text) : text_(text) {}

  std::size_t line_of(const std::vector<std::string>& path) const {
    std::size_t pos = 0;
    bool found_any = false;
    for (const auto& key : path) {
      const auto at = text_.find('"' + key + '"', pos);
      if (at == std::string::npos) break;
      pos = at;
      found_any = true;
    }
    if (!found_any) return 0;
    return line_at(pos);
  }

  std::size_t line_at(std::size_t byte) const {
    byte = std::min(byte, text_.size());
    return 1 + static_cast<std::size_t>(
                   std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
  }

 private:
  const std::string& text_;
};

std::string join(const std::vector<std::string>& path) {
  std::string s;
  for (const auto& k : path) s += (s.empty() ? "" : ".") + k;
  return s;
}

// Reads typed values out of a JSON object, attributing errors to a path.
class Reader {
 public:
  Reader(const Locator& loc, const Json& node, std::vector<std::string> path)
      : loc_(loc), node_(node), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    auto p = path_;
    if (!key.empty()) p.push_back(key);
    throw ConfigError(loc_.line_of(p), join(p) + ": " + msg);
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  void allow_only(std::initializer_list<const char*> keys) const {
    for (const auto& [k, v] : node_.items()) {
      if (std::none_of(keys.begin(), keys.end(),
                       [&](const char* a) { return k == a; }))
        fail(k, "unknown key");
    }
  }

  const Json& raw(const std::string& key) const {
    if (!has(key)) fail(key, "required key is missing");
    return node_.at(key);
  }

  Reader sub(const std::string& key) const {
    const Json& j = raw(key);
    if (!j.is_object()) fail(key, "expected an object");
    auto p = path_;
    p.push_back(key);
    return Reader(loc_, j, p);
  }

  double number(const std::string& key) const {
    const Json& j = raw(key);
    if (!j.is_number()) fail(key, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(key, "must be finite");
    return v;
  }

  double number_or(const std::string& key, double def) const {
    return has(key) ? number(key) : def;
  }

  std::uint64_t unsigned_int(const std::string& key) const {
    const Json& j = raw(key);
    if (!j.is_number_unsigned()) fail(key, "expected a non-negative integer");
    return j.get<std::uint64_t>();
  }

  int integer_or(const std::string& key, int def) const {
    if (!has(key)) return def;
    const Json& j = raw(key);
    if (!j.is_number_integer()) fail(key, "expected an integer");
    return j.get<int>();
  }

  bool boolean_or(const std::string& key, bool def) const {
    if (!has(key)) return def;
    const Json& j = raw(key);
    if (!j.is_boolean()) fail(key, "expected true or false");
    return j.get<bool>();
  }

  std::string string(const std::string& key) const {
    const Json& j = raw(key);
    if (!j.is_string()) fail(key, "expected a string");
    return j.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key) const {
    const Json& j = raw(key);
    if (!j.is_array() || j.empty()) fail(key, "expected a non-empty array of numbers");
    std::vector<double> out;
    for (const auto& e : j) {
      if (!e.is_number()) fail(key, "expected a non-empty array of numbers");
      out.push_back(e.get<double>());
      if (!std::isfinite(out.back())) fail(key, "entries must be finite");
    }
    return out;
  }

  Point point(const std::string& key) const {
    const auto v = numbers(key);
    if (v.size() > 16) fail(key, "dimension exceeds 16");
    return Point(std::span<const double>(v));
  }

  Point point_dim(const std::string& key, std::size_t dim) const {
    Point x = point(key);
    if (x.dim() != dim)
      fail(key, "expected " + std::to_string(dim) + " coordinates, got " +
                    std::to_string(x.dim()));
    return x;
  }

  std::vector<Point> points(const std::string& key, std::size_t dim) const {
    const Json& j = raw(key);
    if (!j.is_array() || j.empty()) fail(key, "expected a non-empty array of points");
    std::vector<Point> out;
    for (const auto& e : j) {
      if (!e.is_array() || e.size() != dim)
        fail(key, "every point needs " + std::to_string(dim) + " coordinates");
      std::vector<double> c;
      for (const auto& x : e) {
        if (!x.is_number()) fail(key, "coordinates must be numbers");
        c.push_back(x.get<double>());
      }
      out.emplace_back(std::span<const double>(c));
    }
    return out;
  }

  // Runs a library constructor, turning its errors into located ones.
  template <class F>
  auto guard(const std::string& key, F&& f) const {
    try {
      return f();
    } catch (const Error& e) {
      fail(key, e.what());
    }
  }

 private:
  const Locator& loc_;
  const Json& node_;
  std::vector<std::string> path_;
};

Json to_json(const Point& x) {
  Json a = Json::array();
  for (double c : x.coords()) a.push_back(c);
  return a;
}

Json to_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double c : v) a.push_back(c);
  return a;
}

std::pair<Density, Json> parse_density(const Reader& r) {
  const std::string kind = r.string("kind");
  Json echo;
  echo["kind"] = kind;
  auto check_dim = [&](std::size_t dim) {
    if (r.has("dim") && r.unsigned_int("dim") != dim)
      r.fail("dim", "does not match the coordinates given (" + std::to_string(dim) + ")");
  };

  if (kind == "constant") {
    r.allow_only({"kind", "dim", "value"});
    const auto dim = static_cast<std::size_t>(r.unsigned_int("dim"));
    const double value = r.number_or("value", 1.0);
    echo["dim"] = dim;
    echo["value"] = value;
    return {r.guard("value", [&] { return Density::constant(dim, value); }), echo};
  }
  if (kind == "radial_power") {
    r.allow_only({"kind", "dim", "center", "beta"});
    Point c = r.has("center") ? r.point("center")
                              : Point::zero(static_cast<std::size_t>(r.unsigned_int("dim")));
    check_dim(c.dim());
    const double beta = r.number("beta");
    echo["dim"] = c.dim();
    echo["center"] = to_json(c);
    echo["beta"] = beta;
    return {r.guard("beta", [&] { return Density::radial_power(c, beta); }), echo};
  }
  if (kind == "product") {
    r.allow_only({"kind", "dim", "factors"});
    const Json& fs = r.raw("factors");
    if (!fs.is_array() || fs.empty()) r.fail("factors", "expected a non-empty array");
    std::vector<PowerFactor> factors;
    Json fe = Json::array();
    for (const auto& f : fs) {
      if (!f.is_object()) r.fail("factors", "each factor needs center and beta");
      if (!f.contains("center") || !f.contains("beta") ||
          !f.at("center").is_array() || !f.at("beta").is_number())
        r.fail("factors", "each factor needs center (array) and beta (number)");
      std::vector<double> c = f.at("center").get<std::vector<double>>();
      if (c.empty() || c.size() > 16) r.fail("factors", "center dimension must be 1..16");
      factors.push_back({Point(std::span<const double>(c)), f.at("beta").get<double>()});
      fe.push_back(Json{{"center", to_json(factors.back().center)},
                        {"beta", factors.back().beta}});
    }
    check_dim(factors.front().center.dim());
    echo["dim"] = factors.front().center.dim();
    echo["factors"] = fe;
    return {r.guard("factors", [&] { return Density::product(factors); }), echo};
  }
  if (kind == "distance_power") {
    r.allow_only({"kind", "dim", "set", "beta"});
    const Reader s = r.sub("set");
    const std::string sk = s.string("kind");
    Json se;
    se["kind"] = sk;
    std::optional<GeometricSet> set;
    if (sk == "hyperplane") {
      s.allow_only({"kind", "normal", "offset"});
      Point n = s.point("normal");
      const double off = s.number_or("offset", 0.0);
      se["normal"] = to_json(n);
      se["offset"] = off;
      set = s.guard("normal", [&] { return GeometricSet::hyperplane(n, off); });
    } else if (sk == "sphere") {
      s.allow_only({"kind", "center", "radius"});
      Point c = s.point("center");
      const double rad = s.number("radius");
      se["center"] = to_json(c);
      se["radius"] = rad;
      set = s.guard("radius", [&] { return GeometricSet::sphere(c, rad); });
    } else if (sk == "point_set") {
      s.allow_only({"kind", "points"});
      const Json& pts = s.raw("points");
      if (!pts.is_array() || pts.empty() || !pts.front().is_array())
        s.fail("points", "expected a non-empty array of points");
      auto ps = s.points("points", pts.front().size());
      Json pe = Json::array();
      for (const auto& p : ps) pe.push_back(to_json(p));
      se["points"] = pe;
      set = s.guard("points", [&] { return GeometricSet::point_set(ps); });
    } else {
      s.fail("kind", "unknown set kind '" + sk + "' (hyperplane, sphere, point_set)");
    }
    check_dim(set->dim());
    const double beta = r.number("beta");
    echo["dim"] = set->dim();
    echo["set"] = se;
    echo["beta"] = beta;
    return {r.guard("beta", [&] { return Density::distance_power(*set, beta); }), echo};
  }
  if (kind == "exponential") {
    r.allow_only({"kind", "dim", "direction", "rate"});
    Point u = r.has("direction") ? r.point("direction")
                                 : Point::unit(static_cast<std::size_t>(r.unsigned_int("dim")), 0);
    check_dim(u.dim());
    const double rate = r.number_or("rate", 1.0);
    echo["dim"] = u.dim();
    echo["direction"] = to_json(u);
    echo["rate"] = rate;
    return {r.guard("direction", [&] { return Density::exponential(u, rate); }), echo};
  }
  r.fail("kind", "unknown density kind '" + kind +
                     "' (constant, radial_power, product, distance_power, exponential)");
}

Ball parse_ball(const Reader& r, std::size_t dim, Json& echo) {
  r.allow_only({"center", "radius"});
  Point c = r.point_dim("center", dim);
  const double radius = r.number("radius");
  echo = Json{{"center", to_json(c)}, {"radius", radius}};
  return r.guard("radius", [&] { return Ball(c, radius); });
}

std::vector<double> increasing_radii(const Reader& r, const std::string& key) {
  auto radii = r.numbers(key);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
      r.fail(key, "radii must be positive and strictly increasing");
  }
  return radii;
}

Point unit_vector(const Reader& r, const std::string& key, std::size_t dim) {
  Point v = r.point_dim(key, dim);
  const double n = v.norm();
  if (!(n > 0.0)) r.fail(key, "direction must be nonzero");
  return v * (1.0 / n);
}

void parse_params(ExperimentConfig& c, const Reader& r, Json& echo) {
  const std::size_t dim = c.density->dim();
  switch (c.experiment) {
    case Experiment::Mass: {
      r.allow_only({"region", "closed_form"});
      const Reader g = r.sub("region");
      g.allow_only({"center", "radius", "inner", "outer"});
      Point ctr = g.point_dim("center", dim);
      double inner = 0.0;
      double outer = 0.0;
      if (g.has("radius")) {
        if (g.has("inner") || g.has("outer"))
          g.fail("radius", "give either radius or inner/outer, not both");
        outer = g.number("radius");
      } else {
        inner = g.number_or("inner", 0.0);
        outer = g.number("outer");
      }
      if (!(outer > inner) || inner < 0.0)
        g.fail(g.has("radius") ? "radius" : "outer", "need outer > inner >= 0");
      c.region = g.guard("center", [&] { return Region::shell(ctr, inner, outer); });
      c.closed_form = r.boolean_or("closed_form", true);
      echo["region"] = Json{{"center", to_json(ctr)}, {"inner", inner}, {"outer", outer}};
      echo["closed_form"] = c.closed_form;
      break;
    }
    case Experiment::ApScan: {
      r.allow_only({"p", "family", "j_min", "j_max", "centers", "radii"});
      c.p = r.number_or("p", 2.0);
      if (!(c.p > 1.0)) r.fail("p", "p must exceed 1");
      c.family.kind = r.has("family") ? r.string("family") : "standard";
      echo["p"] = c.p;
      echo["family"] = c.family.kind;
      if (c.family.kind == "explicit") {
        c.family.centers = r.points("centers", dim);
        c.family.radii = increasing_radii(r, "radii");
        Json ce = Json::array();
        for (const auto& x : c.family.centers) ce.push_back(to_json(x));
        echo["centers"] = ce;
        echo["radii"] = to_json(c.family.radii);
      } else if (c.family.kind == "standard" || c.family.kind == "singularities") {
        c.family.j_min = r.integer_or("j_min", -6);
        c.family.j_max = r.integer_or("j_max", 12);
        if (c.family.j_max < c.family.j_min) r.fail("j_max", "must be >= j_min");
        if (c.family.j_min < -60 || c.family.j_max > 60)
          r.fail("j_min", "radius exponents must lie in [-60, 60]");
        echo["j_min"] = c.family.j_min;
        echo["j_max"] = c.family.j_max;
      } else {
        r.fail("family", "expected standard, singularities or explicit");
      }
      break;
    }
    case Experiment::Doubling:
    case Experiment::SubsetScan: {
      const bool subset = c.experiment == Experiment::SubsetScan;
      if (subset)
        r.allow_only({"ball", "p", "C", "thetas"});
      else
        r.allow_only({"ball", "p", "C"});
      Json be;
      c.ball = parse_ball(r.sub("ball"), dim, be);
      echo["ball"] = be;
      c.p = r.number_or("p", 2.0);
      if (!(c.p > 1.0)) r.fail("p", "p must exceed 1");
      echo["p"] = c.p;
      if (r.has("C")) {
        c.ap_constant = r.number("C");
        if (!(*c.ap_constant >= 1.0)) r.fail("C", "an A_p constant is at least 1");
        echo["C"] = *c.ap_constant;
      } else {
        echo["C"] = "estimate";
      }
      if (subset) {
        c.thetas = r.has("thetas")
                       ? r.numbers("thetas")
                       : std::vector<double>{0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.75, 0.9};
        for (double t : c.thetas)
          if (!(t > 0.0 && t < 1.0)) r.fail("thetas", "every theta must lie in (0, 1)");
        echo["thetas"] = to_json(c.thetas);
      }
      break;
    }
    case Experiment::Homogeneity: {
      r.allow_only({"x1", "x2", "radii", "tol"});
      c.x1 = r.point_dim("x1", dim);
      c.x2 = r.point_dim("x2", dim);
      c.radii = r.has("radii") ? increasing_radii(r, "radii")
                               : default_schedule(c.x1, c.x2);
      const double d = distance(c.x1, c.x2);
      if (!(c.radii.front() > 2.0 * d))
        r.fail("radii", "the first radius must exceed 2|x1 - x2| = " + std::to_string(2.0 * d));
      c.tol = r.number_or("tol", kHomogeneityTol);
      if (!(c.tol > 0.0)) r.fail("tol", "must be positive");
      echo["x1"] = to_json(c.x1);
      echo["x2"] = to_json(c.x2);
      echo["radii"] = to_json(c.radii);
      echo["tol"] = c.tol;
      break;
    }
    case Experiment::Isotropy: {
      r.allow_only({"x1", "v1", "x2", "v2", "radii", "tol"});
      c.x1 = r.point_dim("x1", dim);
      c.x2 = r.point_dim("x2", dim);
      c.v1 = unit_vector(r, "v1", dim);
      c.v2 = unit_vector(r, "v2", dim);
      c.radii = r.has("radii")
                    ? increasing_radii(r, "radii")
                    : default_isotropy_schedule(*c.density, Ray{c.x1, c.v1},
                                                Ray{c.x2, c.v2});
      c.tol = r.number_or("tol", kIsotropyTol);
      if (!(c.tol > 0.0)) r.fail("tol", "must be positive");
      echo["x1"] = to_json(c.x1);
      echo["v1"] = to_json(c.v1);
      echo["x2"] = to_json(c.x2);
      echo["v2"] = to_json(c.v2);
      echo["radii"] = to_json(c.radii);
      echo["tol"] = c.tol;
      break;
    }
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const Overrides& ov) {
  const Locator loc(text);
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(loc.line_at(e.byte == 0 ? 0 : e.byte - 1),
                      std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError(1, "top level must be a JSON object");
  const Reader r(loc, root, {});
  r.allow_only({"experiment", "seed", "density", "budget", "params", "output"});

  ExperimentConfig c;
  const std::string kind = r.string("experiment");
  bool known = false;
  for (auto e : {Experiment::Mass, Experiment::ApScan, Experiment::Doubling,
                 Experiment::SubsetScan, Experiment::Homogeneity, Experiment::Isotropy}) {
    if (kind == to_string(e)) {
      c.experiment = e;
      known = true;
    }
  }
  if (!known)
    r.fail("experiment", "unknown experiment '" + kind +
                             "' (mass, ap-scan, doubling, subset-scan, homogeneity, isotropy)");

  if (ov.seed) {
    c.seed = *ov.seed;
  } else {
    if (!r.has("seed")) r.fail("seed", "a seed is required (set it here or pass --seed)");
    c.seed = r.unsigned_int("seed");
  }

  Json density_echo;
  std::tie(c.density, density_echo) = parse_density(r.sub("density"));

  if (r.has("budget")) {
    const Reader b = r.sub("budget");
    b.allow_only({"samples", "chunk_size", "abs_tol", "rel_tol", "max_panels"});
    if (b.has("samples")) c.samples = b.unsigned_int("samples");
    if (b.has("chunk_size")) c.chunk_size = b.unsigned_int("chunk_size");
    c.quadrature.abs_tol = b.number_or("abs_tol", c.quadrature.abs_tol);
    c.quadrature.rel_tol = b.number_or("rel_tol", c.quadrature.rel_tol);
    if (b.has("max_panels")) c.quadrature.max_panels = b.unsigned_int("max_panels");
    if (c.chunk_size == 0) b.fail("chunk_size", "must be positive");
    if (!(c.quadrature.abs_tol >= 0.0) || !(c.quadrature.rel_tol >= 0.0) ||
        (c.quadrature.abs_tol == 0.0 && c.quadrature.rel_tol == 0.0))
      b.fail("rel_tol", "quadrature tolerances must be non-negative and not both zero");
    if (c.quadrature.max_panels == 0) b.fail("max_panels", "must be positive");
    if (!ov.samples && c.samples < kMinSamples)
      b.fail("samples", "at least " + std::to_string(kMinSamples) + " samples are required");
  }
  if (ov.samples) {
    if (*ov.samples < kMinSamples)
      throw ConfigError(0, "--samples: at least " + std::to_string(kMinSamples) + " samples are required");
    c.samples = *ov.samples;
  }

  if (r.has("output")) {
    const Reader o = r.sub("output");
    o.allow_only({"dir"});
    c.out_dir = o.string("dir");
  }
  if (ov.out_dir) c.out_dir = *ov.out_dir;

  Json params_echo = Json::object();
  const Json empty = Json::object();
  if (r.has("params")) {
    parse_params(c, r.sub("params"), params_echo);
  } else {
    parse_params(c, Reader(loc, empty, {"params"}), params_echo);
  }

  c.resolved["experiment"] = kind;
  c.resolved["seed"] = c.seed;
  c.resolved["density"] = density_echo;
  c.resolved["budget"] = Json{{"samples", c.samples},
                              {"chunk_size", c.chunk_size},
                              {"abs_tol", c.quadrature.abs_tol},
                              {"rel_tol", c.quadrature.rel_tol},
                              {"max_panels", c.quadrature.max_panels}};
  c.resolved["params"] = params_echo;
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             const Overrides& ov) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), ov);
}

}  // namespace muck::cli
