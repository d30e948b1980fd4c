// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#include "runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "muck/ap.hpp"
#include "muck/error.hpp"
#include "muck/homogeneity.hpp"
#include "muck/isotropy.hpp"

namespace muck::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// JSON has no infinities; those become null.
Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json point_json(const Point& x) {
  Json a = Json::array();
  for (double c : x.coords()) a.push_back(c);
  return a;
}

Json ball_json(const Ball& b) {
  return Json{{"center", point_json(b.center)}, {"radius", b.radius}};
}

Json estimate_json(const MassEstimate& m) {
  return Json{{"value", num(m.value)},
              {"std_error", num(m.std_error)},
              {"err_bound", num(m.err_bound)},
              {"n_samples", m.n_samples},
              {"resampled", m.resampled},
              {"method", std::string(to_string(m.method))}};
}

class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) {
    row(header);
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ += ',';
      out_ += quote(cells[i]);
    }
    out_ += '\n';
  }

  std::string str() const { return out_; }

 private:
  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + '"';
  }

  std::string out_;
};

std::string f(double v) { return format_double(v); }

SamplingBudget budget_of(const ExperimentConfig& c, std::size_t workers,
                         std::uint64_t seed) {
  SamplingBudget b;
  b.samples = c.samples;
  b.seed = seed;
  b.options.workers = workers;
  b.options.chunk_size = c.chunk_size;
  return b;
}

BallFamily family_of(const ExperimentConfig& c) {
  const Density& d = *c.density;
  if (c.family.kind == "explicit") return BallFamily{c.family.centers, c.family.radii};
  if (c.family.kind == "singularities")
    return BallFamily::at_singularities(d, c.family.j_min, c.family.j_max);
  return BallFamily::standard(d, c.family.j_min, c.family.j_max);
}

// Empirical A_p constant over the standard family, used when none is given.
std::pair<double, std::string> resolve_constant(const ExperimentConfig& c,
                                                std::size_t workers) {
  if (c.ap_constant) return {*c.ap_constant, "supplied"};
  const auto scan = estimate_ap_constant(
      *c.density, c.p, BallFamily::standard(*c.density),
      budget_of(c, workers, derive_seed(c.seed, 0xc0)));
  if (scan.violated) return {std::numeric_limits<double>::infinity(), "estimated (A_p violated)"};
  return {scan.sup_product, "estimated"};
}

void run_mass(const ExperimentConfig& c, std::size_t workers, RunResult& out) {
  MassOptions opts;
  opts.workers = workers;
  opts.chunk_size = c.chunk_size;
  opts.allow_closed_form = c.closed_form;
  const MassEstimate m = mass(*c.density, *c.region, c.samples, c.seed, opts);
  Json res = estimate_json(m);
  if (auto cf = closed_form_mass(*c.density, *c.region)) res["closed_form"] = *cf;
  res["volume"] = c.region->volume();
  out.report["result"] = res;

  Csv csv({"value", "std_error", "err_bound", "n_samples", "resampled", "method"});
  csv.row({f(m.value), f(m.std_error), f(m.err_bound), std::to_string(m.n_samples),
           std::to_string(m.resampled), std::string(to_string(m.method))});
  out.csv.push_back({"mass.csv", csv.str()});
  out.summary = "mass " + f(m.value) + " +- " + f(m.std_error) + " (" +
                std::string(to_string(m.method)) + ")";
}

void run_ap_scan(const ExperimentConfig& c, std::size_t workers, RunResult& out) {
  const Density& d = *c.density;
  const ApScanReport scan =
      estimate_ap_constant(d, c.p, family_of(c), budget_of(c, workers, c.seed));
  const Membership analytic = ap_membership(d, c.p);
  const std::string verdict =
      scan.violated ? "A_p violated (empirical)" : "A_p bounded (empirical)";

  Json res;
  res["verdict"] = verdict;
  res["analytic_membership"] = std::string(to_string(analytic));
  if (analytic == Membership::Unknown)
    res["consistent_with_analytic"] = nullptr;
  else
    res["consistent_with_analytic"] = scan.violated == (analytic == Membership::NonMember);
  res["p"] = scan.p;
  res["sup_product"] = num(scan.sup_product);
  res["argmax"] = scan.argmax ? ball_json(*scan.argmax) : Json(nullptr);
  res["early_sup"] = num(scan.early_sup);
  res["unbounded_balls"] = scan.unbounded_balls;
  res["balls"] = scan.entries.size();
  out.report["result"] = res;

  const std::size_t n = d.dim();
  std::vector<std::string> header;
  for (std::size_t k = 0; k < n; ++k) header.push_back("c" + std::to_string(k));
  for (const char* h : {"radius", "product", "std_error", "avg_rho", "avg_dual", "status", "reason"})
    header.push_back(h);
  Csv csv(header);
  for (const auto& e : scan.entries) {
    std::vector<std::string> row;
    for (double x : e.ball.center.coords()) row.push_back(f(x));
    row.push_back(f(e.ball.radius));
    if (e.result) {
      for (double v : {e.result->product, e.result->std_error,
                       e.result->avg_rho.value, e.result->avg_dual.value})
        row.push_back(f(v));
      row.push_back("bounded");
      row.push_back("");
    } else {
      for (int k = 0; k < 4; ++k) row.push_back("");
      row.push_back("unbounded");
      row.push_back(e.unbounded_reason);
    }
    csv.row(row);
  }
  out.csv.push_back({"ap_scan.csv", csv.str()});
  std::string sup = scan.argmax ? "sup product " + f(scan.sup_product) : "no bounded ball";
  if (scan.unbounded_balls > 0)
    sup += " (" + std::to_string(scan.unbounded_balls) + " of " +
           std::to_string(scan.entries.size()) + " balls unbounded)";
  out.summary = verdict + "; " + sup + "; analytic " + std::string(to_string(analytic));
}

void run_doubling(const ExperimentConfig& c, std::size_t workers, RunResult& out) {
  const auto [C, source] = resolve_constant(c, workers);
  const DoublingReport r =
      doubling_ratio(*c.density, *c.ball, c.p, C, budget_of(c, workers, c.seed));
  Json res;
  res["verdict"] = r.within_bound ? "within bound" : "exceeds bound";
  res["ratio"] = num(r.ratio);
  res["std_error"] = num(r.std_error);
  res["C"] = num(C);
  res["C_source"] = source;
  res["bound"] = num(r.bound);
  res["within_bound"] = r.within_bound;
  out.report["result"] = res;

  Csv csv({"radius", "ratio", "std_error", "C", "bound", "within_bound"});
  csv.row({f(r.ball.radius), f(r.ratio), f(r.std_error), f(C), f(r.bound),
           r.within_bound ? "true" : "false"});
  out.csv.push_back({"doubling.csv", csv.str()});
  out.summary = "doubling ratio " + f(r.ratio) + " +- " + f(r.std_error) +
                ", bound " + f(r.bound);
}

void run_subset_scan(const ExperimentConfig& c, std::size_t workers, RunResult& out) {
  const auto [C, source] = resolve_constant(c, workers);
  std::optional<double> usable_c;
  if (std::isfinite(C)) usable_c = C;
  const SubsetScanReport r = subset_ratio_scan(
      *c.density, *c.ball, c.thetas, budget_of(c, workers, c.seed), usable_c, c.p);

  Json res;
  res["gamma_raw"] = r.gamma_raw ? num(*r.gamma_raw) : Json(nullptr);
  res["gamma"] = r.gamma ? num(*r.gamma) : Json(nullptr);
  res["c_tilde"] = r.c_tilde ? num(*r.c_tilde) : Json(nullptr);
  res["C"] = num(C);
  res["C_source"] = source;
  bool all_hold = true;
  Json pts = Json::array();
  Csv csv({"theta", "volume_ratio", "mass_ratio", "std_error", "lower_bound_holds"});
  for (const auto& p : r.points) {
    Json pj{{"theta", p.theta},
            {"volume_ratio", num(p.volume_ratio)},
            {"mass_ratio", num(p.mass_ratio)},
            {"std_error", num(p.mass_ratio_std_error)}};
    pj["lower_bound_holds"] =
        p.lower_bound_holds ? Json(*p.lower_bound_holds) : Json(nullptr);
    if (p.lower_bound_holds && !*p.lower_bound_holds) all_hold = false;
    pts.push_back(pj);
    csv.row({f(p.theta), f(p.volume_ratio), f(p.mass_ratio), f(p.mass_ratio_std_error),
             p.lower_bound_holds ? (*p.lower_bound_holds ? "true" : "false") : ""});
  }
  res["lower_bound_holds"] = usable_c ? Json(all_hold) : Json(nullptr);
  res["points"] = pts;
  out.report["result"] = res;
  out.csv.push_back({"subset_scan.csv", csv.str()});
  if (!r.gamma) {
    out.exit_code = kExitInconclusive;
    out.summary = "subset scan: too few shells to fit gamma";
  } else {
    out.summary = "subset scan: gamma " + f(*r.gamma) + ", C~ " + f(*r.c_tilde);
  }
}

void run_homogeneity(const ExperimentConfig& c, std::size_t workers, RunResult& out) {
  RatioCurve curve = ratio_curve(*c.density, c.x1, c.x2, c.radii,
                                 budget_of(c, workers, c.seed));
  curve.verdict = classify(curve, c.tol);
  const EnvelopeFit fit = fit_envelope(curve);
  attach_envelope(curve, fit);

  Json res;
  res["verdict"] = std::string(to_string(curve.verdict));
  res["distance"] = curve.distance();
  res["envelope_fit"] = Json{{"conclusive", fit.conclusive},
                             {"signal_points", fit.signal_points},
                             {"gamma", num(fit.gamma)},
                             {"K", num(fit.K)},
                             {"K_fit", num(fit.K_fit)},
                             {"max_residual", num(fit.max_residual)},
                             {"bound_holds", fit.bound_holds}};
  Json pts = Json::array();
  Csv csv({"R", "ratio", "std_error", "envelope", "abs_dev"});
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    const double dev = std::abs(p.ratio - 1.0);
    const bool has_env = i < curve.envelope.size();
    Json pj{{"R", p.radius},
            {"ratio", num(p.ratio)},
            {"std_error", num(p.std_error)},
            {"abs_dev", num(dev)},
            {"envelope", has_env ? num(curve.envelope[i]) : Json(nullptr)},
            {"mass1", estimate_json(p.mass1)},
            {"mass2", estimate_json(p.mass2)}};
    pts.push_back(pj);
    csv.row({f(p.radius), f(p.ratio), f(p.std_error),
             has_env ? f(curve.envelope[i]) : "", f(dev)});
  }
  res["points"] = pts;
  out.report["result"] = res;
  out.csv.push_back({"homogeneity.csv", csv.str()});
  if (curve.verdict == HomogeneityVerdict::Inconclusive) out.exit_code = kExitInconclusive;
  out.summary = std::string(to_string(curve.verdict)) + "; final ratio " +
                f(curve.points.back().ratio);
}

void run_isotropy(const ExperimentConfig& c, RunResult& out) {
  const IsotropyCurve curve = isotropy_ratio_curve(
      *c.density, Ray{c.x1, c.v1}, Ray{c.x2, c.v2}, c.radii, c.quadrature, c.tol);
  Json res;
  res["verdict"] = std::string(to_string(curve.verdict));
  Json pts = Json::array();
  Csv csv({"R", "lambda1", "lambda2", "ratio", "bracket_low", "bracket_high"});
  for (const auto& p : curve.points) {
    auto opt = [](const std::optional<double>& v) { return v ? num(*v) : Json(nullptr); };
    auto opt_s = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    pts.push_back(Json{{"R", p.radius},
                       {"lambda1", num(p.lambda1)},
                       {"lambda2", num(p.lambda2)},
                       {"ratio", num(p.ratio)},
                       {"bracket_low", opt(p.bracket_low)},
                       {"bracket_high", opt(p.bracket_high)}});
    csv.row({f(p.radius), f(p.lambda1), f(p.lambda2), f(p.ratio),
             opt_s(p.bracket_low), opt_s(p.bracket_high)});
  }
  res["points"] = pts;
  out.report["result"] = res;
  out.csv.push_back({"isotropy.csv", csv.str()});
  if (curve.verdict == IsotropyVerdict::Inconclusive) out.exit_code = kExitInconclusive;
  out.summary = std::string(to_string(curve.verdict)) + "; final ratio " +
                f(curve.points.back().ratio);
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& c, std::size_t workers) {
  RunResult out;
  out.report["config"] = c.resolved;
  switch (c.experiment) {
    case Experiment::Mass: run_mass(c, workers, out); break;
    case Experiment::ApScan: run_ap_scan(c, workers, out); break;
    case Experiment::Doubling: run_doubling(c, workers, out); break;
    case Experiment::SubsetScan: run_subset_scan(c, workers, out); break;
    case Experiment::Homogeneity: run_homogeneity(c, workers, out); break;
    case Experiment::Isotropy: run_isotropy(c, out); break;
  }
  out.report["exit_code"] = out.exit_code;
  return out;
}

void write_outputs(const RunResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream os(dir / name, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(Errc::Config, "cannot write " + (dir / name).string());
    os << content;
  };
  write("report.json", result.report.dump(2) + "\n");
  for (const auto& f : result.csv) write(f.name, f.content);
}

}  // namespace muck::cli
