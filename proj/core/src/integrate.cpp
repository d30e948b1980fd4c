// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "muck/error.hpp"
#include "muck/integrate.hpp"
#include "muck/parallel.hpp"

namespace muck {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxRedraws = 64;
constexpr double kMaxRedrawFraction = 1e-6;

enum class StratumKind { Remainder, Cap, HyperplaneSlab, SphereSlab };

struct Stratum {
  StratumKind kind = StratumKind::Remainder;
  std::size_t samples = 0;
  double weight = 0.0;  // constant factor of the importance weight
  // caps
  std::size_t feature = 0;
  Point center;
  double exponent = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  // slabs
  double width = 0.0;
};

// Sampling layout for one (density, region) pair.
struct Plan {
  Region region;
  std::vector<Stratum> strata;
  std::vector<Point> cap_centers;  // caps the remainder must skip
  double cap_radius = 0.0;
  std::optional<SurfaceSingularity> slab;
  double slab_width = 0.0;
  Point slab_origin;            // hyperplane: projection of the region center
  std::vector<Point> tangents;  // hyperplane: orthonormal basis of the plane
  bool stratified = false;
  bool has_singular_set = false;
};

double ball_volume_or_one(std::size_t n, double r) {
  if (n == 0) return 1.0;
  return unit_ball_volume(n) * std::pow(r, static_cast<double>(n));
}

std::vector<Point> orthonormal_complement(const Point& normal) {
  const std::size_t n = normal.dim();
  std::vector<Point> basis;
  basis.push_back(normal);
  for (std::size_t axis = 0; axis < n && basis.size() < n; ++axis) {
    Point v = Point::unit(n, axis);
    for (const auto& b : basis) v -= b * b.dot(v);
    const double s = v.norm();
    if (s > 1e-8) basis.push_back(v * (1.0 / s));
  }
  basis.erase(basis.begin());
  return basis;
}

Plan make_plan(const Density& d, const Region& region, std::size_t n_samples) {
  Plan plan;
  plan.region = region;
  plan.has_singular_set = !point_singularities(d).empty() ||
                          surface_singularity(d).has_value();
  const std::size_t dim = d.dim();
  const auto n = static_cast<double>(dim);
  const double a = region.inner;
  const double b = region.outer;
  const Point& o = region.center;
  bool remainder_empty = false;

  const auto features = point_singularities(d);
  if (!features.empty()) {
    double half_gap = kInf;
    for (std::size_t i = 0; i < features.size(); ++i)
      for (std::size_t j = i + 1; j < features.size(); ++j)
        half_gap = std::min(
            half_gap, 0.5 * distance(features[i].center, features[j].center));
    plan.cap_radius = std::min(b, half_gap);
    const double rc = plan.cap_radius;
    for (std::size_t i = 0; i < features.size(); ++i) {
      const auto& f = features[i];
      if (f.exponent == 0.0) continue;
      const double dc = distance(f.center, o);
      if (!(dc - rc < b && dc + rc > a)) continue;
      Stratum s;
      s.kind = StratumKind::Cap;
      s.feature = i;
      s.center = f.center;
      s.exponent = f.exponent;
      s.t_lo = std::max({0.0, dc - b, a - dc});
      s.t_hi = std::min(rc, dc + b);
      if (!(s.t_hi > s.t_lo)) continue;
      const double e = n + f.exponent;
      s.weight = unit_sphere_area(dim) *
                 (std::pow(s.t_hi, e) - std::pow(s.t_lo, e)) / e;
      plan.cap_centers.push_back(f.center);
      plan.strata.push_back(s);
      if (dc + b <= rc && a == 0.0) remainder_empty = true;
    }
  }

  if (auto surf = surface_singularity(d); surf && surf->exponent < 0.0) {
    const double beta = surf->exponent;
    double dist_o = 0.0;
    Stratum s;
    s.exponent = beta;
    if (const auto* h = std::get_if<Hyperplane>(&surf->set.kind())) {
      s.kind = StratumKind::HyperplaneSlab;
      s.width = b;
      dist_o = std::abs(h->normal.dot(o) - h->offset);
      s.weight = 2.0 * ball_volume_or_one(dim - 1, b) *
                 std::pow(s.width, 1.0 + beta) / (1.0 + beta);
      plan.slab_origin = o - h->normal * (h->normal.dot(o) - h->offset);
      plan.tangents = orthonormal_complement(h->normal);
    } else {
      const auto& sp = std::get<Sphere>(surf->set.kind());
      s.kind = StratumKind::SphereSlab;
      s.width = std::min(b, 0.5 * sp.radius);
      dist_o = std::abs(distance(o, sp.center) - sp.radius);
      s.weight = 2.0 * unit_sphere_area(dim) * std::pow(s.width, 1.0 + beta) /
                 (1.0 + beta);
    }
    if (dist_o < b + s.width) {
      plan.slab_width = s.width;
      plan.slab = std::move(surf);
      plan.strata.push_back(s);
    }
  }

  plan.stratified = !plan.strata.empty();
  if (!remainder_empty) {
    Stratum rest;
    rest.kind = StratumKind::Remainder;
    rest.weight = region.volume();
    plan.strata.push_back(rest);
  }
  const std::size_t k = plan.strata.size();
  const std::size_t share = n_samples / k;
  for (auto& s : plan.strata) s.samples = share;
  plan.strata.back().samples += n_samples - share * k;
  return plan;
}

bool in_excluded_set(const Plan& plan, const Point& y) {
  for (const auto& c : plan.cap_centers)
    if (distance(y, c) < plan.cap_radius) return true;
  if (plan.slab && distance_to_set(plan.slab->set, y) < plan.slab_width)
    return true;
  return false;
}

struct Draw {
  double value;
  Point y;
};

// One weighted draw from stratum `s`; nullopt when the draw hit the
// singular set and must be repeated.
std::optional<Draw> draw(const Density& d, const Plan& plan,
                           const Stratum& s, Xoshiro256pp& rng) {
  const Region& region = plan.region;
  const std::size_t dim = d.dim();
  const auto n = static_cast<double>(dim);
  switch (s.kind) {
    case StratumKind::Remainder: {
      const Point y = sample_uniform(region, rng);
      if (plan.stratified && in_excluded_set(plan, y)) return Draw{0.0, y};
      const double v = eval(d, y);
      // +inf off a singular set is overflow; let it propagate
      if (!std::isfinite(v) && plan.has_singular_set) return std::nullopt;
      return Draw{s.weight * v, y};
    }
    case StratumKind::Cap: {
      // radius density proportional to t^{e-1} on [t_lo, t_hi]
      const double e = n + s.exponent;
      const double lo = std::pow(s.t_lo, e);
      const double hi = std::pow(s.t_hi, e);
      const double t = std::pow(lo + rng.uniform() * (hi - lo), 1.0 / e);
      const Point u = uniform_direction(dim, rng);
      if (!(t > 0.0)) return std::nullopt;
      const Point y = s.center + u * t;
      if (!region.contains(y) || distance(y, s.center) >= plan.cap_radius)
        return Draw{0.0, y};
      const double f = eval_relative(d, y, s.feature);
      if (!std::isfinite(f)) return std::nullopt;
      return Draw{s.weight * f, y};
    }
    case StratumKind::HyperplaneSlab: {
      const auto& h = std::get<Hyperplane>(plan.slab->set.kind());
      const double dist =
          s.width * std::pow(rng.uniform(), 1.0 / (1.0 + s.exponent));
      const double side = rng.uniform() < 0.5 ? -1.0 : 1.0;
      Point y = plan.slab_origin + h.normal * (side * dist);
      if (dim > 1) {
        const Point w = uniform_direction(dim - 1, rng);
        const double r =
            region.outer * std::pow(rng.uniform(), 1.0 / (n - 1.0));
        for (std::size_t k = 0; k + 1 < dim; ++k)
          y += plan.tangents[k] * (r * w[k]);
      }
      if (!(dist > 0.0)) return std::nullopt;
      if (!region.contains(y)) return Draw{0.0, y};
      return Draw{s.weight, y};
    }
    case StratumKind::SphereSlab: {
      const auto& sp = std::get<Sphere>(plan.slab->set.kind());
      const double dist =
          s.width * std::pow(rng.uniform(), 1.0 / (1.0 + s.exponent));
      const double side = rng.uniform() < 0.5 ? -1.0 : 1.0;
      const Point u = uniform_direction(dim, rng);
      if (!(dist > 0.0)) return std::nullopt;
      const double rho = sp.radius + side * dist;
      const Point y = sp.center + u * rho;
      if (!region.contains(y)) return Draw{0.0, y};
      return Draw{s.weight * std::pow(rho, n - 1.0), y};
    }
  }
  return Draw{0.0, Point(dim)};
}

Draw draw_with_redraws(const Density& d, const Plan& plan, const Stratum& s,
                       Xoshiro256pp& rng, std::size_t& redraws) {
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    if (auto v = draw(d, plan, s, rng)) return std::move(*v);
    ++redraws;
  }
  throw Error(Errc::SingularHitRate,
              "sampling kept landing on the singular set of " + d.describe());
}

// Streaming first and second (co)moments of one chunk, combined with the
// pairwise update of Chan et al.
struct Moments {
  double count = 0.0;
  double mean1 = 0.0, m2_1 = 0.0;
  double mean2 = 0.0, m2_2 = 0.0;
  double c12 = 0.0;
  std::size_t redraws = 0;

  void add(double x, double y) noexcept {
    count += 1.0;
    const double dx = x - mean1;
    const double dy = y - mean2;
    mean1 += dx / count;
    mean2 += dy / count;
    m2_1 += dx * (x - mean1);
    m2_2 += dy * (y - mean2);
    c12 += dx * (y - mean2);
  }

  void merge(const Moments& o) noexcept {
    if (o.count == 0.0) return;
    if (count == 0.0) {
      *this = o;
      return;
    }
    const double total = count + o.count;
    const double dx = o.mean1 - mean1;
    const double dy = o.mean2 - mean2;
    const double f = count * o.count / total;
    mean1 += dx * o.count / total;
    mean2 += dy * o.count / total;
    m2_1 += o.m2_1 + dx * dx * f;
    m2_2 += o.m2_2 + dy * dy * f;
    c12 += o.c12 + dx * dy * f;
    count = total;
    redraws += o.redraws;
  }
};

struct Chunk {
  std::size_t stratum;
  std::size_t index;
  std::size_t count;
};

std::vector<Chunk> make_chunks(const Plan& plan, std::size_t chunk_size) {
  std::vector<Chunk> chunks;
  for (std::size_t s = 0; s < plan.strata.size(); ++s) {
    const std::size_t total = plan.strata[s].samples;
    for (std::size_t i = 0, done = 0; done < total; ++i) {
      const std::size_t c = std::min(chunk_size, total - done);
      chunks.push_back({s, i, c});
      done += c;
    }
  }
  return chunks;
}

struct StratumTotals {
  double value1 = 0.0, var1 = 0.0;
  double value2 = 0.0, var2 = 0.0;
  double cov = 0.0;
  std::size_t redraws = 0;
  bool stratified = false;
};

// Samples `first`. With `targets`, every draw is scored against both target
// regions instead, so the two estimates share their random numbers.
StratumTotals run(const Density& d, const Plan& first,
                  const std::pair<Region, Region>* targets, std::uint64_t seed,
                  const MassOptions& opts) {
  const std::size_t chunk_size = std::max<std::size_t>(1, opts.chunk_size);
  const auto chunks = make_chunks(first, chunk_size);
  std::vector<Moments> results(chunks.size());

  parallel_for(chunks.size(), opts.workers, [&](std::size_t c) {
    const Chunk& chunk = chunks[c];
    Xoshiro256pp rng(derive_seed(seed, chunk.stratum, chunk.index));
    const Stratum& s1 = first.strata[chunk.stratum];
    Moments m;
    for (std::size_t i = 0; i < chunk.count; ++i) {
      const Draw v = draw_with_redraws(d, first, s1, rng, m.redraws);
      if (targets != nullptr) {
        m.add(targets->first.contains(v.y) ? v.value : 0.0,
              targets->second.contains(v.y) ? v.value : 0.0);
      } else {
        m.add(v.value, 0.0);
      }
    }
    results[c] = m;
  });

  StratumTotals totals;
  std::size_t c = 0;
  for (std::size_t s = 0; s < first.strata.size(); ++s) {
    Moments m;
    while (c < chunks.size() && chunks[c].stratum == s) m.merge(results[c++]);
    if (m.count == 0.0) continue;
    totals.value1 += m.mean1;
    totals.value2 += m.mean2;
    if (m.count > 1.0) {
      const double denom = m.count * (m.count - 1.0);
      totals.var1 += m.m2_1 / denom;
      totals.var2 += m.m2_2 / denom;
      totals.cov += m.c12 / denom;
    }
    totals.redraws += m.redraws;
  }
  return totals;
}

// Translation-coupled pair estimator. One cloud xi in the unit ball is
// mapped into ball i as c_i + R xi. The proposal mixes a uniform density with
// caps and slabs around the pulled-back singular sets of both balls, so each
// weight f(c_i + R xi) R^n / q(xi) stays bounded near every singularity.
struct Component {
  StratumKind kind = StratumKind::Remainder;
  Point center;          // cap centre, sphere centre, or hyperplane foot
  Point normal;          // hyperplane only
  double exponent = 0.0;
  double size = 0.0;     // cap radius or slab width
  double radius = 0.0;   // sphere only
  double floor = 0.0;    // offsets below this are left to the uniform part
  std::vector<Point> tangents;

  // offset law proportional to t^{power-1} on [floor, size]
  double offset(double u, double power) const {
    const double lo = std::pow(floor, power);
    const double hi = std::pow(size, power);
    return std::pow(lo + u * (hi - lo), 1.0 / power);
  }
  double offset_norm(double power) const {
    return (std::pow(size, power) - std::pow(floor, power)) / power;
  }

  std::vector<double> key() const {
    std::vector<double> k{static_cast<double>(kind), exponent, size, radius};
    for (std::size_t i = 0; i < center.dim(); ++i) k.push_back(center[i]);
    for (std::size_t i = 0; i < normal.dim(); ++i) k.push_back(normal[i]);
    return k;
  }
};

class TranslationProposal {
 public:
  TranslationProposal(const Density& d, const Region& r1, const Region& r2)
      : dim_(d.dim()) {
    const double R = r1.outer;
    Component uniform;
    uniform.center = Point::zero(dim_);
    components_.push_back(uniform);

    const auto features = point_singularities(d);
    double half_gap = kInf;
    for (std::size_t i = 0; i < features.size(); ++i)
      for (std::size_t j = i + 1; j < features.size(); ++j)
        half_gap = std::min(
            half_gap, 0.5 * distance(features[i].center, features[j].center));
    const double rho = std::min(1.0, half_gap / R);
    const auto surf = surface_singularity(d);
    // keeps sampled points resolvable from the singular set after mapping
    const double floor =
        1e-10 * std::max(1.0, (r1.center.norm() + r2.center.norm()) / R + 2.0);

    for (const Region* r : {&r1, &r2}) {
      for (const auto& f : features) {
        if (!(f.exponent < 0.0)) continue;
        Component c;
        c.kind = StratumKind::Cap;
        c.center = (f.center - r->center) * (1.0 / R);
        c.exponent = f.exponent;
        c.size = rho;
        c.floor = floor;
        if (c.center.norm() < 1.0 + rho && rho > floor) add(std::move(c));
      }
      if (surf && surf->exponent < 0.0) {
        Component c;
        c.exponent = surf->exponent;
        if (const auto* h = std::get_if<Hyperplane>(&surf->set.kind())) {
          const double offset = (h->offset - h->normal.dot(r->center)) / R;
          c.kind = StratumKind::HyperplaneSlab;
          c.normal = h->normal;
          c.center = h->normal * offset;
          c.size = 1.0;
          c.floor = floor;
          c.tangents = orthonormal_complement(h->normal);
          if (std::abs(offset) < 2.0) add(std::move(c));
        } else {
          const auto& sp = std::get<Sphere>(surf->set.kind());
          c.kind = StratumKind::SphereSlab;
          c.center = (sp.center - r->center) * (1.0 / R);
          c.radius = sp.radius / R;
          c.size = std::min(1.0, 0.5 * c.radius);
          c.floor = floor;
          if (std::abs(c.center.norm() - c.radius) < 1.0 + c.size && c.size > floor)
            add(std::move(c));
        }
      }
    }
    std::sort(components_.begin(), components_.end(),
              [](const Component& a, const Component& b) { return a.key() < b.key(); });
    weight_ = 1.0 / static_cast<double>(components_.size());
    unit_volume_ = unit_ball_volume(dim_);
    sphere_area_ = unit_sphere_area(dim_);
  }

  bool stratified() const noexcept { return components_.size() > 1; }

  Point sample(Xoshiro256pp& rng) const {
    const auto k = std::min(
        components_.size() - 1,
        static_cast<std::size_t>(rng.uniform() * static_cast<double>(components_.size())));
    const Component& c = components_[k];
    const auto n = static_cast<double>(dim_);
    switch (c.kind) {
      case StratumKind::Cap: {
        const double t = c.offset(rng.uniform(), n + c.exponent);
        return c.center + uniform_direction(dim_, rng) * t;
      }
      case StratumKind::HyperplaneSlab: {
        const double s = c.offset(rng.uniform(), 1.0 + c.exponent);
        const double side = rng.uniform() < 0.5 ? -1.0 : 1.0;
        Point y = c.center + c.normal * (side * s);
        if (dim_ > 1) {
          const Point w = uniform_direction(dim_ - 1, rng);
          const double r = std::pow(rng.uniform(), 1.0 / (n - 1.0));
          for (std::size_t i = 0; i + 1 < dim_; ++i) y += c.tangents[i] * (r * w[i]);
        }
        return y;
      }
      case StratumKind::SphereSlab: {
        const double s = c.offset(rng.uniform(), 1.0 + c.exponent);
        const double side = rng.uniform() < 0.5 ? -1.0 : 1.0;
        return c.center + uniform_direction(dim_, rng) * (c.radius + side * s);
      }
      case StratumKind::Remainder:
        break;
    }
    return sample_uniform(Region::ball(Ball(Point::zero(dim_), 1.0)), rng);
  }

  double density(const Point& xi) const {
    const auto n = static_cast<double>(dim_);
    double q = 0.0;
    for (const auto& c : components_) {
      switch (c.kind) {
        case StratumKind::Remainder:
          if (xi.norm() <= 1.0) q += 1.0 / unit_volume_;
          break;
        case StratumKind::Cap: {
          const double t = distance(xi, c.center);
          if (t >= c.floor && t < c.size)
            q += std::pow(t, c.exponent) /
                 (sphere_area_ * c.offset_norm(n + c.exponent));
          break;
        }
        case StratumKind::HyperplaneSlab: {
          const double s = std::abs(c.normal.dot(xi - c.center));
          const Point foot = xi - c.normal * c.normal.dot(xi - c.center);
          if (s >= c.floor && s < c.size && distance(foot, c.center) <= 1.0)
            q += std::pow(s, c.exponent) /
                 (2.0 * c.offset_norm(1.0 + c.exponent) * ball_volume_or_one(dim_ - 1, 1.0));
          break;
        }
        case StratumKind::SphereSlab: {
          const double rho = distance(xi, c.center);
          const double s = std::abs(rho - c.radius);
          if (s >= c.floor && s < c.size)
            q += std::pow(s, c.exponent) /
                 (2.0 * c.offset_norm(1.0 + c.exponent) * sphere_area_ *
                  std::pow(rho, n - 1.0));
          break;
        }
      }
    }
    return q * weight_;
  }

 private:
  void add(Component c) {
    const auto k = c.key();
    for (const auto& e : components_)
      if (e.key() == k) return;
    components_.push_back(std::move(c));
  }

  std::size_t dim_;
  std::vector<Component> components_;
  double weight_ = 1.0;
  double unit_volume_ = 1.0;
  double sphere_area_ = 1.0;
};

StratumTotals run_translated(const Density& d, const Region& r1, const Region& r2,
                             std::size_t n_samples, std::uint64_t seed,
                             const MassOptions& opts) {
  const TranslationProposal proposal(d, r1, r2);
  const double R = r1.outer;
  const double jacobian = std::pow(R, static_cast<double>(d.dim()));
  const bool singular = !point_singularities(d).empty() || surface_singularity(d).has_value();
  const std::size_t chunk_size = std::max<std::size_t>(1, opts.chunk_size);
  const std::size_t n_chunks = (n_samples + chunk_size - 1) / chunk_size;
  std::vector<Moments> results(n_chunks);

  parallel_for(n_chunks, opts.workers, [&](std::size_t c) {
    Xoshiro256pp rng(derive_seed(seed, 0, c));
    const std::size_t count = std::min(chunk_size, n_samples - c * chunk_size);
    Moments m;
    for (std::size_t i = 0; i < count; ++i) {
      double x = 0.0;
      double y = 0.0;
      int attempt = 0;
      for (;; ++attempt) {
        if (attempt == kMaxRedraws)
          throw Error(Errc::SingularHitRate,
                      "sampling kept landing on the singular set of " + d.describe());
        const Point xi = proposal.sample(rng);
        const Point y1 = r1.center + xi * R;
        const Point y2 = r2.center + xi * R;
        const bool in1 = r1.contains(y1);
        const bool in2 = r2.contains(y2);
        if (!in1 && !in2) break;
        const double q = proposal.density(xi);
        const double f1 = in1 ? eval(d, y1) : 0.0;
        const double f2 = in2 ? eval(d, y2) : 0.0;
        if (singular && (!std::isfinite(f1) || !std::isfinite(f2) || !std::isfinite(q))) {
          ++m.redraws;
          continue;
        }
        x = f1 * jacobian / q;
        y = f2 * jacobian / q;
        break;
      }
      m.add(x, y);
    }
    results[c] = m;
  });

  Moments total;
  for (const auto& m : results) total.merge(m);
  StratumTotals t;
  t.value1 = total.mean1;
  t.value2 = total.mean2;
  if (total.count > 1.0) {
    const double denom = total.count * (total.count - 1.0);
    t.var1 = total.m2_1 / denom;
    t.var2 = total.m2_2 / denom;
    t.cov = total.c12 / denom;
  }
  t.redraws = total.redraws;
  t.stratified = proposal.stratified();
  return t;
}

// Smallest ball about the midpoint of the two centres that holds both.
Region enclosing_ball(const Region& r1, const Region& r2) {
  const Point c = (r1.center + r2.center) * 0.5;
  const double radius = std::max(distance(c, r1.center) + r1.outer,
                                 distance(c, r2.center) + r2.outer);
  return Region::ball(Ball(c, radius));
}

void check_inputs(const Density& d, const Region& r, std::size_t n_samples) {
  if (r.dim() != d.dim()) {
    throw Error(Errc::DimensionMismatch,
                "mass: region dimension " + std::to_string(r.dim()) +
                    " vs density " + std::to_string(d.dim()));
  }
  if (n_samples < kMinSamples) {
    throw Error(Errc::InvalidArgument,
                "mass: need at least " + std::to_string(kMinSamples) +
                    " samples, got " + std::to_string(n_samples));
  }
}

void check_redraws(std::size_t redraws, std::size_t n_samples) {
  if (static_cast<double>(redraws) >
      kMaxRedrawFraction * static_cast<double>(n_samples)) {
    throw Error(Errc::SingularHitRate,
                std::to_string(redraws) + " of " + std::to_string(n_samples) +
                    " draws landed on the singular set");
  }
}

MassEstimate closed(double value) {
  MassEstimate m;
  m.value = value;
  m.method = Method::ClosedForm;
  return m;
}

MassEstimate estimate(double value, double var, std::size_t n_samples,
                      std::size_t redraws, const Plan& plan) {
  MassEstimate m;
  m.value = value;
  m.std_error = std::sqrt(std::max(0.0, var));
  m.n_samples = n_samples;
  m.resampled = redraws;
  m.method = plan.stratified ? Method::StratifiedMC : Method::MonteCarlo;
  return m;
}

}  // namespace

double PairEstimate::ratio_std_error() const noexcept {
  const double a = first.value;
  const double b = second.value;
  const double r = a / b;
  const double rel = first.std_error * first.std_error / (a * a) +
                     second.std_error * second.std_error / (b * b) -
                     2.0 * covariance / (a * b);
  return std::abs(r) * std::sqrt(std::max(0.0, rel));
}

MassEstimate mass(const Density& d, const Region& r, std::size_t n_samples,
                  std::uint64_t seed, const MassOptions& opts) {
  check_inputs(d, r, n_samples);
  if (opts.allow_closed_form) {
    if (auto exact = closed_form_mass(d, r)) return closed(*exact);
  }
  const Plan plan = make_plan(d, r, n_samples);
  const StratumTotals t = run(d, plan, nullptr, seed, opts);
  check_redraws(t.redraws, n_samples);
  return estimate(t.value1, t.var1, n_samples, t.redraws, plan);
}

PairEstimate mass_pair(const Density& d, const Region& r1, const Region& r2,
                       std::size_t n_samples, std::uint64_t seed,
                       const MassOptions& opts) {
  check_inputs(d, r1, n_samples);
  check_inputs(d, r2, n_samples);
  std::optional<double> exact1, exact2;
  if (opts.allow_closed_form) {
    exact1 = closed_form_mass(d, r1);
    exact2 = closed_form_mass(d, r2);
  }
  PairEstimate out;
  if (exact1 && exact2) {
    out.first = closed(*exact1);
    out.second = closed(*exact2);
    return out;
  }
  if (!exact1 && !exact2 && r1.inner == r2.inner && r1.outer == r2.outer) {
    const StratumTotals t = run_translated(d, r1, r2, n_samples, seed, opts);
    check_redraws(t.redraws, n_samples);
    Plan layout;
    layout.stratified = t.stratified;
    out.first = estimate(t.value1, t.var1, n_samples, t.redraws, layout);
    out.second = estimate(t.value2, t.var2, n_samples, t.redraws, layout);
    out.covariance = t.cov;
    out.paired = true;
    return out;
  }
  if (!exact1 && !exact2) {
    const Plan plan = make_plan(d, enclosing_ball(r1, r2), n_samples);
    const std::pair<Region, Region> targets{r1, r2};
    const StratumTotals t = run(d, plan, &targets, seed, opts);
    check_redraws(t.redraws, n_samples);
    out.first = estimate(t.value1, t.var1, n_samples, t.redraws, plan);
    out.second = estimate(t.value2, t.var2, n_samples, t.redraws, plan);
    out.covariance = t.cov;
    out.paired = true;
    return out;
  }
  out.first = exact1 ? closed(*exact1) : mass(d, r1, n_samples, seed, opts);
  out.second = exact2 ? closed(*exact2) : mass(d, r2, n_samples, seed, opts);
  return out;
}

}  // namespace muck
