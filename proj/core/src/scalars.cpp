#include "colombeau/scalars.hpp"

#include <algorithm>
#include <cmath>

namespace colombeau {

DecayEstimate GenNumber::decay(const EpsGrid& grid,
                               const EstimateOptions& opts) const {
  std::vector<Sample> s;
  s.reserve(static_cast<size_t>(grid.size()));
  for (double eps : grid.samples()) s.push_back({eps, std::abs(net_(eps))});
  return estimate_valuation(std::move(s), opts);
}

void GenNumber::require_moderate(double N_max, const EpsGrid& grid) const {
  if (!is_moderate(decay(grid), N_max)) {
    throw NonModerateNet("scalar net grows faster than eps^-" +
                         std::to_string(N_max));
  }
}

double val(const GenNumber& x, const EpsGrid& grid,
           const EstimateOptions& opts) {
  return valuation(x.decay(grid, opts));
}

double ultra_norm(const GenNumber& x, const EpsGrid& grid,
                  const EstimateOptions& opts) {
  return ultra_norm(x.decay(grid, opts));
}

bool is_negligible(const GenNumber& x, const EpsGrid& grid,
                   const EstimateOptions& opts) {
  return is_negligible(x.decay(grid, opts));
}

double sharp_distance(const GenNumber& a, const GenNumber& b,
                      const EpsGrid& grid) {
  return ultra_norm(a - b, grid);
}

bool equal_in_sharp(const GenNumber& a, const GenNumber& b,
                    const EpsGrid& grid) {
  return is_negligible(a - b, grid);
}

namespace {

struct Cluster {
  Vec2 centroid;
  int count = 0;
  unsigned segment_mask = 0;
};

double dist(const Vec2& a, const Vec2& b, int dim) {
  const double dx = a.x - b.x;
  const double dy = (dim == 2) ? (a.y - b.y) : 0.0;
  return std::sqrt(dx * dx + dy * dy);
}

// eps values probing tail segment s: the dyadic ladder plus any hints
// falling inside the segment's eps range.
std::vector<double> segment_eps(const GenPoint& p, const SupportOptions& o,
                                int s) {
  const int k_lo = o.base_k + s * o.segment_octaves;
  const int k_hi = k_lo + o.segment_octaves;
  std::vector<double> eps;
  for (int k = k_lo; k <= k_hi; ++k) eps.push_back(std::pow(2.0, -k));
  const double hi = std::pow(2.0, -k_lo);
  const double lo = std::pow(2.0, -k_hi);
  for (double h : p.sample_hints()) {
    if (h > lo && h <= hi) eps.push_back(h);
  }
  std::sort(eps.begin(), eps.end(), std::greater<double>());
  return eps;
}

}  // namespace

std::vector<Vec2> point_support(const GenPoint& p, const Box& window,
                                const SupportOptions& opts) {
  if (!window.valid() || window.dim != p.dim()) {
    throw WindowEmpty("point_support: window box is degenerate or has the "
                      "wrong dimension");
  }
  std::vector<Cluster> clusters;
  for (int s = 0; s < opts.segments; ++s) {
    for (double eps : segment_eps(p, opts, s)) {
      const Vec2 v = p.at(eps);
      Cluster* best = nullptr;
      double best_d = opts.cluster_radius;
      for (Cluster& c : clusters) {
        const double d = dist(c.centroid, v, p.dim());
        if (d <= best_d) {
          best_d = d;
          best = &c;
        }
      }
      if (best) {
        best->count += 1;
        const double w = 1.0 / best->count;
        best->centroid.x += w * (v.x - best->centroid.x);
        best->centroid.y += w * (v.y - best->centroid.y);
        best->segment_mask |= (1u << s);
      } else {
        clusters.push_back({v, 1, 1u << s});
      }
    }
  }
  const unsigned full = (1u << opts.segments) - 1u;
  std::vector<Vec2> out;
  for (const Cluster& c : clusters) {
    if (c.segment_mask == full && window.contains(c.centroid)) {
      out.push_back(c.centroid);
    }
  }
  std::sort(out.begin(), out.end(), [](const Vec2& a, const Vec2& b) {
    return (a.x != b.x) ? a.x < b.x : a.y < b.y;
  });
  return out;
}

bool is_compactly_supported(const GenPoint& p, const SupportOptions& opts) {
  std::vector<double> hulls;
  for (int s = 0; s < opts.segments; ++s) {
    double hull = 0.0;
    for (double eps : segment_eps(p, opts, s)) {
      const Vec2 v = p.at(eps);
      hull = std::max(hull, std::max(std::fabs(v.x), std::fabs(v.y)));
    }
    hulls.push_back(hull);
  }
  bool sustained = true;
  for (size_t s = 0; s + 1 < hulls.size(); ++s) {
    if (hulls[s + 1] < opts.growth_factor * hulls[s] || hulls[s + 1] == 0.0) {
      sustained = false;
      break;
    }
  }
  return !sustained;
}

}  // namespace colombeau
