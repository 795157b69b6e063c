#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "colombeau/asymptotics.hpp"
#include "colombeau/errors.hpp"

namespace colombeau {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Axis-aligned box in R^dim (dim 1 or 2); the y axis is ignored for dim 1.
struct Box {
  Vec2 lo;
  Vec2 hi;
  int dim = 1;

  static Box interval(double a, double b) { return Box{{a, 0}, {b, 0}, 1}; }
  static Box rect(double ax, double bx, double ay, double by) {
    return Box{{ax, ay}, {bx, by}, 2};
  }

  bool valid() const {
    if (dim != 1 && dim != 2) return false;
    if (!(lo.x <= hi.x)) return false;
    if (dim == 2 && !(lo.y <= hi.y)) return false;
    return true;
  }

  bool contains(const Vec2& p) const {
    if (p.x < lo.x || p.x > hi.x) return false;
    if (dim == 2 && (p.y < lo.y || p.y > hi.y)) return false;
    return true;
  }
};

// A generalized scalar: a net eps -> C, classified by its decay.
class GenNumber {
public:
  using Net = std::function<std::complex<double>(double)>;

  GenNumber() : net_([](double) { return std::complex<double>(0.0); }) {}
  explicit GenNumber(Net net) : net_(std::move(net)) {}

  static GenNumber constant(std::complex<double> c) {
    return GenNumber([c](double) { return c; });
  }

  static GenNumber from_real(std::function<double(double)> f) {
    return GenNumber(
        [f = std::move(f)](double eps) { return std::complex<double>(f(eps)); });
  }

  std::complex<double> at(double eps) const { return net_(eps); }

  DecayEstimate decay(const EpsGrid& grid = EpsGrid::deep(),
                      const EstimateOptions& opts = {}) const;

  // Throws NonModerateNet when the observed growth exceeds eps^-N_max.
  void require_moderate(double N_max = 12.0,
                        const EpsGrid& grid = EpsGrid::deep()) const;

  friend GenNumber operator+(const GenNumber& a, const GenNumber& b) {
    return GenNumber(
        [an = a.net_, bn = b.net_](double e) { return an(e) + bn(e); });
  }
  friend GenNumber operator-(const GenNumber& a, const GenNumber& b) {
    return GenNumber(
        [an = a.net_, bn = b.net_](double e) { return an(e) - bn(e); });
  }
  friend GenNumber operator*(const GenNumber& a, const GenNumber& b) {
    return GenNumber(
        [an = a.net_, bn = b.net_](double e) { return an(e) * bn(e); });
  }

private:
  Net net_;
};

double val(const GenNumber& x, const EpsGrid& grid = EpsGrid::deep(),
           const EstimateOptions& opts = {});
double ultra_norm(const GenNumber& x, const EpsGrid& grid = EpsGrid::deep(),
                  const EstimateOptions& opts = {});
bool is_negligible(const GenNumber& x, const EpsGrid& grid = EpsGrid::deep(),
                   const EstimateOptions& opts = {});
double sharp_distance(const GenNumber& a, const GenNumber& b,
                      const EpsGrid& grid = EpsGrid::deep());
bool equal_in_sharp(const GenNumber& a, const GenNumber& b,
                    const EpsGrid& grid = EpsGrid::deep());

// A generalized point: a net eps -> R^dim.  Sample hints are extra eps
// values where the net takes representative values; nets with fine
// staircase structure need them because dyadic sampling skips steps.
class GenPoint {
public:
  using Net = std::function<Vec2(double)>;

  GenPoint(int dim, Net net) : dim_(dim), net_(std::move(net)) {
    if (dim != 1 && dim != 2) {
      throw InvalidConfig("GenPoint: dim must be 1 or 2");
    }
  }

  static GenPoint line(std::function<double(double)> f) {
    return GenPoint(1, [f = std::move(f)](double e) {
      return Vec2{f(e), 0.0};
    });
  }

  int dim() const { return dim_; }
  Vec2 at(double eps) const { return net_(eps); }

  const std::vector<double>& sample_hints() const { return hints_; }
  void add_sample_hints(std::vector<double> hints) {
    hints_.insert(hints_.end(), hints.begin(), hints.end());
  }

private:
  int dim_;
  Net net_;
  std::vector<double> hints_;
};

struct SupportOptions {
  double cluster_radius = 1e-3;
  int segments = 4;        // dyadic tail segments that must all recur
  int base_k = 8;          // tail starts at eps = 2^-base_k
  int segment_octaves = 8; // each segment spans eps over 2^-8
  double growth_factor = 1.5;  // sustained hull growth => escape
};

// Accumulation points of the net inside the window.  A cluster counts only
// when every tail segment contributes a sample to it, which separates
// recurring values from one-off spikes.
std::vector<Vec2> point_support(const GenPoint& p, const Box& window,
                                const SupportOptions& opts = {});

// Sustained-growth escape detector: the per-segment sample hull must grow
// by at least growth_factor across every consecutive pair of tail segments
// to count as escaping.  Sparse spikes below that threshold read as
// bounded; use point_support to analyse such nets.
bool is_compactly_supported(const GenPoint& p,
                            const SupportOptions& opts = {});

}  // namespace colombeau
