#include "colombeau/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

namespace colombeau {

namespace {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Roots of the Legendre polynomial by Newton iteration from the Chebyshev
// initial guess; weights w_i = 2 / ((1 - x_i^2) P_n'(x_i)^2).
Rule build_rule(int order) {
  if (order < 2) throw InvalidConfig("gauss rule: order must be at least 2");
  Rule r;
  r.nodes.resize(static_cast<size_t>(order));
  r.weights.resize(static_cast<size_t>(order));
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    r.nodes[static_cast<size_t>(i)] = -x;
    r.nodes[static_cast<size_t>(n - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.weights[static_cast<size_t>(i)] = w;
    r.weights[static_cast<size_t>(n - 1 - i)] = w;
  }
  return r;
}

const Rule& cached_rule(int order) {
  static std::map<int, Rule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
  return it->second;
}

}  // namespace

const std::vector<double>& gl_nodes(int order) {
  return cached_rule(order).nodes;
}

const std::vector<double>& gl_weights(int order) {
  return cached_rule(order).weights;
}

double integrate_fixed(const std::function<double(double)>& f, double a,
                       double b, int panels, int order) {
  if (panels < 1) throw InvalidConfig("integrate_fixed: panels must be >= 1");
  const Rule& r = cached_rule(order);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double acc = 0.0;
    for (int i = 0; i < order; ++i) {
      acc += r.weights[static_cast<size_t>(i)] *
             f(mid + 0.5 * h * r.nodes[static_cast<size_t>(i)]);
    }
    total += 0.5 * h * acc;
  }
  return total;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
  double prev = integrate_fixed(f, a, b, 1, opts.order);
  int panels = 1;
  for (int d = 0; d < opts.max_doublings; ++d) {
    panels *= 2;
    const double cur = integrate_fixed(f, a, b, panels, opts.order);
    if (std::fabs(cur - prev) <=
        opts.rel_tol * std::fabs(cur) + opts.abs_tol) {
      return cur;
    }
    prev = cur;
  }
  throw QuadratureNotConverged(
      "integrate: no agreement after " + std::to_string(panels) +
      " panels of order " + std::to_string(opts.order));
}

double integrate2d_fixed(const std::function<double(double, double)>& f,
                         double ax, double bx, double ay, double by,
                         int panels, int order) {
  return integrate_fixed(
      [&](double y) {
        return integrate_fixed([&](double x) { return f(x, y); }, ax, bx,
                               panels, order);
      },
      ay, by, panels, order);
}

}  // namespace colombeau
