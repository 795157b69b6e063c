#pragma once

#include <functional>
#include <vector>

#include "colombeau/errors.hpp"

namespace colombeau {

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
const std::vector<double>& gl_nodes(int order);
const std::vector<double>& gl_weights(int order);

struct QuadratureOptions {
  int order = 16;          // nodes per panel
  int max_doublings = 12;  // panel count grows 1, 2, 4, ...
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;  // termination floor for integrals near zero
};

// Composite Gauss-Legendre with a fixed panel count; bitwise deterministic
// for a given (f, a, b, panels, order).
double integrate_fixed(const std::function<double(double)>& f, double a,
                       double b, int panels, int order = 16);

// Panel-doubling composite rule; converged when successive refinements
// agree within rel_tol * |I| + abs_tol.  Throws QuadratureNotConverged.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

// Tensor-product rule over an axis-aligned box, panels per axis.
double integrate2d_fixed(const std::function<double(double, double)>& f,
                         double ax, double bx, double ay, double by,
                         int panels, int order = 16);

}  // namespace colombeau
