#pragma once

#include <cmath>

#include "colombeau/errors.hpp"
#include "colombeau/jets.hpp"

namespace colombeau {

// Smooth plateau function: exactly 1 on [center-plateau, center+plateau],
// exactly 0 outside [center-support, center+support], a logistic ramp of
// C-infinity regularity in between.  Because the flat branches are exact,
// expressions that cancel on the plateau produce identical zeros rather
// than rounding residue.
class Cutoff {
public:
  Cutoff(double center, double plateau, double support, double sharpness = 3.0)
      : center_(center),
        plateau_(plateau),
        support_(support),
        sharpness_(sharpness) {
    if (!(plateau > 0.0) || !(support > plateau) || !(sharpness > 0.0)) {
      throw InvalidConfig("cutoff: need 0 < plateau < support");
    }
  }

  double center() const { return center_; }
  double plateau() const { return plateau_; }
  double support() const { return support_; }

  // Transition position in (0,1): 1 near the plateau edge, 0 at the
  // support edge.
  double ramp_coordinate(double x) const {
    return (support_ - std::fabs(x - center_)) / (support_ - plateau_);
  }

  Jet1 jet(double x, int order) const {
    const double u = x - center_;
    const double au = std::fabs(u);
    if (au <= plateau_) return Jet1::constant(1.0, order);
    if (au >= support_) return Jet1::constant(0.0, order);

    // s is affine in x with slope -sign(u)/(support-plateau)
    const double width = support_ - plateau_;
    Jet1 s = Jet1::constant((support_ - au) / width, order);
    if (order >= 1) s.set_coeff(1, (u > 0 ? -1.0 : 1.0) / width);

    // g = a (1/s - 1/(1-s)); the logistic saturates far below double
    // resolution long before 1/s overflows.
    const double g0 = sharpness_ * (1.0 / s.value() - 1.0 / (1.0 - s.value()));
    if (g0 > 45.0) return Jet1::constant(0.0, order);
    if (g0 < -45.0) return Jet1::constant(1.0, order);

    const Jet1 one = Jet1::constant(1.0, order);
    const Jet1 g = (jrecip(s) - jrecip(one - s)) * sharpness_;
    return one / (one + jexp(g));
  }

  double value(double x, int k = 0) const {
    if (k < 0 || k > kJetMaxOrder) {
      throw InvalidConfig("cutoff derivative order out of range");
    }
    return jet(x, k).derivative(k);
  }

  // True when every point of [lo, hi] sits on the exact-1 plateau.
  bool plateau_covers(double lo, double hi) const {
    return lo >= center_ - plateau_ && hi <= center_ + plateau_;
  }

  // True when the whole ramp-and-plateau support contains [lo, hi].
  bool support_covers(double lo, double hi) const {
    return lo >= center_ - support_ && hi <= center_ + support_;
  }

private:
  double center_;
  double plateau_;
  double support_;
  double sharpness_;
};

// Separable product jet psi(x) psi(y) for two-variable expressions.
inline Jet2 separable_jet2(const Jet1& a, const Jet1& b) {
  if (a.order() != b.order()) {
    throw InvalidConfig("separable jet: mismatched orders");
  }
  const int n = a.order();
  Jet2 r = Jet2::constant(0.0, n);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      r.set_coeff(i, j, a.coeff(i) * b.coeff(j));
    }
  }
  return r;
}

}  // namespace colombeau
