#include "colombeau/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace colombeau {

std::string EpsGrid::describe() const {
  std::ostringstream os;
  os << "eps = " << base << "^-k, k = " << k_min << ".." << k_max;
  return os.str();
}

const char* to_string(Classification cls) {
  switch (cls) {
    case Classification::Order: return "order";
    case Classification::BeyondOrder: return "beyond_order";
    case Classification::IdenticallyZero: return "identically_zero";
    case Classification::Ambiguous: return "ambiguous";
  }
  return "unknown";
}

namespace {

void validate(const std::vector<Sample>& s) {
  if (s.size() < 8) {
    throw TooFewSamples("estimate_valuation: need at least 8 samples, got " +
                        std::to_string(s.size()));
  }
  double prev = std::numeric_limits<double>::infinity();
  for (const Sample& p : s) {
    if (!std::isfinite(p.eps) || p.eps <= 0.0 || p.eps > 1.0) {
      throw InvalidNet("estimate_valuation: eps must lie in (0, 1]");
    }
    if (p.eps >= prev) {
      throw InvalidNet("estimate_valuation: eps must be strictly descending");
    }
    if (!std::isfinite(p.mag) || p.mag < 0.0) {
      throw InvalidNet(
          "estimate_valuation: magnitudes must be finite and nonnegative");
    }
    prev = p.eps;
  }
}

struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};

Fit fit_loglog(const std::vector<const Sample*>& pts) {
  const double m = static_cast<double>(pts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const Sample* p : pts) {
    const double x = std::log2(p->eps);
    const double y = std::log2(p->mag);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  Fit f;
  f.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / m;
  double ss = 0;
  for (const Sample* p : pts) {
    const double r =
        std::log2(p->mag) - (f.slope * std::log2(p->eps) + f.intercept);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / m);
  return f;
}

}  // namespace

DecayEstimate estimate_valuation(std::vector<Sample> samples,
                                 const EstimateOptions& opts) {
  validate(samples);

  DecayEstimate est;
  est.q_max = opts.q_max;
  est.samples = std::move(samples);
  const std::vector<Sample>& s = est.samples;

  if (std::all_of(s.begin(), s.end(),
                  [](const Sample& p) { return p.mag == 0.0; })) {
    est.cls = Classification::IdenticallyZero;
    return est;
  }

  const double floor = std::max(opts.underflow_floor, opts.noise_floor);
  const size_t n = s.size();
  const size_t tail_len = (n + 1) / 2;
  std::vector<const Sample*> usable;
  usable.reserve(tail_len);
  for (size_t i = n - tail_len; i < n; ++i) {
    if (s[i].mag > floor) usable.push_back(&s[i]);
  }
  est.n_fit = static_cast<int>(usable.size());

  if (usable.size() < 4) {
    // The decay beat the measurement floor before the tail began; all we
    // can certify is "faster than eps^q_max at this resolution".
    est.cls = Classification::BeyondOrder;
    est.below_resolution = true;
    return est;
  }

  const Fit f = fit_loglog(usable);
  est.slope = f.slope;
  est.log2_constant = f.intercept;
  est.residual = f.residual;
  est.cls = (f.residual <= opts.residual_tol) ? Classification::Order
                                              : Classification::Ambiguous;
  return est;
}

double valuation(const DecayEstimate& e) {
  switch (e.cls) {
    case Classification::Order: return e.slope;
    case Classification::BeyondOrder: return e.q_max;
    case Classification::IdenticallyZero:
      return std::numeric_limits<double>::infinity();
    case Classification::Ambiguous: break;
  }
  throw AmbiguousValuation(
      "valuation: tail did not fit a power law (residual " +
      std::to_string(e.residual) + ")");
}

double ultra_norm(const DecayEstimate& e) {
  if (e.cls == Classification::IdenticallyZero) return 0.0;
  return std::exp(-valuation(e));
}

bool is_negligible(const DecayEstimate& e) {
  switch (e.cls) {
    case Classification::BeyondOrder:
    case Classification::IdenticallyZero: return true;
    case Classification::Order: return e.slope >= e.q_max;
    case Classification::Ambiguous: break;
  }
  throw AmbiguousValuation(
      "is_negligible: tail did not fit a power law (residual " +
      std::to_string(e.residual) + ")");
}

bool is_moderate(const DecayEstimate& e, double N_max) {
  switch (e.cls) {
    case Classification::BeyondOrder:
    case Classification::IdenticallyZero: return true;
    case Classification::Order:
    case Classification::Ambiguous:
      // Bounded oscillation lands here with a noisy but honest slope;
      // the slack keeps fit noise from rejecting a borderline net.
      return e.slope >= -(N_max + 0.5);
  }
  return false;
}

}  // namespace colombeau
