#pragma once

#include <cmath>
#include <vector>

#include "colombeau/errors.hpp"
#include "colombeau/grid.hpp"

namespace colombeau {

// One observation of a net: |x_eps| measured at eps.
struct Sample {
  double eps = 0.0;
  double mag = 0.0;
};

enum class Classification {
  Order,            // tail follows mag ~ C * eps^slope within residual_tol
  BeyondOrder,      // decays past eps^q_max at the measurement resolution
  IdenticallyZero,  // every sample is exactly zero
  Ambiguous,        // tail does not fit a single power law
};

const char* to_string(Classification cls);

struct EstimateOptions {
  double residual_tol = 0.25;     // RMS log2 residual gate for the tail fit
  double q_max = 10.0;            // negligibility threshold on the exponent
  double underflow_floor = 1e-290;
  double noise_floor = 0.0;       // per-measurement error budget; samples at
                                  // or below max(floor, underflow_floor) are
                                  // treated as unresolved
};

struct DecayEstimate {
  Classification cls = Classification::Ambiguous;
  double slope = 0.0;          // exponent a in mag ~ C * eps^a
  double log2_constant = 0.0;  // log2 C from the same fit
  double residual = 0.0;       // RMS log2 residual over the fitted tail
  double q_max = 10.0;         // threshold the classification was made under
  bool below_resolution = false;  // tail sank under the measurement floor
  int n_fit = 0;                  // tail samples that entered the fit
  std::vector<Sample> samples;    // full input net, kept for reporting
};

// Classifies the decay of a sampled net.  Requires at least 8 samples with
// eps strictly descending in (0, 1] and finite nonnegative magnitudes.
// The power-law fit uses only the smallest-eps half of the samples, after
// dropping samples at or below the measurement floor; fewer than 4 usable
// tail samples means the decay outran the resolution and the net is
// classified BeyondOrder with below_resolution set.
DecayEstimate estimate_valuation(std::vector<Sample> samples,
                                 const EstimateOptions& opts = {});

// Largest exponent v with mag = O(eps^v): the fitted slope for Order,
// q_max (a lower bound) for BeyondOrder, +inf for IdenticallyZero.
// Throws AmbiguousValuation when no power law fit the tail.
double valuation(const DecayEstimate& e);

// exp(-valuation); zero for identically vanishing nets.
double ultra_norm(const DecayEstimate& e);

// True when the net decays at least as fast as eps^q_max.
// Throws AmbiguousValuation for Ambiguous estimates.
bool is_negligible(const DecayEstimate& e);

// Moderateness gate: the observed growth must stay within eps^-N_max.
// Ambiguous estimates are judged by their raw fitted slope so that bounded
// oscillatory nets pass; the 0.5 slack absorbs fit noise.
bool is_moderate(const DecayEstimate& e, double N_max = 12.0);

template <class F>
std::vector<Sample> sample_net(F&& f, const EpsGrid& grid) {
  std::vector<Sample> out;
  out.reserve(static_cast<size_t>(grid.size()));
  for (double eps : grid.samples()) {
    out.push_back({eps, std::fabs(static_cast<double>(f(eps)))});
  }
  return out;
}

}  // namespace colombeau
