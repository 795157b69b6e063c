#pragma once

// Generalized functions as eps-parametrized nets of smooth representatives.
//
// A SmoothRep is an immutable expression tree over smooth primitives
// (polynomials, exponentials, trig, Gaussian, plateau cutoffs, convolution
// kernels, spectral ramps), closed under sums, products, affine and
// eps-dependent changes of variable, and multiplication by scalar nets.
// Evaluation returns exact derivative jets -- chain and product rule on the
// tree, never finite differences -- because high-order derivative sup norms
// at eps = 2^-40 are numerically hopeless under differencing.
//
// Every node also answers structural queries that steer the samplers and
// integrators layered on top:
//   - support(eps): certified interval outside which the value is exactly 0;
//   - windows(eps): hot intervals (with resolution hints) where a
//     concentrated or translated factor lives, so sup-sampling and
//     quadrature can follow features that a fixed grid cannot see;
//   - decay_bound(eps, alpha, beta, R): a certified upper bound for
//     sup_{|x| >= R} |x|^alpha |d^beta u_eps(x)|, +infinity when the tree
//     cannot certify one.  This is what turns truncated global sups and
//     truncated pairings into certified ones.

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "colombeau/asymptotics.hpp"
#include "colombeau/cutoff.hpp"
#include "colombeau/grid.hpp"
#include "colombeau/jets.hpp"
#include "colombeau/kernels.hpp"
#include "colombeau/quadrature.hpp"
#include "colombeau/scalars.hpp"

namespace colombeau {

// Real scalar net eps -> R used for eps-dependent coefficients, centers,
// and scales.
using ScalarNet = std::function<double(double)>;

// Hot interval in the ambient frame at one eps: samplers put panels no
// wider than res inside [lo, hi].
struct Window {
  double lo = 0.0;
  double hi = 0.0;
  double res = 1.0;
};

namespace detail {
struct RepNode;
}

class SmoothRep {
public:
  // --- primitives -------------------------------------------------------
  static SmoothRep constant(double c);
  static SmoothRep coordinate();  // x itself
  // sum_k coeffs[k] x^k
  static SmoothRep polynomial(std::vector<double> coeffs);
  static SmoothRep exponential(double rate);  // exp(rate * x)
  static SmoothRep sine(double freq = 1.0, double phase = 0.0);
  static SmoothRep cosine(double freq = 1.0);
  static SmoothRep gaussian();  // exp(-x^2)
  static SmoothRep bump(const Cutoff& psi);
  static SmoothRep kernel(std::shared_ptr<const Kernel> k);
  // Even spectral ramp xi -> m(|xi|): 1 inside the flat top, 0 beyond the
  // band; the building block of the Fourier-side device nets.
  static SmoothRep spectral_ramp(const SpectralProfile& p);

  // --- closure operations ------------------------------------------------
  friend SmoothRep operator+(const SmoothRep& a, const SmoothRep& b);
  friend SmoothRep operator-(const SmoothRep& a, const SmoothRep& b);
  friend SmoothRep operator*(const SmoothRep& a, const SmoothRep& b);

  // f(a x + b); a must be nonzero.
  SmoothRep substituted(double a, double b) const;
  // f(x - c(eps)): eps-dependent translation.
  SmoothRep translated(ScalarNet center) const;
  SmoothRep translated(double center) const;
  // f(x / eps^r): concentration for r > 0, spreading for r < 0.
  SmoothRep dilated(double r) const;
  // f((x - shift(eps)) * scale(eps)): the general eps-affine change of
  // variable.  The shift is subtracted before scaling so that concentrated
  // kernels see an exactly cancelled small argument.
  SmoothRep warped(ScalarNet shift, ScalarNet scale) const;
  // c(eps) * f or c * f.
  SmoothRep scaled(ScalarNet c) const;
  SmoothRep scaled(double c) const;
  // Truncated convolution (rho_w * f)(x) with w = width(eps) > 0: fixed
  // kernel-frame Gauss-Legendre panels, derivatives falling on the kernel.
  // The truncation radius is chosen so the dropped tail is below 3e-15 of
  // the kernel mass scale.
  SmoothRep mollified(std::shared_ptr<const Kernel> rho, ScalarNet width) const;
  // Exact m-th derivative as a new representative (order budget shrinks
  // by m; the jet machinery caps total order at kJetMaxOrder).
  SmoothRep derivative(int m) const;

  // --- evaluation ---------------------------------------------------------
  // Taylor jet of u_eps at x up to the requested order.  Throws
  // OrderTooHigh when derivative shifts push past the jet budget.
  Jet1 jet(double eps, double x, int order) const;
  // d^deriv u_eps(x).
  double value(double eps, double x, int deriv = 0) const;

  // --- structure ----------------------------------------------------------
  // Certified support interval at eps, when the tree knows one.  The value
  // is exactly zero outside it.
  std::optional<std::pair<double, double>> support(double eps) const;
  // Hot windows at eps (unsorted, possibly overlapping).
  std::vector<Window> windows(double eps) const;
  // Smallest oscillation/feature scale away from windows; +inf when the
  // rep is smooth at unit scale everywhere.
  double resolution_hint(double eps) const;
  // Certified bound on sup_{|x| >= beyond} |x|^alpha |d^beta u_eps(x)|;
  // +inf when no certificate exists along the tree.
  double decay_bound(double eps, int alpha, int beta, double beyond) const;

private:
  explicit SmoothRep(std::shared_ptr<const detail::RepNode> node)
      : node_(std::move(node)) {}
  std::shared_ptr<const detail::RepNode> node_;
};

// Membership tags for the function spaces the checks distinguish:
// plain moderate nets, compactly supported, derivative-uniform (regular),
// rapidly decreasing, and tempered variants.
enum class SpaceTag { G, Gc, Ginf, GcInf, GS, GSInf, Gtau };

const char* to_string(SpaceTag tag);

class GenFunction {
public:
  GenFunction(SmoothRep rep, Box domain, SpaceTag tag,
              std::optional<Box> support = std::nullopt);

  // Representative on all of R.
  static GenFunction on_line(SmoothRep rep, SpaceTag tag);

  const SmoothRep& rep() const { return rep_; }
  const Box& domain() const { return domain_; }
  const std::optional<Box>& declared_support() const { return support_; }
  SpaceTag space_tag() const { return tag_; }
  bool domain_is_line() const;

  GenFunction with_tag(SpaceTag tag) const;
  GenFunction with_support(Box support) const;

  // Pointwise algebra; domains intersect, tags combine conservatively.
  friend GenFunction operator+(const GenFunction& a, const GenFunction& b);
  friend GenFunction operator-(const GenFunction& a, const GenFunction& b);
  friend GenFunction operator*(const GenFunction& a, const GenFunction& b);
  GenFunction derivative(int m) const;

private:
  SmoothRep rep_;
  Box domain_;
  std::optional<Box> support_;
  SpaceTag tag_;
};

// sup over a deterministic dense sample of K (2^11-point grid, plus
// window-following samples, plus golden-section refinement around the
// largest seeds) of max_{k <= m} |d^k u_eps|.  A measured lower bound of
// the true sup; the refinement step is its stability check.
ScalarNet seminorm_net(const GenFunction& u, const Box& K, int m);

// exp(-val) of seminorm_net, the ultrametric seminorm driving sharp-
// topology estimates.  Throws AmbiguousValuation when the net fits no
// power law.
double ultra_pseudo_seminorm(const GenFunction& u, const Box& K, int m,
                             const EpsGrid& grid = EpsGrid::deep(),
                             const EstimateOptions& opts = {});

// The net eps -> u_eps(x_eps) as a generalized number.  Requires the point
// to stay inside the domain: a compactly supported point must have its
// trajectory hull in the domain; an escaping point is admitted only when
// the representative is globally defined with controlled growth (tags
// Gc/GcInf/GS/GSInf/Gtau).
GenNumber point_value(const GenFunction& u, const GenPoint& pt);

// The net eps -> d^k u_eps(x_eps).
GenNumber point_derivative(const GenFunction& u, const GenPoint& pt, int k);

// Per-eps composite Gauss-Legendre integral over K with window-following
// panels (concentrated factors are integrated in their own frame).  The
// panel count doubles once as a convergence check; disagreement above
// tolerance raises QuadratureNotConverged.
GenNumber integrate_compact(const GenFunction& u, const Box& K);

// Pairing integral of u v over the support of whichever factor has one;
// when neither does, a truncated integral with a certified rapid-decay
// tail bound.  NoCompactSupport when neither route applies,
// TailNotCertified when decay is claimed but not certifiable.
GenNumber integrate_pair(const GenFunction& u, const GenFunction& v);

// Per-eps sup over a truncated grid (plus hot windows) of
// |x|^alpha |d^beta u_eps(x)|, with the certified tail bound folded in.
// Schwartz-tagged inputs must certify their tail or TailNotCertified is
// thrown on first evaluation.
ScalarNet schwartz_seminorm_net(const GenFunction& u, int alpha, int beta);

enum class Regularity { Regular, NotRegular, Inconclusive };

const char* to_string(Regularity r);

// Derivative-cost profile: N(m) = -slope of seminorm_net(u, K, m).
struct RegularityReport {
  Regularity kind = Regularity::Inconclusive;
  double N = 0.0;              // uniform exponent when Regular
  std::vector<double> N_of_m;  // measured N(m), m = 0..m_max
};

// Flat N(m) within 0.3 reads Regular; three consecutive increments of at
// least 0.7 read NotRegular; anything else is Inconclusive.
RegularityReport classify_regular(const GenFunction& u, const Box& K,
                                  int m_max,
                                  const EpsGrid& grid = EpsGrid::deep(),
                                  const EstimateOptions& opts = {});

}  // namespace colombeau
