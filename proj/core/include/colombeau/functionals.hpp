#pragma once

// Dual objects: C-tilde-linear maps from generalized functions to
// generalized numbers, realized as evaluators acting per representative.
//
// The constructions here are the measurement devices the verification
// suite drives: point functionals at generalized points, the two
// distribution embeddings (direct action and integral-kernel pairing),
// concentrated kernel nets that reproduce point evaluation up to
// negligible defects, regularization and smoothing sequences with rate
// contracts, series and Taylor expansions of point functionals, and the
// restriction / probed-support / cutoff-extension calculus.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "colombeau/cutoff.hpp"
#include "colombeau/genfun.hpp"
#include "colombeau/grid.hpp"
#include "colombeau/kernels.hpp"
#include "colombeau/scalars.hpp"

namespace colombeau {

// How a functional was built; detail is a human-readable description kept
// for reports.
enum class ProvenanceKind {
  Delta,
  DirectDistribution,
  IntegralKernel,
  Series,
  Restriction,
};

const char* to_string(ProvenanceKind k);

struct Provenance {
  ProvenanceKind kind = ProvenanceKind::Delta;
  std::string detail;
};

// A functional T: inputs tagged within domain_tag() map to generalized
// numbers.  Evaluation is lazy (the returned GenNumber samples on demand)
// and exactly linear per eps at the representative level.
//
// Two optional pieces of metadata travel with the evaluator:
//   - sample_hints: extra eps values worth sampling when classifying
//     T(u) nets (point functionals at staircase-like points need them);
//   - support_hull: a certified interval containing the functional's
//     support, when the construction knows one.
class Functional {
public:
  using Evaluator = std::function<GenNumber(const GenFunction&)>;

  Functional(Evaluator eval, SpaceTag domain_tag, Provenance prov);

  GenNumber operator()(const GenFunction& u) const;

  // The largest tagged input class the functional accepts.
  SpaceTag domain_tag() const { return domain_; }
  const Provenance& provenance() const { return prov_; }

  const std::vector<double>& sample_hints() const { return hints_; }
  const std::optional<std::pair<double, double>>& support_hull() const {
    return hull_;
  }

  Functional with_sample_hints(std::vector<double> hints) const;
  Functional with_support_hull(double lo, double hi) const;

private:
  Evaluator eval_;
  SpaceTag domain_;
  Provenance prov_;
  std::vector<double> hints_;
  std::optional<std::pair<double, double>> hull_;
};

// The distributions the embeddings accept: finite-order derivatives of a
// point mass, or a smooth density paired by integration.  Anything else
// must be rejected loudly, not approximated silently.
class DistributionSpec {
public:
  enum class Kind { DeltaDerivative, RegularFunction };

  // (-1)^order-signed action u -> (-d/dx)^order u at the point; order is
  // capped at 6.  Throws UnsupportedDistribution beyond the cap.
  static DistributionSpec delta_derivative(int order, double point);

  // Pairing density u -> int f u; the tag states the density's decay class
  // so the pairing route can be chosen.
  static DistributionSpec regular(SmoothRep density, SpaceTag tag);

  Kind kind() const { return kind_; }
  int order() const { return order_; }
  double point() const { return point_; }
  const SmoothRep& density() const;
  SpaceTag density_tag() const { return tag_; }

private:
  DistributionSpec() = default;
  Kind kind_ = Kind::DeltaDerivative;
  int order_ = 0;
  double point_ = 0.0;
  std::optional<SmoothRep> density_;
  SpaceTag tag_ = SpaceTag::Gc;
};

// --- point functionals ------------------------------------------------------

// Evaluation at a generalized point: delta(x)(u) = [u_eps(x_eps)].  The
// point's coordinate net must be moderate.  A bounded trajectory yields a
// functional on all of G; an escaping one acts on decaying inputs only.
Functional delta(const GenPoint& x);

// --- distribution embeddings ------------------------------------------------

// Direct action: delta derivatives act through exact jets at the point,
// densities through the pairing integral.
Functional embed_distribution_direct(const DistributionSpec& w);

// Integral-kernel action: T(u) = [int v_eps u_eps].  The accepted input
// class is dual to v's decay: compactly supported v acts on G, decaying v
// acts on G_S, plain v acts on G_c.
Functional embed_genfunction(const GenFunction& v);

// --- concentrated kernel nets ------------------------------------------------

// v_eps(y) = psi(y) phi_eps(x_eps - y): the compactly supported kernel net
// whose pairing reproduces evaluation at x up to a negligible defect when
// phi has vanishing moments.  The cutoff must be identically 1 on a
// neighborhood of the point's trajectory hull (CutoffDoesNotCoverTail
// otherwise), and the point must be bounded.
GenFunction delta_kernel(const GenPoint& x, const Cutoff& psi,
                         std::shared_ptr<const Kernel> phi);

// v_eps(y) = phi_eps(x_eps - y) without a cutoff, Schwartz-tagged; the
// point may escape but must be moderate.
GenFunction delta_kernel_global(const GenPoint& x,
                                std::shared_ptr<const Kernel> phi);

// v_eps(y) = rho_{eps^q}(x_eps - y): the q-accelerated concentration whose
// pairing defect against evaluation at x improves with q.  Requires q >= 1
// and unit kernel mass.
GenFunction regularization_sequence(const GenPoint& x,
                                    std::shared_ptr<const Kernel> rho, int q);

// u_q = [rhohat(eps^q x) (rho_{eps^q} * u_eps)(x)]: convolution smoothing
// with a spectral cutoff, Schwartz-tagged.  The kernel must have a known
// real spectrum: the bundled table kernels (untilted) or the Gaussian.
GenFunction smoothing_sequence(const GenFunction& u,
                               std::shared_ptr<const Kernel> rho, int q);

// --- series of point functionals ---------------------------------------------

struct SeriesTailProbe {
  int q = 0;            // claimed valuation bound for the tail from n = q
  DecayEstimate tail;   // measured decay of sum_{n=q}^{terms} delta_n(u)
  bool meets_bound = false;  // measured valuation >= q - 0.5
};

struct SeriesDeltaReport {
  int terms = 0;                         // partial sums go up to S_terms
  std::vector<GenNumber> partial_sums;   // S_1 .. S_terms
  std::vector<SeriesTailProbe> tails;    // q = 1 .. q_probe
};

// Sum of point evaluations at x_n.  The default sequence is x_n = eps^-n,
// whose terms decay like eps^n on inputs with (1+|x|)|u_eps| bounded; the
// tails then certify the Cauchy property of the partial sums.
SeriesDeltaReport series_delta(const GenFunction& u, int q_probe,
                               const EpsGrid& grid = EpsGrid::deep(),
                               const EstimateOptions& opts = {});
SeriesDeltaReport series_delta(const std::function<GenPoint(int)>& points,
                               const GenFunction& u, int q_probe,
                               const EpsGrid& grid = EpsGrid::deep(),
                               const EstimateOptions& opts = {});

struct TaylorDefectProbe {
  int q = 0;            // expansion degree
  DecayEstimate defect; // decay of u_eps(eps) - sum_{i<=q} eps^i/i! d^i u_eps(0)
};

struct TaylorSeriesReport {
  std::vector<TaylorDefectProbe> defects;  // q = 0 .. q_max
};

// Taylor expansion of evaluation at the moving point [eps] around 0.  For
// derivative-uniform inputs the degree-q defect gains a full order per
// degree; for inputs with derivative growth it stalls, which is the
// non-convergence device.  q_max is capped by the jet budget.
TaylorSeriesReport taylor_delta_series(const GenFunction& u, int q_max,
                                       const EpsGrid& grid = EpsGrid::deep(),
                                       const EstimateOptions& opts = {});

// --- localization ------------------------------------------------------------

// T restricted to inputs supported in V: evaluation requires a certified
// input support inside V.
Functional restrict(const Functional& T, const Box& V);

// Probed support: centers whose bump probes (three nested widths per
// center) evaluate non-negligibly under T.  Resolution is the probe
// radius; the functional's sample hints join the sampling grid.
std::vector<double> support_probe(const Functional& T,
                                  const std::vector<double>& centers,
                                  double radius,
                                  const EpsGrid& grid = EpsGrid::deep(),
                                  const EstimateOptions& opts = {});

// Extension of T to inputs without compact support: T'(u) = T(chi u).
// The cutoff must be identically 1 on a neighborhood of the functional's
// certified support hull (CutoffDoesNotCoverSupport otherwise).
Functional cutoff_extension(const Functional& T, const Cutoff& chi);

// --- probe corpus ------------------------------------------------------------

// Fixed, versioned family of smooth compactly supported probes used by the
// verification checks; members are derivative-uniform constant nets with
// support inside [-4, 4].
struct ProbeCorpus {
  std::string version;
  std::vector<std::string> names;
  std::vector<GenFunction> members;
};

const ProbeCorpus& regular_probe_corpus();

// Bump probes at 3 scales x 5 translations spanning [lo, hi], used for
// continuity estimates.
std::vector<GenFunction> translation_probe_family(double lo, double hi);

}  // namespace colombeau
