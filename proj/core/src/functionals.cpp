#include "colombeau/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "colombeau/errors.hpp"
#include "colombeau/jets.hpp"

namespace colombeau {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kDeltaDerivativeCap = 6;

int tag_decay(SpaceTag t) {
  switch (t) {
    case SpaceTag::Gc:
    case SpaceTag::GcInf:
      return 0;
    case SpaceTag::GS:
    case SpaceTag::GSInf:
      return 1;
    case SpaceTag::Gtau:
      return 2;
    case SpaceTag::G:
    case SpaceTag::Ginf:
      return 3;
  }
  return 3;
}

// The input class dual to a kernel net's decay: compactly supported kernels
// pair with everything, decaying kernels with Schwartz-tagged inputs, plain
// kernels only with compactly supported inputs.
SpaceTag dual_of(SpaceTag kernel_tag) {
  switch (tag_decay(kernel_tag)) {
    case 0:
      return SpaceTag::G;
    case 1:
    case 2:
      return SpaceTag::GS;
    default:
      return SpaceTag::Gc;
  }
}

std::vector<double> merged_eps(const EpsGrid& grid,
                               const std::vector<double>& hints) {
  std::vector<double> eps = grid.samples();
  for (double h : hints) {
    if (h > 0.0 && h <= 1.0) eps.push_back(h);
  }
  std::sort(eps.begin(), eps.end(), std::greater<double>());
  eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
  return eps;
}

// Trajectory hull of a bounded point over the grid plus its hints.
std::pair<double, double> trajectory_hull(const GenPoint& pt,
                                          const EpsGrid& grid) {
  double lo = kInf, hi = -kInf;
  for (double e : merged_eps(grid, pt.sample_hints())) {
    const double x = pt.at(e).x;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return {lo, hi};
}

void require_line_point(const GenPoint& pt, const char* who) {
  if (pt.dim() != 1) {
    throw InvalidConfig(std::string(who) +
                        ": point functionals are one-dimensional here");
  }
}

void require_moderate_point(const GenPoint& pt) {
  GenNumber::from_real([pt](double e) { return pt.at(e).x; })
      .require_moderate();
}

ScalarNet coordinate_net(const GenPoint& pt) {
  return [pt](double e) { return pt.at(e).x; };
}

// phi_{w(eps)}(x_eps - y) as a representative in y: warp by
// (y - x_eps) * (-1/w), then scale by 1/w.  The sign matters for kernels
// without even symmetry.
SmoothRep concentrated_kernel(const GenPoint& pt,
                              std::shared_ptr<const Kernel> phi,
                              ScalarNet width) {
  auto inv = [width](double e) {
    const double w = width(e);
    if (!(std::isfinite(w)) || !(w > 0.0)) {
      throw InvalidNet("concentration width must be positive, got " +
                       std::to_string(w) + " at eps=" + std::to_string(e));
    }
    return 1.0 / w;
  };
  return SmoothRep::kernel(std::move(phi))
      .warped(coordinate_net(pt), [inv](double e) { return -inv(e); })
      .scaled(inv);
}

// "Vanishes" in the support-probe sense: certified to decay past q_max (or
// identically zero).  An ambiguous fit cannot certify vanishing, so it is
// conservatively read as present.
bool probe_vanishes(const DecayEstimate& e, const EstimateOptions& opts) {
  switch (e.cls) {
    case Classification::IdenticallyZero:
    case Classification::BeyondOrder:
      return true;
    case Classification::Order:
      return e.slope >= opts.q_max;
    case Classification::Ambiguous:
      return false;
  }
  return false;
}

double measured_valuation(const DecayEstimate& e) {
  switch (e.cls) {
    case Classification::IdenticallyZero:
      return kInf;
    case Classification::BeyondOrder:
      return e.q_max;
    case Classification::Order:
      return e.slope;
    case Classification::Ambiguous:
      return -kInf;
  }
  return -kInf;
}

}  // namespace

const char* to_string(ProvenanceKind k) {
  switch (k) {
    case ProvenanceKind::Delta:
      return "delta";
    case ProvenanceKind::DirectDistribution:
      return "direct-distribution";
    case ProvenanceKind::IntegralKernel:
      return "integral-kernel";
    case ProvenanceKind::Series:
      return "series";
    case ProvenanceKind::Restriction:
      return "restriction";
  }
  return "?";
}

Functional::Functional(Evaluator eval, SpaceTag domain_tag, Provenance prov)
    : eval_(std::move(eval)), domain_(domain_tag), prov_(std::move(prov)) {
  if (!eval_) throw InvalidConfig("functional: evaluator must be callable");
}

GenNumber Functional::operator()(const GenFunction& u) const {
  return eval_(u);
}

Functional Functional::with_sample_hints(std::vector<double> hints) const {
  Functional f = *this;
  f.hints_.insert(f.hints_.end(), hints.begin(), hints.end());
  return f;
}

Functional Functional::with_support_hull(double lo, double hi) const {
  if (!(lo <= hi)) {
    throw InvalidConfig("support hull: need lo <= hi");
  }
  Functional f = *this;
  f.hull_ = std::make_pair(lo, hi);
  return f;
}

DistributionSpec DistributionSpec::delta_derivative(int order, double point) {
  if (order < 0 || order > kDeltaDerivativeCap) {
    throw UnsupportedDistribution(
        "point-mass derivatives are supported up to order " +
        std::to_string(kDeltaDerivativeCap) + ", got " +
        std::to_string(order));
  }
  DistributionSpec w;
  w.kind_ = Kind::DeltaDerivative;
  w.order_ = order;
  w.point_ = point;
  return w;
}

DistributionSpec DistributionSpec::regular(SmoothRep density, SpaceTag tag) {
  DistributionSpec w;
  w.kind_ = Kind::RegularFunction;
  w.density_ = std::move(density);
  w.tag_ = tag;
  return w;
}

const SmoothRep& DistributionSpec::density() const {
  if (!density_) {
    throw InvalidConfig("distribution spec carries no density");
  }
  return *density_;
}

// --- point functionals ------------------------------------------------------

Functional delta(const GenPoint& x) {
  require_line_point(x, "delta");
  require_moderate_point(x);
  const bool bounded = is_compactly_supported(x);
  const SpaceTag domain = bounded ? SpaceTag::G : SpaceTag::Gtau;

  Functional f(
      [x](const GenFunction& u) { return point_value(u, x); }, domain,
      {ProvenanceKind::Delta,
       bounded ? "evaluation at a bounded generalized point"
               : "evaluation at an escaping generalized point"});
  f = f.with_sample_hints(x.sample_hints());
  if (bounded) {
    const auto hull = trajectory_hull(x, EpsGrid::deep());
    f = f.with_support_hull(hull.first, hull.second);
  }
  return f;
}

// --- distribution embeddings --------------------------------------------------

Functional embed_distribution_direct(const DistributionSpec& w) {
  if (w.kind() == DistributionSpec::Kind::DeltaDerivative) {
    const int k = w.order();
    const double x0 = w.point();
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const GenPoint pt = GenPoint::line([x0](double) { return x0; });
    std::ostringstream detail;
    detail << "order-" << k << " point mass at " << x0 << ", direct action";
    Functional f(
        [pt, k, sign](const GenFunction& u) {
          return GenNumber::constant(sign) * point_derivative(u, pt, k);
        },
        SpaceTag::G, {ProvenanceKind::DirectDistribution, detail.str()});
    return f.with_support_hull(x0, x0);
  }

  const GenFunction density =
      GenFunction::on_line(w.density(), w.density_tag());
  Functional f(
      [density](const GenFunction& u) { return integrate_pair(density, u); },
      dual_of(w.density_tag()),
      {ProvenanceKind::DirectDistribution, "smooth density, pairing action"});
  if (const auto s = w.density().support(1.0)) {
    f = f.with_support_hull(s->first, s->second);
  }
  return f;
}

Functional embed_genfunction(const GenFunction& v) {
  Functional f(
      [v](const GenFunction& u) { return integrate_pair(v, u); },
      dual_of(v.space_tag()),
      {ProvenanceKind::IntegralKernel,
       std::string("pairing against a net tagged ") +
           to_string(v.space_tag())});

  if (v.declared_support()) {
    f = f.with_support_hull(v.declared_support()->lo.x,
                            v.declared_support()->hi.x);
  } else {
    double lo = kInf, hi = -kInf;
    bool all = true;
    for (double e : EpsGrid::deep().samples()) {
      const auto s = v.rep().support(e);
      if (!s) {
        all = false;
        break;
      }
      lo = std::min(lo, s->first);
      hi = std::max(hi, s->second);
    }
    if (all) f = f.with_support_hull(lo, hi);
  }
  return f;
}

// --- concentrated kernel nets --------------------------------------------------

GenFunction delta_kernel(const GenPoint& x, const Cutoff& psi,
                         std::shared_ptr<const Kernel> phi) {
  require_line_point(x, "delta kernel");
  require_moderate_point(x);
  if (!is_compactly_supported(x)) {
    throw InvalidConfig("delta kernel: the point must be bounded");
  }
  const auto hull = trajectory_hull(x, EpsGrid::deep());
  const double p_lo = psi.center() - psi.plateau();
  const double p_hi = psi.center() + psi.plateau();
  if (!(p_lo < hull.first && hull.second < p_hi)) {
    std::ostringstream msg;
    msg << "cutoff plateau [" << p_lo << ", " << p_hi
        << "] does not strictly cover the point trajectory hull ["
        << hull.first << ", " << hull.second << "]";
    throw CutoffDoesNotCoverTail(msg.str());
  }

  const SmoothRep rep =
      SmoothRep::bump(psi) *
      concentrated_kernel(x, std::move(phi), [](double e) { return e; });
  return GenFunction::on_line(rep, SpaceTag::Gc)
      .with_support(Box::interval(psi.center() - psi.support(),
                                  psi.center() + psi.support()));
}

GenFunction delta_kernel_global(const GenPoint& x,
                                std::shared_ptr<const Kernel> phi) {
  require_line_point(x, "global delta kernel");
  require_moderate_point(x);
  const SmoothRep rep =
      concentrated_kernel(x, std::move(phi), [](double e) { return e; });
  return GenFunction::on_line(rep, SpaceTag::GS);
}

GenFunction regularization_sequence(const GenPoint& x,
                                    std::shared_ptr<const Kernel> rho,
                                    int q) {
  require_line_point(x, "regularization sequence");
  if (q < 1) {
    throw InvalidConfig("regularization sequence: need q >= 1, got " +
                        std::to_string(q));
  }
  require_moderate_point(x);
  const SmoothRep rep = concentrated_kernel(
      x, std::move(rho), [q](double e) { return std::pow(e, q); });
  return GenFunction::on_line(rep, SpaceTag::GS);
}

GenFunction smoothing_sequence(const GenFunction& u,
                               std::shared_ptr<const Kernel> rho, int q) {
  if (q < 1) {
    throw InvalidConfig("smoothing sequence: need q >= 1, got " +
                        std::to_string(q));
  }
  if (!u.domain_is_line()) {
    throw InvalidConfig(
        "smoothing sequence: the input must be globally defined");
  }
  if (!rho) throw InvalidConfig("smoothing sequence: null kernel");

  SmoothRep hat = SmoothRep::constant(0.0);
  if (const auto* tk = dynamic_cast<const TableKernel*>(rho.get())) {
    if (tk->profile().tilt != 0.0) {
      throw InvalidConfig(
          "smoothing sequence: the kernel spectrum must be real; tilted "
          "kernels are not admissible here");
    }
    hat = SmoothRep::spectral_ramp(tk->profile());
  } else if (rho->name() == "gaussian") {
    // exp(-x^2)/sqrt(pi) has transform exp(-xi^2 / 4).
    hat = SmoothRep::gaussian().substituted(0.5, 0.0);
  } else {
    throw InvalidConfig(
        "smoothing sequence: no known spectrum for kernel " + rho->name());
  }

  const SmoothRep rep =
      u.rep().mollified(rho, [q](double e) { return std::pow(e, q); }) *
      hat.dilated(-static_cast<double>(q));
  return GenFunction::on_line(rep, SpaceTag::GS);
}

// --- series of point functionals -----------------------------------------------

SeriesDeltaReport series_delta(const std::function<GenPoint(int)>& points,
                               const GenFunction& u, int q_probe,
                               const EpsGrid& grid,
                               const EstimateOptions& opts) {
  if (!points) {
    throw InvalidConfig("series: the point sequence must be callable");
  }
  if (q_probe < 1) {
    throw InvalidConfig("series: need q_probe >= 1, got " +
                        std::to_string(q_probe));
  }
  if (!u.domain_is_line() || tag_decay(u.space_tag()) > 2) {
    throw InvalidConfig(
        "series: the input must be globally defined with controlled decay");
  }

  SeriesDeltaReport report;
  report.terms = std::min(q_probe + 3, 11);

  std::vector<GenNumber> terms;
  for (int n = 1; n <= report.terms; ++n) {
    terms.push_back(point_value(u, points(n)));
  }

  GenNumber running = GenNumber::constant(0.0);
  for (const GenNumber& t : terms) {
    running = running + t;
    report.partial_sums.push_back(running);
  }

  for (int q = 1; q <= q_probe; ++q) {
    GenNumber tail = GenNumber::constant(0.0);
    for (int n = q; n <= report.terms; ++n) {
      tail = tail + terms[static_cast<size_t>(n - 1)];
    }
    SeriesTailProbe probe;
    probe.q = q;
    probe.tail = tail.decay(grid, opts);
    probe.meets_bound = measured_valuation(probe.tail) >= q - 0.5;
    report.tails.push_back(std::move(probe));
  }
  return report;
}

SeriesDeltaReport series_delta(const GenFunction& u, int q_probe,
                               const EpsGrid& grid,
                               const EstimateOptions& opts) {
  return series_delta(
      [](int n) {
        return GenPoint::line(
            [n](double e) { return std::pow(e, -static_cast<double>(n)); });
      },
      u, q_probe, grid, opts);
}

TaylorSeriesReport taylor_delta_series(const GenFunction& u, int q_max,
                                       const EpsGrid& grid,
                                       const EstimateOptions& opts) {
  if (q_max < 0 || q_max > kJetMaxOrder) {
    throw OrderTooHigh("Taylor degree must lie in [0, " +
                       std::to_string(kJetMaxOrder) + "], got " +
                       std::to_string(q_max));
  }
  const double eps_top = grid.samples().front();
  if (!u.domain_is_line() &&
      !(u.domain().contains({0.0, 0.0}) &&
        u.domain().contains({eps_top, 0.0}))) {
    throw InvalidConfig(
        "Taylor series: the domain must contain 0 and the moving point");
  }

  TaylorSeriesReport report;
  const SmoothRep rep = u.rep();
  for (int q = 0; q <= q_max; ++q) {
    const GenNumber defect = GenNumber::from_real([rep, q](double e) {
      const Jet1 j = rep.jet(e, 0.0, q);
      double partial = 0.0, pw = 1.0;
      for (int i = 0; i <= q; ++i) {
        partial += j.coeff(i) * pw;
        pw *= e;
      }
      return rep.value(e, e, 0) - partial;
    });
    report.defects.push_back({q, defect.decay(grid, opts)});
  }
  return report;
}

// --- localization ----------------------------------------------------------------

Functional restrict(const Functional& T, const Box& V) {
  if (!V.valid() || V.dim != 1) {
    throw InvalidConfig("restriction window must be a valid interval");
  }
  Functional f(
      [T, V](const GenFunction& u) {
        double lo, hi;
        if (u.declared_support()) {
          lo = u.declared_support()->lo.x;
          hi = u.declared_support()->hi.x;
        } else {
          lo = kInf;
          hi = -kInf;
          for (double e : EpsGrid::deep().samples()) {
            const auto s = u.rep().support(e);
            if (!s) {
              throw NoCompactSupport(
                  "restriction: the input needs a certified support");
            }
            lo = std::min(lo, s->first);
            hi = std::max(hi, s->second);
          }
        }
        if (lo < V.lo.x || hi > V.hi.x) {
          std::ostringstream msg;
          msg << "input support [" << lo << ", " << hi
              << "] escapes the restriction window [" << V.lo.x << ", "
              << V.hi.x << "]";
          throw InvalidConfig(msg.str());
        }
        return T(u);
      },
      SpaceTag::Gc, {ProvenanceKind::Restriction, "window restriction"});
  f = f.with_sample_hints(T.sample_hints());
  double lo = V.lo.x, hi = V.hi.x;
  if (T.support_hull()) {
    lo = std::max(lo, T.support_hull()->first);
    hi = std::min(hi, T.support_hull()->second);
    if (lo > hi) lo = hi = V.lo.x;  // disjoint: the restriction vanishes
  }
  return f.with_support_hull(lo, hi);
}

std::vector<double> support_probe(const Functional& T,
                                  const std::vector<double>& centers,
                                  double radius, const EpsGrid& grid,
                                  const EstimateOptions& opts) {
  if (!(radius > 0.0)) {
    throw InvalidConfig("support probe: radius must be positive");
  }
  const std::vector<double> eps = merged_eps(grid, T.sample_hints());

  std::vector<double> found;
  for (double c : centers) {
    if (std::find(found.begin(), found.end(), c) != found.end()) continue;
    bool present = false;
    for (double scale : {1.0, 0.5, 0.25}) {
      const Cutoff probe(c, 0.5 * radius * scale, radius * scale);
      const GenNumber v =
          T(GenFunction::on_line(SmoothRep::bump(probe), SpaceTag::GcInf));
      std::vector<Sample> samples;
      for (double e : eps) samples.push_back({e, std::abs(v.at(e))});
      if (!probe_vanishes(estimate_valuation(std::move(samples), opts),
                          opts)) {
        present = true;
        break;
      }
    }
    if (present) found.push_back(c);
  }
  return found;
}

Functional cutoff_extension(const Functional& T, const Cutoff& chi) {
  if (!T.support_hull()) {
    throw CutoffDoesNotCoverSupport(
        "cutoff extension: the functional carries no certified support hull");
  }
  const double lo = T.support_hull()->first;
  const double hi = T.support_hull()->second;
  const double p_lo = chi.center() - chi.plateau();
  const double p_hi = chi.center() + chi.plateau();
  if (!(p_lo < lo && hi < p_hi)) {
    std::ostringstream msg;
    msg << "cutoff plateau [" << p_lo << ", " << p_hi
        << "] does not strictly cover the support hull [" << lo << ", " << hi
        << "]";
    throw CutoffDoesNotCoverSupport(msg.str());
  }

  Functional f(
      [T, chi](const GenFunction& u) {
        const GenFunction window(SmoothRep::bump(chi), u.domain(),
                                 SpaceTag::GcInf);
        return T(window * u);
      },
      SpaceTag::G, {ProvenanceKind::Restriction, "cutoff extension"});
  f = f.with_sample_hints(T.sample_hints());
  return f.with_support_hull(lo, hi);
}

// --- probe corpus -----------------------------------------------------------------

const ProbeCorpus& regular_probe_corpus() {
  static const ProbeCorpus corpus = [] {
    ProbeCorpus c;
    c.version = "corpus-v1";
    auto add = [&c](const char* name, SmoothRep rep) {
      c.names.emplace_back(name);
      c.members.push_back(
          GenFunction::on_line(std::move(rep), SpaceTag::GcInf));
    };
    const SmoothRep x = SmoothRep::coordinate();
    add("bump-unit", SmoothRep::bump(Cutoff(0.0, 1.0, 2.0)));
    add("bump-offset", SmoothRep::bump(Cutoff(0.7, 0.8, 1.6)));
    add("bump-narrow", SmoothRep::bump(Cutoff(-1.2, 0.3, 0.7)));
    add("gauss-cut",
        SmoothRep::gaussian() * SmoothRep::bump(Cutoff(0.0, 2.0, 3.5)));
    add("poly-cut", SmoothRep::polynomial({1.0, 1.0, -1.0}) *
                        SmoothRep::bump(Cutoff(0.2, 1.2, 2.4)));
    add("sine-cut",
        SmoothRep::sine(2.0) * SmoothRep::bump(Cutoff(-0.4, 1.0, 2.0)));
    add("cubic-cut",
        x * x * x * SmoothRep::bump(Cutoff(0.0, 1.5, 3.0)));
    add("cos-gauss-cut", SmoothRep::cosine(1.5) * SmoothRep::gaussian() *
                             SmoothRep::bump(Cutoff(0.0, 1.8, 3.2)));
    add("ramp-wide", SmoothRep::bump(Cutoff(1.1, 0.5, 2.9)));
    add("mix-sum", SmoothRep::bump(Cutoff(0.0, 1.0, 2.0)).scaled(0.6) +
                       SmoothRep::bump(Cutoff(-1.2, 0.3, 0.7)));
    return c;
  }();
  return corpus;
}

std::vector<GenFunction> translation_probe_family(double lo, double hi) {
  if (!(hi > lo)) {
    throw InvalidConfig("probe family: need lo < hi");
  }
  std::vector<GenFunction> probes;
  const double span = hi - lo;
  for (double scale : {0.25, 0.125, 0.0625}) {
    const double s = span * scale;
    for (int j = 0; j < 5; ++j) {
      const double c = lo + (j + 0.5) * span / 5.0;
      probes.push_back(GenFunction::on_line(
          SmoothRep::bump(Cutoff(c, 0.55 * s, s)), SpaceTag::GcInf));
    }
  }
  return probes;
}

}  // namespace colombeau
