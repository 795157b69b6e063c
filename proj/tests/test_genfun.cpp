#include "colombeau/genfun.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "doctest.h"

using namespace colombeau;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool near_abs(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

bool near_rel(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

GenFunction line(const SmoothRep& rep, SpaceTag tag) {
  return GenFunction::on_line(rep, tag);
}

// Central finite difference, an evaluation route independent of the jet
// recurrences.
double fd1(const SmoothRep& rep, double eps, double x, double h) {
  return (rep.value(eps, x + h) - rep.value(eps, x - h)) / (2.0 * h);
}

}  // namespace

// ---------------------------------------------------------------------------
// Evaluation against closed forms.

TEST_CASE("primitive representatives match closed forms") {
  const std::vector<double> xs{-1.7, -0.4, 0.0, 0.3, 2.2};

  const SmoothRep p = SmoothRep::polynomial({2.0, -1.0, 0.0, 3.0});
  for (double x : xs) {
    CHECK(near_rel(p.value(1.0, x), 2.0 - x + 3.0 * x * x * x, 1e-14));
    CHECK(near_rel(p.value(1.0, x, 1), -1.0 + 9.0 * x * x, 1e-13));
    CHECK(near_rel(p.value(1.0, x, 2), 18.0 * x, 1e-13));
    CHECK(p.value(1.0, x, 3) == 18.0);
    CHECK(p.value(1.0, x, 4) == 0.0);
  }

  const SmoothRep e = SmoothRep::exponential(-1.5);
  for (double x : xs) {
    double want = std::exp(-1.5 * x);
    for (int k = 0; k <= 4; ++k) {
      CHECK(near_rel(e.value(0.5, x, k), want, 1e-12));
      want *= -1.5;
    }
  }

  const SmoothRep s = SmoothRep::sine(3.0, 0.7);
  const SmoothRep c = SmoothRep::cosine(2.0);
  for (double x : xs) {
    CHECK(near_abs(s.value(1.0, x), std::sin(3.0 * x + 0.7), 1e-14));
    CHECK(near_abs(s.value(1.0, x, 1), 3.0 * std::cos(3.0 * x + 0.7), 1e-13));
    CHECK(near_abs(s.value(1.0, x, 2), -9.0 * std::sin(3.0 * x + 0.7), 1e-12));
    CHECK(near_abs(c.value(1.0, x), std::cos(2.0 * x), 1e-14));
    CHECK(near_abs(c.value(1.0, x, 1), -2.0 * std::sin(2.0 * x), 1e-13));
  }

  // Degenerate frequencies and rates collapse to constants.
  CHECK(SmoothRep::exponential(0.0).value(1.0, 3.3) == 1.0);
  CHECK(SmoothRep::sine(0.0, 0.25).value(1.0, 7.0) == std::sin(0.25));

  const SmoothRep g = SmoothRep::gaussian();
  for (double x : {-11.0, -2.5, -1.0, 0.0, 0.6, 3.0, 9.0}) {
    CHECK(near_rel(g.value(1.0, x), std::exp(-x * x), 5e-14));
    CHECK(near_rel(g.value(1.0, x, 1), -2.0 * x * std::exp(-x * x), 5e-13));
  }
}

TEST_CASE("product jets satisfy trigonometric and exponential identities") {
  // sin(x) cos(x) = sin(2x) / 2: the product route must reproduce the
  // single-primitive route at every jet order.
  const SmoothRep lhs = SmoothRep::sine(1.0) * SmoothRep::cosine(1.0);
  const SmoothRep rhs = SmoothRep::sine(2.0).scaled(0.5);
  for (double x : {-2.0, -0.3, 0.45, 1.9}) {
    const Jet1 a = lhs.jet(1.0, x, 6);
    const Jet1 b = rhs.jet(1.0, x, 6);
    for (int k = 0; k <= 6; ++k) {
      CHECK(near_abs(a.coeff(k), b.coeff(k), 1e-12));
    }
  }

  // exp(x) exp(2x) = exp(3x).
  const SmoothRep pe = SmoothRep::exponential(1.0) * SmoothRep::exponential(2.0);
  const SmoothRep se = SmoothRep::exponential(3.0);
  for (double x : {-1.2, 0.0, 0.8}) {
    const Jet1 a = pe.jet(1.0, x, 5);
    const Jet1 b = se.jet(1.0, x, 5);
    for (int k = 0; k <= 5; ++k) {
      CHECK(near_rel(a.coeff(k), b.coeff(k), 1e-12));
    }
  }

  // exp(-x^2) exp(-x^2) = exp(-2x^2) = gaussian(sqrt(2) x).
  const SmoothRep gg = SmoothRep::gaussian() * SmoothRep::gaussian();
  const SmoothRep g2 = SmoothRep::gaussian().substituted(std::sqrt(2.0), 0.0);
  for (double x : {-1.5, 0.2, 0.9}) {
    const Jet1 a = gg.jet(1.0, x, 4);
    const Jet1 b = g2.jet(1.0, x, 4);
    for (int k = 0; k <= 4; ++k) {
      CHECK(near_abs(a.coeff(k), b.coeff(k), 1e-12));
    }
  }

  // (1+x)(1-x) = 1-x^2: at a dyadic point both routes are exact, so the
  // jet coefficients agree bitwise.
  const SmoothRep q =
      SmoothRep::polynomial({1.0, 1.0}) * SmoothRep::polynomial({1.0, -1.0});
  const Jet1 j = q.jet(1.0, 0.5, 3);
  const Jet1 r = SmoothRep::polynomial({1.0, 0.0, -1.0}).jet(1.0, 0.5, 3);
  for (int k = 0; k <= 3; ++k) CHECK(j.coeff(k) == r.coeff(k));

  // Finite differences agree with the jet's first derivative on a mixed
  // expression.
  const SmoothRep mixed = SmoothRep::gaussian() * SmoothRep::sine(2.0) +
                          SmoothRep::polynomial({0.0, 0.5, -0.25});
  for (double x : {-0.9, 0.1, 1.3}) {
    CHECK(near_abs(mixed.value(1.0, x, 1), fd1(mixed, 1.0, x, 1e-6), 5e-9));
  }
}

TEST_CASE("derivative representatives shift jets exactly") {
  const SmoothRep ds = SmoothRep::sine(2.0).derivative(1);
  const SmoothRep dc = SmoothRep::cosine(2.0).scaled(2.0);
  const SmoothRep d2s = SmoothRep::sine(2.0).derivative(2);
  const SmoothRep ms = SmoothRep::sine(2.0).scaled(-4.0);
  for (double x : {-1.1, 0.0, 0.7, 2.5}) {
    CHECK(near_abs(ds.value(1.0, x), dc.value(1.0, x), 1e-13));
    CHECK(near_abs(d2s.value(1.0, x), ms.value(1.0, x), 1e-12));
  }
  CHECK(SmoothRep::sine(1.0).derivative(0).value(1.0, 0.4) ==
        SmoothRep::sine(1.0).value(1.0, 0.4));

  // The jet budget is a hard cap: shifted orders past it must throw.
  CHECK_THROWS_AS(SmoothRep::gaussian().derivative(9), OrderTooHigh);
  CHECK_THROWS_AS(SmoothRep::gaussian().derivative(3).jet(1.0, 0.0, 6),
                  OrderTooHigh);
  CHECK_THROWS_AS(
      SmoothRep::gaussian().derivative(4).derivative(5).jet(1.0, 0.0, 0),
      OrderTooHigh);
  CHECK_NOTHROW(SmoothRep::gaussian().derivative(4).jet(1.0, 0.0, 4));
}

TEST_CASE("affine and eps-dependent warps relocate structure") {
  const SmoothRep g = SmoothRep::gaussian();

  const SmoothRep t = g.translated(0.75);
  for (double x : {-1.0, 0.3, 2.0}) {
    CHECK(t.value(1.0, x) == g.value(1.0, x - 0.75));
  }

  // f(2x - 1) via the affine substitution.
  const SmoothRep sq = SmoothRep::polynomial({0.0, 0.0, 1.0});
  const SmoothRep sub = sq.substituted(2.0, -1.0);
  for (double x : {-0.5, 0.0, 0.8, 1.6}) {
    const double y = 2.0 * x - 1.0;
    CHECK(near_rel(sub.value(1.0, x), y * y, 1e-13));
    CHECK(near_abs(sub.value(1.0, x, 1), 4.0 * y, 1e-12));
  }
  CHECK_THROWS_AS(sq.substituted(0.0, 1.0), InvalidConfig);

  // Concentration: sine(1).dilated(1) is sin(x / eps), derivatives gaining
  // one power of 1/eps each.
  const SmoothRep osc = SmoothRep::sine(1.0).dilated(1.0);
  for (int k = 4; k <= 12; k += 4) {
    const double eps = std::pow(2.0, -k);
    CHECK(near_abs(osc.value(eps, 0.3), std::sin(0.3 / eps), 1e-12));
    CHECK(near_rel(osc.value(eps, 0.3, 1), std::cos(0.3 / eps) / eps, 1e-11));
  }

  // The shift-before-scale order makes the argument cancel exactly at the
  // moving center, so a concentrated kernel is evaluated at its true peak.
  const auto flat = vanishing_moment_kernel();
  const SmoothRep moving = SmoothRep::kernel(flat).warped(
      [](double) { return 0.3; }, [](double eps) { return 1.0 / eps; });
  for (int k = 6; k <= 30; k += 6) {
    const double eps = std::pow(2.0, -k);
    CHECK(moving.value(eps, 0.3) == flat->value(0.0, 0));
  }

  // Scalar-net scaling multiplies values pointwise.
  const SmoothRep damped =
      g.scaled([](double eps) { return eps * eps; });
  CHECK(damped.value(0.25, 0.5) == 0.0625 * g.value(0.25, 0.5));

  // A vanishing warp scale is a representation error, not a zero.
  const SmoothRep bad = g.warped([](double) { return 0.0; },
                                 [](double eps) { return eps < 0.1 ? 0.0 : 1.0; });
  CHECK_NOTHROW(bad.value(0.5, 0.2));
  CHECK_THROWS_AS(bad.value(0.05, 0.2), InvalidNet);
}

// ---------------------------------------------------------------------------
// Structure: supports, windows, certified decay.

TEST_CASE("supports and windows track the expression tree") {
  const Cutoff psi(0.0, 0.5, 1.0);
  const SmoothRep b = SmoothRep::bump(psi);

  const auto s = b.support(0.25);
  REQUIRE(s.has_value());
  CHECK(s->first == -1.0);
  CHECK(s->second == 1.0);
  CHECK(b.value(1.0, 1.001) == 0.0);
  CHECK(b.value(1.0, -1.2) == 0.0);
  CHECK(b.value(1.0, 0.49) == 1.0);
  CHECK(b.value(1.0, -0.3, 1) == 0.0);
  CHECK(b.windows(1.0).size() == 2);

  // Translation by a net moves the support interval exactly.
  const SmoothRep drift =
      b.translated([](double eps) { return 1.0 + eps; });
  const auto sd = drift.support(0.25);
  REQUIRE(sd.has_value());
  CHECK(sd->first == 0.25);
  CHECK(sd->second == 2.25);

  // Sums take hulls; unsupported summands erase the certificate.
  const SmoothRep far = SmoothRep::bump(Cutoff(3.0, 0.5, 1.0));
  const auto sh = (b + far).support(1.0);
  REQUIRE(sh.has_value());
  CHECK(sh->first == -1.0);
  CHECK(sh->second == 4.0);
  CHECK_FALSE((b + SmoothRep::sine(1.0)).support(1.0).has_value());

  // Products intersect; disjoint factors leave a degenerate interval and
  // identically zero values.
  const SmoothRep prod = b * far;
  const auto sp = prod.support(1.0);
  REQUIRE(sp.has_value());
  CHECK(sp->first == sp->second);
  CHECK(prod.value(1.0, 1.5) == 0.0);
  const auto sn = (b * SmoothRep::bump(Cutoff(1.5, 0.5, 1.0))).support(1.0);
  REQUIRE(sn.has_value());
  CHECK(sn->first == 0.5);
  CHECK(sn->second == 1.0);

  // A scalar factor that is exactly zero kills support, windows, and jets.
  const SmoothRep gated =
      b.scaled([](double eps) { return eps < 0.01 ? 0.0 : 1.0; });
  const auto sg = gated.support(0.005);
  REQUIRE(sg.has_value());
  CHECK(sg->first == sg->second);
  CHECK(gated.windows(0.005).empty());
  CHECK(gated.value(0.005, 0.2, 2) == 0.0);
  CHECK(gated.value(0.5, 0.2) == 1.0);

  // Kernel-backed representatives carry their truncation radius.
  const SmoothRep k = SmoothRep::kernel(vanishing_moment_kernel());
  const auto sk = k.support(1.0);
  REQUIRE(sk.has_value());
  CHECK(sk->first == -512.0);
  CHECK(sk->second == 512.0);
  CHECK(k.value(1.0, 512.5) == 0.0);
}

TEST_CASE("decay bounds certify weighted tails") {
  const SmoothRep b = SmoothRep::bump(Cutoff(0.0, 0.5, 1.0));
  // Beyond the support the tail is certified zero; inside, it must still
  // dominate sampled values.
  CHECK(b.decay_bound(1.0, 0, 0, 2.0) == 0.0);
  CHECK(b.decay_bound(1.0, 3, 2, 1.0) == 0.0);
  const double inner = b.decay_bound(1.0, 0, 0, 0.75);
  CHECK(std::isfinite(inner));
  CHECK(inner >= std::fabs(b.value(1.0, 0.8)));

  // Bounded oscillation certifies only the unweighted sup of derivatives.
  const SmoothRep s = SmoothRep::sine(3.0);
  CHECK(s.decay_bound(1.0, 0, 1, 5.0) == 3.0);
  CHECK(s.decay_bound(1.0, 1, 0, 5.0) == kInf);

  // The Gaussian representative is truncated at |x| = 12 and enveloped
  // before that.
  const SmoothRep g = SmoothRep::gaussian();
  CHECK(g.decay_bound(1.0, 0, 0, 13.0) == 0.0);
  const double mid = g.decay_bound(1.0, 2, 0, 8.0);
  CHECK(std::isfinite(mid));
  CHECK(mid >= 64.0 * std::exp(-64.0));

  // Products fold one factor's polynomial majorant into the other's tail.
  const SmoothRep xg = SmoothRep::polynomial({0.0, 1.0}) * SmoothRep::gaussian();
  const double pt = xg.decay_bound(1.0, 0, 0, 8.0);
  CHECK(std::isfinite(pt));
  CHECK(pt >= std::fabs(xg.value(1.0, 8.5)));

  // Unboundedly growing factors cannot certify weighted tails.
  CHECK(SmoothRep::exponential(1.0).decay_bound(1.0, 0, 0, 50.0) == kInf);
  CHECK_THROWS_AS(g.decay_bound(1.0, -1, 0, 5.0), InvalidConfig);
}

TEST_CASE("spectral ramp representative keeps its exact band structure") {
  SpectralProfile p;  // flat device band: 1 on [0,1], 0 beyond 2
  const SmoothRep r = SmoothRep::spectral_ramp(p);

  CHECK(r.value(1.0, 0.0) == 1.0);
  CHECK(r.value(1.0, 1.0) == 1.0);
  CHECK(r.value(1.0, -1.05) == 1.0);
  CHECK(r.value(1.0, 2.0) == 0.0);
  CHECK(r.value(1.0, -2.3) == 0.0);
  // Just past the flat top the value saturates to exactly 1 while the
  // ramp derivatives, though far below measurement scale, stay nonzero.
  CHECK(r.value(1.0, 1.02) == 1.0);
  CHECK(std::fabs(r.value(1.0, 1.02, 3)) < 1e-60);

  for (double xi : {1.15, 1.4, 1.62, 1.85}) {
    CHECK(r.value(1.0, xi) == spectral_amplitude(p, xi));
    CHECK(r.value(1.0, -xi) == r.value(1.0, xi));        // even extension
    CHECK(r.value(1.0, -xi, 1) == -r.value(1.0, xi, 1));  // odd derivative
    CHECK(near_abs(r.value(1.0, xi, 1), fd1(r, 1.0, xi, 1e-6), 1e-5));
  }

  const auto s = r.support(1.0);
  REQUIRE(s.has_value());
  CHECK(s->first == -2.0);
  CHECK(s->second == 2.0);
  CHECK(r.windows(1.0).size() == 2);
}

// ---------------------------------------------------------------------------
// GenFunction algebra: tags, domains, declared supports.

TEST_CASE("space tags combine along the containment lattice") {
  CHECK(std::string(to_string(SpaceTag::G)) == "G");
  CHECK(std::string(to_string(SpaceTag::Gc)) == "G_c");
  CHECK(std::string(to_string(SpaceTag::Ginf)) == "G^inf");
  CHECK(std::string(to_string(SpaceTag::GcInf)) == "G_c^inf");
  CHECK(std::string(to_string(SpaceTag::GS)) == "G_S");
  CHECK(std::string(to_string(SpaceTag::GSInf)) == "G_S^inf");
  CHECK(std::string(to_string(SpaceTag::Gtau)) == "G_tau");

  const SmoothRep g = SmoothRep::gaussian();
  const SmoothRep b = SmoothRep::bump(Cutoff(0.0, 0.5, 1.0));
  auto tag = [&](SpaceTag t) { return line(g, t); };

  // Sums live in the larger space.
  CHECK((tag(SpaceTag::Gc) + tag(SpaceTag::GS)).space_tag() == SpaceTag::GS);
  CHECK((tag(SpaceTag::Gc) + tag(SpaceTag::G)).space_tag() == SpaceTag::G);
  CHECK((tag(SpaceTag::GS) + tag(SpaceTag::Gtau)).space_tag() == SpaceTag::Gtau);
  CHECK((tag(SpaceTag::GcInf) + tag(SpaceTag::GcInf)).space_tag() ==
        SpaceTag::GcInf);
  CHECK((tag(SpaceTag::GcInf) + tag(SpaceTag::Ginf)).space_tag() ==
        SpaceTag::Ginf);
  CHECK((tag(SpaceTag::GcInf) + tag(SpaceTag::Gc)).space_tag() == SpaceTag::Gc);

  // Products: a compact factor wins, a plain factor loses, rapid beats
  // tempered, and derivative uniformity needs both sides.
  CHECK((tag(SpaceTag::Gc) * tag(SpaceTag::G)).space_tag() == SpaceTag::Gc);
  CHECK((tag(SpaceTag::GS) * tag(SpaceTag::Gtau)).space_tag() == SpaceTag::GS);
  CHECK((tag(SpaceTag::Gtau) * tag(SpaceTag::Gtau)).space_tag() ==
        SpaceTag::Gtau);
  CHECK((tag(SpaceTag::GS) * tag(SpaceTag::G)).space_tag() == SpaceTag::G);
  CHECK((tag(SpaceTag::GcInf) * tag(SpaceTag::Ginf)).space_tag() ==
        SpaceTag::GcInf);
  CHECK((tag(SpaceTag::GSInf) * tag(SpaceTag::GSInf)).space_tag() ==
        SpaceTag::GSInf);

  // Domains intersect; disjoint domains are a configuration error.
  const GenFunction u(g, Box::interval(0.0, 2.0), SpaceTag::G);
  const GenFunction v(b, Box::interval(1.0, 3.0), SpaceTag::Gc);
  const GenFunction w = u * v;
  CHECK(w.domain().lo.x == 1.0);
  CHECK(w.domain().hi.x == 2.0);
  const GenFunction far(b, Box::interval(2.5, 3.0), SpaceTag::Gc);
  CHECK_THROWS_AS(u + far, InvalidConfig);

  // Declared supports must sit inside the domain and propagate through
  // the algebra.
  CHECK_THROWS_AS(u.with_support(Box::interval(-1.0, 1.0)), InvalidConfig);
  const GenFunction us = u.with_support(Box::interval(0.5, 1.5));
  const GenFunction vs = v.with_support(Box::interval(1.2, 2.8));
  const auto ss = (us * vs).declared_support();
  REQUIRE(ss.has_value());
  CHECK(ss->lo.x == 1.2);
  CHECK(ss->hi.x == 1.5);
  CHECK(GenFunction::on_line(g, SpaceTag::GS).domain_is_line());
  CHECK_FALSE(u.domain_is_line());
}

// ---------------------------------------------------------------------------
// Compact seminorms.

TEST_CASE("compact seminorms measure derivative growth") {
  const Box K = Box::interval(-1.0, 1.0);

  // A constant has every seminorm equal to its magnitude, exactly.
  const GenFunction one =
      line(SmoothRep::constant(2.5), SpaceTag::Ginf);
  const ScalarNet n0 = seminorm_net(one, K, 2);
  CHECK(n0(0.25) == 2.5);
  CHECK(n0(std::pow(2.0, -30)) == 2.5);

  // The Gaussian's zeroth seminorm on [-1,1] is its peak value 1.
  const GenFunction g = line(SmoothRep::gaussian(), SpaceTag::GS);
  CHECK(near_abs(seminorm_net(g, K, 0)(0.25), 1.0, 1e-12));

  // sin(x/eps): sup stays 1 while each derivative costs one power of eps.
  const GenFunction osc =
      line(SmoothRep::sine(1.0).dilated(1.0), SpaceTag::Gtau);
  const DecayEstimate e0 =
      estimate_valuation(sample_net(seminorm_net(osc, K, 0), EpsGrid::deep()));
  CHECK(e0.cls == Classification::Order);
  CHECK(near_abs(e0.slope, 0.0, 0.02));
  const DecayEstimate e1 =
      estimate_valuation(sample_net(seminorm_net(osc, K, 1), EpsGrid::deep()));
  CHECK(e1.cls == Classification::Order);
  CHECK(near_abs(e1.slope, -1.0, 0.02));
  CHECK(near_rel(std::exp2(e1.log2_constant), 1.0, 0.02));

  // An exp(-1/eps) prefactor sinks below every power of eps.
  const GenFunction tiny = line(
      SmoothRep::gaussian().scaled([](double e) { return std::exp(-1.0 / e); }),
      SpaceTag::GS);
  const DecayEstimate et =
      estimate_valuation(sample_net(seminorm_net(tiny, K, 1), EpsGrid::deep()));
  CHECK(et.cls == Classification::BeyondOrder);
  CHECK(et.below_resolution);

  // Triangle inequality at sampled eps (tiny slack for refinement paths).
  const GenFunction a = line(SmoothRep::sine(3.0), SpaceTag::Gtau);
  const ScalarNet na = seminorm_net(a, K, 1);
  const ScalarNet ng = seminorm_net(g, K, 1);
  const ScalarNet nsum = seminorm_net(a + g, K, 1);
  for (double eps : {0.25, 0.015625, 0.0009765625}) {
    CHECK(nsum(eps) <= (na(eps) + ng(eps)) * (1.0 + 1e-9));
  }

  // Ultrametric values: exp(-valuation) of the seminorm net.
  CHECK(near_rel(ultra_pseudo_seminorm(one, K, 1), 1.0, 1e-6));
  const GenFunction damped = line(
      SmoothRep::gaussian().scaled([](double e) { return e * e; }),
      SpaceTag::GS);
  CHECK(near_rel(ultra_pseudo_seminorm(damped, K, 0), std::exp(-2.0), 1e-3));
  CHECK(near_rel(ultra_pseudo_seminorm(osc, K, 1), std::exp(1.0), 1e-3));

  // Submultiplicativity of the ultrametric seminorm under products.
  const GenFunction prod = damped * damped;
  const double lhs = ultra_pseudo_seminorm(prod, K, 0);
  const double rhs = ultra_pseudo_seminorm(damped, K, 0);
  CHECK(lhs <= 1.15 * rhs * rhs);

  // Configuration gates.
  const GenFunction small(SmoothRep::gaussian(), Box::interval(0.0, 1.0),
                          SpaceTag::G);
  CHECK_THROWS_AS(seminorm_net(small, Box::interval(0.0, 2.0), 0),
                  InvalidConfig);
  CHECK_THROWS_AS(seminorm_net(g, K, 9), OrderTooHigh);
  CHECK_THROWS_AS(seminorm_net(g.derivative(6), K, 3), OrderTooHigh);
}

// ---------------------------------------------------------------------------
// Point values.

TEST_CASE("point evaluation respects domains and the ring structure") {
  const GenFunction sq =
      line(SmoothRep::polynomial({0.0, 0.0, 1.0}), SpaceTag::G);

  // u(x) = x^2 at the point 1 + eps: the distance to u(1) decays at first
  // order with constant 2.
  const GenPoint near1 = GenPoint::line([](double e) { return 1.0 + e; });
  const GenNumber pv = point_value(sq, near1);
  const DecayEstimate de = (pv - GenNumber::constant(1.0)).decay();
  CHECK(de.cls == Classification::Order);
  CHECK(near_abs(de.slope, 1.0, 0.02));
  CHECK(near_rel(std::exp2(de.log2_constant), 2.0, 0.05));

  // x^3 against a plateau that is exactly 1 there: the point net is the
  // pure monomial eps^3.
  const GenFunction cube = line(
      SmoothRep::polynomial({0.0, 0.0, 0.0, 1.0}) *
          SmoothRep::bump(Cutoff(0.0, 1.0, 2.0)),
      SpaceTag::Gc);
  const GenPoint at_eps = GenPoint::line([](double e) { return e; });
  const DecayEstimate dc = point_value(cube, at_eps).decay();
  CHECK(dc.cls == Classification::Order);
  CHECK(near_abs(dc.slope, 3.0, 1e-9));

  // Point evaluation is a ring morphism on the representatives: the nets
  // agree exactly, not just asymptotically.
  const GenFunction f = line(SmoothRep::polynomial({1.0, 2.0}), SpaceTag::G);
  const GenFunction h = line(SmoothRep::sine(1.0), SpaceTag::Gtau);
  const GenPoint wander =
      GenPoint::line([](double e) { return 0.4 + std::sin(1.0 / e); });
  const GenNumber lhs_mul = point_value(f * h, wander);
  const GenNumber rhs_mul = point_value(f, wander) * point_value(h, wander);
  CHECK((lhs_mul - rhs_mul).decay().cls == Classification::IdenticallyZero);
  const GenNumber lhs_add = point_value(f + h, wander);
  const GenNumber rhs_add = point_value(f, wander) + point_value(h, wander);
  CHECK((lhs_add - rhs_add).decay().cls == Classification::IdenticallyZero);

  // Negligible perturbations of the representative do not move the point
  // value in the quotient.
  const GenFunction fuzz = line(
      SmoothRep::polynomial({1.0, 2.0}) +
          SmoothRep::gaussian().scaled(
              [](double e) { return std::exp(-1.0 / e); }),
      SpaceTag::G);
  CHECK(is_negligible(point_value(fuzz, wander) - point_value(f, wander)));

  // Derivative nets at points.
  const GenPoint fixed = GenPoint::line([](double) { return 0.3; });
  const GenNumber d1 = point_derivative(line(SmoothRep::sine(2.0),
                                             SpaceTag::Gtau),
                                        fixed, 1);
  CHECK(near_abs(d1.at(0.25).real(), 2.0 * std::cos(0.6), 1e-13));
  CHECK_THROWS_AS(point_derivative(sq, fixed, 9), OrderTooHigh);

  // Domain enforcement: bounded trajectories must stay inside; escaping
  // ones need a globally controlled representative.
  const GenFunction narrow(SmoothRep::polynomial({0.0, 1.0}),
                           Box::interval(0.0, 2.0), SpaceTag::G);
  CHECK_THROWS_AS(point_value(narrow, GenPoint::line([](double) { return 3.0; })),
                  PointEscapesDomain);
  CHECK_NOTHROW(point_value(narrow, GenPoint::line([](double) { return 1.0; })));

  const GenPoint escape = GenPoint::line([](double e) { return 1.0 / e; });
  CHECK_THROWS_AS(point_value(sq, escape), PointEscapesDomain);
  const GenFunction gs = line(SmoothRep::gaussian(), SpaceTag::GS);
  const GenNumber far = point_value(gs, escape);
  CHECK(far.decay().cls == Classification::IdenticallyZero);

  CHECK_THROWS_AS(point_value(sq, GenPoint(2, [](double) {
                    return Vec2{0.0, 0.0};
                  })),
                  InvalidConfig);
}

// ---------------------------------------------------------------------------
// Integration.

TEST_CASE("compact integration follows windows and supports") {
  // Polynomial over [0,1]: integral of 3x^2 - 2x + 1/2 is exactly 1/2.
  const GenFunction p =
      line(SmoothRep::polynomial({0.5, -2.0, 3.0}), SpaceTag::G);
  const GenNumber ip = integrate_compact(p, Box::interval(0.0, 1.0));
  CHECK(near_abs(ip.at(0.25).real(), 0.5, 1e-13));
  CHECK(near_abs(ip.at(0.0009765625).real(), 0.5, 1e-13));

  // Exponential over [0,1] against the closed form.
  const GenFunction ex = line(SmoothRep::exponential(3.0), SpaceTag::G);
  CHECK(near_rel(integrate_compact(ex, Box::interval(0.0, 1.0)).at(0.5).real(),
                 (std::exp(3.0) - 1.0) / 3.0, 1e-12));

  // Gaussian over an asymmetric box against the independently tested
  // panel-doubling quadrature.
  const GenFunction g = line(SmoothRep::gaussian(), SpaceTag::GS);
  const double want =
      integrate([](double t) { return std::exp(-t * t); }, -1.5, 2.0);
  CHECK(near_rel(integrate_compact(g, Box::interval(-1.5, 2.0)).at(0.125).real(),
                 want, 1e-12));

  // Oscillation at scale eps: int_{-1}^{1} cos(x/eps) = 2 eps sin(1/eps).
  const GenFunction osc =
      line(SmoothRep::cosine(1.0).dilated(1.0), SpaceTag::Gtau);
  const GenNumber io = integrate_compact(osc, Box::interval(-1.0, 1.0));
  for (int k = 4; k <= 10; k += 2) {
    const double eps = std::pow(2.0, -k);
    CHECK(near_abs(io.at(eps).real(), 2.0 * eps * std::sin(1.0 / eps), 1e-11));
  }
  // Far below the panel budget the refinement check must refuse rather
  // than return an under-resolved value.
  CHECK_THROWS_AS(io.at(std::pow(2.0, -40)), QuadratureNotConverged);

  // A concentrated unit-mass kernel integrates to 1 once its support has
  // shrunk inside the box.
  const auto flat = vanishing_moment_kernel();
  const SmoothRep spike =
      SmoothRep::kernel(flat)
          .warped([](double) { return 0.3; },
                  [](double e) { return 1.0 / e; })
          .scaled([](double e) { return 1.0 / e; });
  const GenNumber mass = integrate_compact(line(spike, SpaceTag::Gc),
                                           Box::interval(0.0, 1.0));
  for (int k = 12; k <= 24; k += 4) {
    CHECK(near_abs(mass.at(std::pow(2.0, -k)).real(), 1.0, 3e-9));
  }

  // Amplitude blow-up 1/eps shows up as a clean first-order growth with
  // the plateau integral as its constant.
  const SmoothRep bump = SmoothRep::bump(Cutoff(0.0, 0.5, 1.0));
  const double bump_area =
      integrate([&](double t) { return bump.value(1.0, t); }, -1.0, 1.0);
  const GenFunction loud = line(
      bump.scaled([](double e) { return 1.0 / e; }), SpaceTag::Gc);
  const DecayEstimate dl =
      integrate_compact(loud, Box::interval(-2.0, 2.0)).decay();
  CHECK(dl.cls == Classification::Order);
  CHECK(near_abs(dl.slope, -1.0, 1e-6));
  CHECK(near_rel(std::exp2(dl.log2_constant), bump_area, 1e-9));

  // Exact-zero representatives short-circuit to an exact zero integral.
  const GenFunction gated = line(
      bump.scaled([](double e) { return e < 0.01 ? 0.0 : 1.0; }),
      SpaceTag::Gc);
  CHECK(integrate_compact(gated, Box::interval(-2.0, 2.0)).at(0.005).real() ==
        0.0);

  const GenFunction bounded(SmoothRep::gaussian(), Box::interval(0.0, 2.0),
                            SpaceTag::G);
  CHECK_THROWS_AS(integrate_compact(bounded, Box::interval(-1.0, 3.0)),
                  InvalidConfig);

  // Byte-identical determinism: the same net evaluated twice.
  CHECK(mass.at(0.0001220703125).real() == mass.at(0.0001220703125).real());
  const ScalarNet sn = seminorm_net(g, Box::interval(-1.0, 1.0), 2);
  CHECK(sn(0.03125) == sn(0.03125));
}

TEST_CASE("pairing integrals choose certified routes") {
  const GenFunction g = line(SmoothRep::gaussian(), SpaceTag::GS);
  const GenFunction xg = line(
      SmoothRep::polynomial({0.0, 1.0}) * SmoothRep::gaussian(), SpaceTag::GS);
  const GenFunction cosine = line(SmoothRep::cosine(1.0), SpaceTag::Gtau);

  // Fourier-transform oracle: int exp(-x^2) cos(x) dx = sqrt(pi) e^{-1/4}.
  const double want =
      std::sqrt(std::numbers::pi) * std::exp(-0.25);
  CHECK(near_rel(integrate_pair(g, cosine).at(0.25).real(), want, 1e-12));

  // Symmetry of the pairing under argument swap.
  const GenFunction b = line(
      SmoothRep::bump(Cutoff(0.3, 0.4, 0.9)) * SmoothRep::polynomial({1.0, 1.0}),
      SpaceTag::Gc);
  const double ab = integrate_pair(g, b).at(0.125).real();
  const double ba = integrate_pair(b, g).at(0.125).real();
  CHECK(near_rel(ab, ba, 1e-10));

  // Moderation bookkeeping: scaling by eps^1.5 costs exponent 3 in the
  // squared pairing, with the Gaussian L2 mass as the constant.
  const GenFunction v = line(
      SmoothRep::gaussian().scaled([](double e) { return std::pow(e, 1.5); }),
      SpaceTag::GS);
  const DecayEstimate dv = integrate_pair(v, v).decay();
  CHECK(dv.cls == Classification::Order);
  CHECK(near_abs(dv.slope, 3.0, 0.02));
  CHECK(near_rel(std::exp2(dv.log2_constant),
                 std::sqrt(std::numbers::pi / 2.0), 1e-9));

  // Weighted variant: int x^2 exp(-2x^2) = sqrt(pi/2) / 4.
  const DecayEstimate dx = integrate_pair(xg, xg).decay();
  CHECK(dx.cls == Classification::Order);
  CHECK(near_abs(dx.slope, 0.0, 0.02));
  CHECK(near_rel(std::exp2(dx.log2_constant),
                 std::sqrt(std::numbers::pi / 2.0) / 4.0, 1e-9));

  // A declared support box is an accepted route when the tree cannot see
  // one structurally.
  const GenFunction half_wave =
      line(SmoothRep::cosine(1.0), SpaceTag::Gtau)
          .with_support(Box::interval(-std::numbers::pi / 2.0,
                                      std::numbers::pi / 2.0));
  const GenFunction unit = line(SmoothRep::constant(1.0), SpaceTag::Gtau);
  CHECK(near_rel(integrate_pair(half_wave, unit).at(0.5).real(), 2.0, 1e-12));

  // No support, no decay: the pairing must refuse eagerly.
  const GenFunction growing = line(SmoothRep::exponential(1.0), SpaceTag::G);
  CHECK_THROWS_AS(integrate_pair(growing, cosine), NoCompactSupport);
}

// ---------------------------------------------------------------------------
// Global weighted seminorms.

TEST_CASE("global weighted seminorms fold certified tails") {
  const GenFunction g = line(SmoothRep::gaussian(), SpaceTag::GS);

  // Closed-form suprema of |x|^a |d^b exp(-x^2)|:
  //   a=0,b=0: 1 at x=0        a=2,b=0: 1/e at x=1
  //   a=1,b=0: e^{-1/2}/sqrt2  a=0,b=1: sqrt2 e^{-1/2}
  CHECK(near_abs(schwartz_seminorm_net(g, 0, 0)(0.25), 1.0, 1e-12));
  CHECK(near_abs(schwartz_seminorm_net(g, 2, 0)(0.25), std::exp(-1.0), 1e-9));
  CHECK(near_abs(schwartz_seminorm_net(g, 1, 0)(0.25),
                 std::exp(-0.5) / std::sqrt(2.0), 1e-9));
  CHECK(near_abs(schwartz_seminorm_net(g, 0, 1)(0.25),
                 std::sqrt(2.0) * std::exp(-0.5), 1e-9));

  const GenFunction xg = line(
      SmoothRep::polynomial({0.0, 1.0}) * SmoothRep::gaussian(), SpaceTag::GS);
  CHECK(near_abs(schwartz_seminorm_net(xg, 0, 1)(0.25), 1.0, 1e-9));

  // A drifting center is followed by the windows: the unweighted sup stays
  // 1 and the weight picks up the center's position.
  const GenFunction drift = line(
      SmoothRep::gaussian().translated(
          [](double e) { return std::pow(e, -0.25); }),
      SpaceTag::GS);
  const double eps = 0.00390625;  // center at 4
  CHECK(near_abs(schwartz_seminorm_net(drift, 0, 0)(eps), 1.0, 1e-9));
  CHECK(near_rel(schwartz_seminorm_net(drift, 1, 0)(eps), 4.0, 0.02));

  // A rapidly-decreasing tag without a certifiable tail is an error; the
  // tempered tag tolerates the truncated measurement.
  const GenFunction bad = line(SmoothRep::sine(1.0), SpaceTag::GS);
  CHECK_THROWS_AS(schwartz_seminorm_net(bad, 1, 0)(0.25), TailNotCertified);
  const GenFunction tempered = line(SmoothRep::sine(1.0), SpaceTag::Gtau);
  CHECK_NOTHROW(schwartz_seminorm_net(tempered, 1, 0)(0.25));

  const GenFunction narrow(SmoothRep::gaussian(), Box::interval(0.0, 1.0),
                           SpaceTag::GS);
  CHECK_THROWS_AS(schwartz_seminorm_net(narrow, 0, 0), InvalidConfig);
  CHECK_THROWS_AS(schwartz_seminorm_net(g, 17, 0), InvalidConfig);
  CHECK_THROWS_AS(schwartz_seminorm_net(g, 0, 9), OrderTooHigh);
}

// ---------------------------------------------------------------------------
// Regularity classification.

TEST_CASE("regularity classification separates derivative growth") {
  const Box K = Box::interval(-1.0, 1.0);

  const RegularityReport rc = classify_regular(
      line(SmoothRep::constant(1.0), SpaceTag::Ginf), K, 3);
  CHECK(rc.kind == Regularity::Regular);
  CHECK(near_abs(rc.N, 0.0, 0.05));

  const RegularityReport rg =
      classify_regular(line(SmoothRep::gaussian(), SpaceTag::GS), K, 3);
  CHECK(rg.kind == Regularity::Regular);
  CHECK(near_abs(rg.N, 0.0, 0.05));

  // sin(x/eps): each derivative costs one power, so N(m) climbs by 1.
  const RegularityReport ro = classify_regular(
      line(SmoothRep::sine(1.0).dilated(1.0), SpaceTag::Gtau), K, 3);
  CHECK(ro.kind == Regularity::NotRegular);
  REQUIRE(ro.N_of_m.size() == 4);
  for (int m = 0; m <= 3; ++m) {
    CHECK(near_abs(ro.N_of_m[static_cast<size_t>(m)], m, 0.05));
  }
  CHECK(near_abs(ro.N, 3.0, 0.05));

  // A concentrated unit-mass kernel costs 1 + m: the amplitude already
  // grows like 1/eps before any derivative.
  const SmoothRep spike =
      SmoothRep::kernel(vanishing_moment_kernel())
          .dilated(1.0)
          .scaled([](double e) { return 1.0 / e; });
  const RegularityReport rk =
      classify_regular(line(spike, SpaceTag::Gc), K, 3);
  CHECK(rk.kind == Regularity::NotRegular);
  REQUIRE(rk.N_of_m.size() == 4);
  for (int m = 0; m <= 3; ++m) {
    CHECK(near_abs(rk.N_of_m[static_cast<size_t>(m)], 1.0 + m, 0.05));
  }

  CHECK_THROWS_AS(
      classify_regular(line(SmoothRep::constant(1.0), SpaceTag::Ginf), K, 2),
      InvalidConfig);
}
