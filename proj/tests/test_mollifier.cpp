// Table kernels against two independent routes: direct double-precision
// quadrature of the inverse transform (small and moderate x), and the
// closed band-integral forms on the transform side.  Expected relations:
//
//   int phi dx        = 1            (flat top at the origin)
//   int x^a phi dx    = 0            exactly for odd a by symmetry; below
//                                    graded tolerances for a = 1..6
//   int phi^2 dx      = (1/pi)(r_in + int m^2)
//   phi(0)            = (1/pi)(r_in + int m cos theta)
//   int x phi^2 dx    = -(1/pi) int m^2 theta'     (nonzero only with tilt)
//
// The first two columns of every check were frozen before the table side
// existed; the band integrals run through the Romberg oracle, not the
// library quadrature.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "colombeau/kernels.hpp"
#include "colombeau/quadrature.hpp"
#include "doctest.h"
#include "oracle_quad.hpp"

using namespace colombeau;

namespace {

// Independent spatial-side oracle: phi^(k)(x) by Romberg over the flat top
// and the band, entirely in double precision.
double direct_eval(const SpectralProfile& p, double x, int k) {
  auto f = [&](double xi) {
    const double m = (xi < p.r_in) ? 1.0 : spectral_amplitude(p, xi);
    const double th = (xi < p.r_in) ? 0.0 : spectral_phase(p, xi);
    return m * std::pow(xi, k) *
           std::cos(th + x * xi + k * std::numbers::pi / 2.0);
  };
  const double flat = oracle::romberg(f, 0.0, p.r_in, 1e-13);
  const double band = oracle::romberg(f, p.r_in, p.r_out, 1e-13);
  return (flat + band) / std::numbers::pi;
}

double spectral_l2_oracle(const SpectralProfile& p) {
  auto f = [&](double xi) {
    const double m = spectral_amplitude(p, xi);
    return m * m;
  };
  return (p.r_in + oracle::romberg(f, p.r_in, p.r_out, 1e-13)) /
         std::numbers::pi;
}

double spectral_value0_oracle(const SpectralProfile& p) {
  auto f = [&](double xi) {
    return spectral_amplitude(p, xi) * std::cos(spectral_phase(p, xi));
  };
  return (p.r_in + oracle::romberg(f, p.r_in, p.r_out, 1e-13)) /
         std::numbers::pi;
}

double spectral_xl2_oracle(const SpectralProfile& p) {
  auto f = [&](double xi) {
    const double m = spectral_amplitude(p, xi);
    return m * m * spectral_phase_deriv(p, xi);
  };
  return -oracle::romberg(f, p.r_in, p.r_out, 1e-13) / std::numbers::pi;
}

}  // namespace

TEST_CASE("spectral profile: amplitude ramp shape and phase derivative") {
  SpectralProfile p;
  CHECK(spectral_amplitude(p, 0.2) == 1.0);
  CHECK(spectral_amplitude(p, 1.0) == 1.0);
  CHECK(spectral_amplitude(p, 2.0) == 0.0);
  CHECK(spectral_amplitude(p, 2.7) == 0.0);
  // The ramp saturates exactly at double precision just inside the edges:
  // the deviation there (~1e-31) is far below one ulp of 1.  This exact
  // flatness is what keeps the transform identically 1 near zero.
  CHECK(spectral_amplitude(p, 1.05) == 1.0);
  CHECK(spectral_amplitude(p, 1.95) == 0.0);
  // strictly decreasing across the resolvable part of the ramp
  double prev = 1.0;
  for (double xi = 1.15; xi < 1.86; xi += 0.05) {
    const double m = spectral_amplitude(p, xi);
    CHECK(m < prev);
    CHECK(m > 0.0);
    prev = m;
  }
  CHECK(spectral_amplitude(p, 1.0 + 1e-9) > 1.0 - 1e-6);
  CHECK(spectral_amplitude(p, 2.0 - 1e-9) < 1e-6);

  SpectralProfile q;
  q.tilt = 1.5;
  CHECK(spectral_phase(q, 1.0) == 0.0);
  CHECK(spectral_phase(q, 2.0) == 0.0);
  CHECK(std::fabs(spectral_phase(q, 1.5) - 1.5) < 1e-15);  // bump peak
  // phase derivative against a central difference of the phase
  for (double xi : {1.2, 1.5, 1.8}) {
    const double h = 1e-6;
    const double fd =
        (spectral_phase(q, xi + h) - spectral_phase(q, xi - h)) / (2 * h);
    CHECK(std::fabs(fd - spectral_phase_deriv(q, xi)) < 1e-7);
  }
  // no tilt, no phase
  CHECK(spectral_phase(p, 1.5) == 0.0);
  CHECK(spectral_phase_deriv(p, 1.5) == 0.0);
}

TEST_CASE("small synthesized kernel agrees with the direct transform") {
  SpectralProfile p;
  auto k16 = TableKernel::synthesize("unit16", p, 16.0);
  CHECK(k16->even());
  CHECK(k16->radius() == 16.0);
  for (double x : {0.0, 0.37, -1.9, 2.6, 7.1, 15.2}) {
    for (int k = 0; k <= 8; ++k) {
      const double got = k16->value(x, k);
      const double want = direct_eval(p, x, k);
      CAPTURE(x);
      CAPTURE(k);
      CHECK(std::fabs(got - want) <= 5e-11);
    }
  }
  // identically zero beyond the truncation radius
  CHECK(k16->value(16.0001, 0) == 0.0);
  CHECK(k16->value(-300.0, 5) == 0.0);
  // evenness is exact by construction
  CHECK(k16->value(1.234, 0) == k16->value(-1.234, 0));
  CHECK(k16->value(1.234, 1) == -k16->value(-1.234, 1));
  CHECK(k16->value(1.234, 2) == k16->value(-1.234, 2));
}

TEST_CASE("small tilted kernel: direct agreement and broken symmetry") {
  SpectralProfile q;
  q.tilt = 1.5;
  auto t16 = TableKernel::synthesize("unit16t", q, 16.0);
  CHECK_FALSE(t16->even());
  for (double x : {0.0, 0.7, -2.3, 9.1, -13.4}) {
    for (int k : {0, 1, 3, 8}) {
      CAPTURE(x);
      CAPTURE(k);
      CHECK(std::fabs(t16->value(x, k) - direct_eval(q, x, k)) <= 5e-11);
    }
  }
  CHECK(std::fabs(t16->value(1.0, 0) - t16->value(-1.0, 0)) > 0.05);
}

TEST_CASE("export/import round-trips the table and rejects tampering") {
  SpectralProfile p;
  p.r_out = 1.5;  // cheaper band, distinct profile
  auto k = TableKernel::synthesize("roundtrip", p, 8.0);
  const auto dir = std::filesystem::temp_directory_path();
  const auto file = dir / "colombeau_roundtrip_test.tbl";
  k->export_text(file.string());
  auto k2 = TableKernel::import_text(file.string());
  CHECK(k2->name() == k->name());
  CHECK(k2->radius() == k->radius());
  CHECK(k2->even() == k->even());
  CHECK(k2->envelope().T == k->envelope().T);
  CHECK(k2->envelope().c == k->envelope().c);
  for (double x : {0.0, 0.9, 3.3, 7.9}) {
    for (int kk = 0; kk <= 8; ++kk) {
      CHECK(k2->value(x, kk) == k->value(x, kk));  // bitwise: hexfloat cache
    }
  }
  // flip one digit inside the value stream and expect a checksum failure
  std::ifstream in(file);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  in.close();
  const auto pos = text.find("0x1.", text.find("block"));
  REQUIRE(pos != std::string::npos);
  text[pos + 4] = (text[pos + 4] == '2') ? '3' : '2';
  const auto bad = dir / "colombeau_roundtrip_bad.tbl";
  std::ofstream(bad) << text;
  CHECK_THROWS_AS(TableKernel::import_text(bad.string()), InvalidConfig);
  std::filesystem::remove(file);
  std::filesystem::remove(bad);
}

TEST_CASE("synthesis rejects unusable parameters") {
  SpectralProfile p;
  CHECK_THROWS_AS(TableKernel::synthesize("bad", p, 7.0), InvalidConfig);
  CHECK_THROWS_AS(TableKernel::synthesize("bad", p, 16.5), InvalidConfig);
  SpectralProfile swapped;
  swapped.r_in = 2.0;
  swapped.r_out = 1.0;
  CHECK_THROWS_AS(TableKernel::synthesize("bad", swapped, 16.0),
                  InvalidConfig);
}

// ---------------------------------------------------------------------------
// Standard kernels (fixture-warmed, loaded from the build cache).

TEST_CASE("standard kernel: moment certificate under the graded tolerances") {
  auto k = vanishing_moment_kernel();
  const auto cert = certify_moments(*k, 6);
  // tolerance schedule is part of the contract
  REQUIRE(cert.tolerance.size() == 6);
  CHECK(cert.mass_tolerance == 1e-8);
  for (int a = 1; a <= 4; ++a) CHECK(cert.tolerance[a - 1] == 1e-10);
  CHECK(cert.tolerance[4] == 1e-6);
  CHECK(cert.tolerance[5] == 1e-6);
  CHECK(cert.pass);
  CHECK(cert.mass_defect <= 1e-8);
  for (size_t i = 0; i < 6; ++i) {
    CAPTURE(i);
    CHECK(std::fabs(cert.measured[i]) + cert.tail_bound[i] <=
          cert.tolerance[i]);
  }
  // odd moments of the even kernel vanish identically, not just within tol
  CHECK(k->table_moment(1) == 0.0);
  CHECK(k->table_moment(3) == 0.0);
  CHECK(k->table_moment(5) == 0.0);
  CHECK_NOTHROW(require_moment_certificate(*k, 6));
}

TEST_CASE("tilted kernel: same certificate, no even symmetry") {
  auto k = tilted_vanishing_moment_kernel();
  const auto cert = certify_moments(*k, 6);
  CHECK(cert.pass);
  CHECK(cert.mass_defect <= 1e-8);
  // odd moments are small by cancellation, not by symmetry
  CHECK(k->table_moment(1) != 0.0);
  CHECK(std::fabs(k->table_moment(1)) <= 1e-10);
  CHECK(std::fabs(k->value(1.0, 0) - k->value(-1.0, 0)) > 0.05);
}

TEST_CASE("standard kernel: spatial values against the direct transform") {
  auto k = vanishing_moment_kernel();
  for (double x : {0.0, 1.3, -4.7, 9.9, 20.0}) {
    for (int kk : {0, 1, 2, 3}) {
      CAPTURE(x);
      CAPTURE(kk);
      CHECK(std::fabs(k->value(x, kk) - direct_eval(k->profile(), x, kk)) <=
            1e-10);
    }
  }
}

TEST_CASE("dual route: quadratic functionals match the band integrals") {
  auto k = vanishing_moment_kernel();
  const auto& p = k->profile();
  // library band forms against the Romberg oracle
  CHECK(std::fabs(spectral_l2(p) - spectral_l2_oracle(p)) <= 1e-12);
  CHECK(std::fabs(spectral_value0(p) - spectral_value0_oracle(p)) <= 1e-12);
  // table route against the band route
  CHECK(std::fabs(k->table_weighted_l2(0) - spectral_l2(p)) <= 1e-12);
  CHECK(std::fabs(k->value(0.0, 0) - spectral_value0(p)) <= 1e-12);
  // the separating constant: ||phi||^2 - phi(0) is decisively nonzero
  const double gap_table = k->table_weighted_l2(0) - k->value(0.0, 0);
  const double gap_band = spectral_l2(p) - spectral_value0(p);
  CHECK(std::fabs(gap_table - gap_band) <= 1e-10);
  CHECK(std::fabs(gap_table) >= 1e-3);
  // even kernel: first weighted moment of phi^2 vanishes identically
  CHECK(k->table_weighted_l2(1) == 0.0);
  CHECK(spectral_weighted_l2(p) == 0.0);
}

TEST_CASE("dual route: tilt shifts the phi^2 center of mass") {
  auto k = tilted_vanishing_moment_kernel();
  const auto& p = k->profile();
  CHECK(std::fabs(spectral_xl2_oracle(p) - spectral_weighted_l2(p)) <= 1e-12);
  const double table = k->table_weighted_l2(1);
  const double band = spectral_weighted_l2(p);
  CHECK(std::fabs(table - band) <= 1e-10);
  CHECK(std::fabs(table) >= 0.05);
  // mass and l2 still agree with the band forms
  CHECK(std::fabs(k->table_weighted_l2(0) - spectral_l2(p)) <= 1e-12);
  CHECK(std::fabs(k->value(0.0, 0) - spectral_value0(p)) <= 1e-12);
}

TEST_CASE("table interpolation is continuous across block seams") {
  for (auto k : {vanishing_moment_kernel(), tilted_vanishing_moment_kernel()}) {
    const auto seams = k->block_seams();
    REQUIRE(!seams.empty());
    for (double s : seams) {
      for (int kk : {0, 1, 4, 8}) {
        const double lo = k->value(s - 1e-9, kk);
        const double hi = k->value(s + 1e-9, kk);
        const double at = k->value(s, kk);
        CAPTURE(s);
        CAPTURE(kk);
        const double scale = std::max({std::fabs(at), std::fabs(lo), 1e-18});
        CHECK(std::fabs(hi - lo) <= 1e-6 * scale + 1e-18);
      }
    }
  }
}

TEST_CASE("finite differences tie adjacent derivative tables together") {
  auto k = vanishing_moment_kernel();
  const double h = 1e-3;
  for (double x : {0.3, 5.2, 17.8}) {
    for (int kk = 0; kk <= 7; ++kk) {
      const double fd = (k->value(x + h, kk) - k->value(x - h, kk)) / (2 * h);
      CAPTURE(x);
      CAPTURE(kk);
      CHECK(std::fabs(fd - k->value(x, kk + 1)) <= 1e-4);
    }
  }
}

TEST_CASE("far-field envelope bounds every tabulated order") {
  for (auto k : {vanishing_moment_kernel(), tilted_vanishing_moment_kernel()}) {
    const auto env = k->envelope();
    CHECK(env.T > 0.0);
    CHECK(env.c > 0.5);
    CHECK(env.from <= 128.0);
    for (double x = env.from; x <= k->radius(); x += 1.37) {
      for (int kk : {0, 4, 8}) {
        const double bound = env.T * std::exp(-env.c * std::sqrt(x));
        CAPTURE(x);
        CAPTURE(kk);
        CHECK(std::fabs(k->value(x, kk)) <= bound);
        CHECK(std::fabs(k->value(-x, kk)) <= bound);
      }
    }
  }
}

TEST_CASE("tail bounds shrink and the tail radius is monotone") {
  auto k = vanishing_moment_kernel();
  // beyond the truncation radius the certified tail is tiny
  CHECK(k->tail_mass_bound(k->radius()) <= 1e-10);
  CHECK(k->tail_moment_bound(6, k->radius()) <= 1e-6);
  CHECK(k->tail_mass_bound(64.0) > k->tail_mass_bound(128.0));
  const double r1 = k->tail_radius(1e-6);
  const double r2 = k->tail_radius(1e-10);
  const double r3 = k->tail_radius(1e-14);
  CHECK(r1 <= r2);
  CHECK(r2 <= r3);
  CHECK(r3 <= k->radius());
  // the returned radius actually meets its budget
  CHECK(k->tail_mass_bound(r2) <= 1e-10);
}

TEST_CASE("second load is served by the cache and matches bitwise") {
  auto k = vanishing_moment_kernel();
  auto again = TableKernel::load_or_synthesize("mollifier_flat", k->profile(),
                                               k->radius());
  for (double x : {0.0, 0.123, 31.7, 200.5}) {
    for (int kk : {0, 3, 8}) {
      CHECK(again->value(x, kk) == k->value(x, kk));
    }
  }
}

TEST_CASE("derivative jets repackage the tables") {
  auto k = vanishing_moment_kernel();
  const Jet1 j = k->jet(0.8, 8);
  for (int kk = 0; kk <= 8; ++kk) {
    CHECK(j.derivative(kk) == doctest::Approx(k->value(0.8, kk))
                                  .epsilon(1e-12));
  }
  CHECK_THROWS_AS(k->jet(0.0, 9), InvalidConfig);
  CHECK_THROWS_AS(k->value(0.0, 9), InvalidConfig);
  CHECK_THROWS_AS(k->value(0.0, -1), InvalidConfig);
}

TEST_CASE("gaussian kernel: closed forms and envelope") {
  auto g = gaussian_kernel();
  const double rpi = std::sqrt(std::numbers::pi);
  for (double x : {0.0, 0.5, -1.7, 3.1}) {
    CHECK(std::fabs(g->value(x, 0) - std::exp(-x * x) / rpi) <= 1e-15);
    CHECK(std::fabs(g->value(x, 1) - (-2 * x) * std::exp(-x * x) / rpi) <=
          1e-15);
    CHECK(std::fabs(g->value(x, 2) -
                    (4 * x * x - 2) * std::exp(-x * x) / rpi) <= 1e-14);
  }
  CHECK(g->value(12.5, 0) == 0.0);  // truncated
  const double mass =
      integrate([&](double x) { return g->value(x, 0); }, -12.0, 12.0);
  CHECK(std::fabs(mass - 1.0) <= 1e-12);
  // second moment of the unit gaussian is 1/2
  const double m2 =
      integrate([&](double x) { return x * x * g->value(x, 0); }, -12.0, 12.0);
  CHECK(std::fabs(m2 - 0.5) <= 1e-12);
  const auto env = g->envelope();
  for (double x = env.from; x <= g->radius(); x += 0.61) {
    for (int kk : {0, 8}) {
      CHECK(std::fabs(g->value(x, kk)) <=
            env.T * std::exp(-env.c * std::sqrt(x)));
    }
  }
}
