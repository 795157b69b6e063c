#pragma once

#include <memory>
#include <string>
#include <vector>

#include "colombeau/errors.hpp"
#include "colombeau/jets.hpp"

namespace colombeau {

// Fourier-side description of a smoothing kernel: the transform equals 1 on
// [0, r_in], falls to 0 across [r_in, r_out], and optionally carries a
// phase (tilt) supported inside the band.  The flat top makes every moment
// of the kernel vanish; the tilt breaks even symmetry without disturbing
// the moments.
//
// The ramp is the normalized integral of the edge bump
// exp(-sharpness / (v(1-v))), not a logistic: a logistic ramp has complex
// poles accumulating at the band edges and its inverse transform decays
// far too slowly for certifiable far-field bounds.  The bump integral is
// analytic off the edges, so the kernel genuinely decays like
// exp(-2 sqrt(sharpness |x|)).  The tilt phase bump has its edge flatness
// matched to the ramp for the same reason.
struct SpectralProfile {
  double r_in = 1.0;
  double r_out = 2.0;
  double sharpness = 4.0;
  double tilt = 0.0;

  std::string cache_tag() const;
};

// Band amplitude m(xi), phase theta(xi) and its derivative, for xi >= 0.
double spectral_amplitude(const SpectralProfile& p, double xi);
double spectral_phase(const SpectralProfile& p, double xi);
double spectral_phase_deriv(const SpectralProfile& p, double xi);

// Jet of the even extension xi -> m(|xi|): exactly 1 on |xi| <= r_in,
// exactly 0 beyond r_out, exact ramp derivatives in between.
Jet1 spectral_amplitude_jet(const SpectralProfile& p, double xi, int order);

// Closed band-integral forms used as the independent route against the
// spatial table integrals:
//   l2          = (1/pi) (r_in + int m^2)         =  int phi^2 dx
//   value0      = (1/pi) (r_in + int m cos theta) =  phi(0)
//   weighted_l2 = -(1/pi) int m^2 theta'          =  int x phi(x)^2 dx
double spectral_l2(const SpectralProfile& p);
double spectral_value0(const SpectralProfile& p);
double spectral_weighted_l2(const SpectralProfile& p);

class Kernel {
public:
  virtual ~Kernel() = default;

  virtual const std::string& name() const = 0;
  virtual double radius() const = 0;
  virtual int max_derivative() const = 0;

  // k-th derivative at x; exactly 0.0 beyond the truncation radius.
  virtual double value(double x, int k = 0) const = 0;

  // Certified bound on sup_x |phi^(k)(x)| for k <= max_derivative().
  virtual double derivative_sup(int k) const = 0;

  Jet1 jet(double x, int order) const;

  // Certified far-field envelope: |phi^(k)(x)| <= T exp(-c sqrt(|x|)) for
  // |x| >= from, all tabulated k.
  struct Envelope {
    double T = 0.0;
    double c = 1.0;
    double from = 0.0;
  };
  virtual Envelope envelope() const = 0;

  // Bound on int_{|x|>z} |phi| dx.  Uses the magnitude envelope (order 0
  // only), which is much tighter than the all-orders one.
  double tail_mass_bound(double z) const;

  // Bound on int_{|x|>z} |x|^alpha |phi| dx, same envelope.
  double tail_moment_bound(int alpha, double z) const;

  // Smallest radius whose envelope tail mass is below the budget, clamped
  // to the truncation radius.  Uses the all-orders envelope so the result
  // is safe for integrands containing kernel derivatives.
  double tail_radius(double budget) const;

protected:
  // Far-field bound on |phi| alone; defaults to the all-orders envelope.
  virtual Envelope magnitude_envelope() const { return envelope(); }
};

// Analytic Gaussian kernel exp(-x^2)/sqrt(pi): unit mass, nonvanishing
// higher moments, derivatives by polynomial recurrence.
std::shared_ptr<const Kernel> gaussian_kernel();

class TableKernel final : public Kernel {
public:
  const std::string& name() const override { return name_; }
  double radius() const override { return radius_; }
  int max_derivative() const override { return max_k_; }
  double value(double x, int k = 0) const override;
  double derivative_sup(int k) const override;
  Envelope envelope() const override { return env_; }

  const SpectralProfile& profile() const { return profile_; }
  bool even() const { return even_; }

  // Exact-node composite integrals over the stored tables (no
  // interpolation error): int x^alpha phi, int x^alpha phi^2.
  double table_moment(int alpha) const;
  double table_weighted_l2(int alpha) const;

  // Block seams, exposed so tests can probe interpolation continuity.
  std::vector<double> block_seams() const;

  void export_text(const std::string& path) const;
  static std::shared_ptr<const TableKernel> import_text(
      const std::string& path);

  // Extended-precision spectral synthesis; slow, deterministic.
  static std::shared_ptr<const TableKernel> synthesize(
      const std::string& name, const SpectralProfile& profile, double radius);

  // Disk-cache wrapper around synthesize().
  static std::shared_ptr<const TableKernel> load_or_synthesize(
      const std::string& name, const SpectralProfile& profile, double radius);

  struct Data;
  explicit TableKernel(std::shared_ptr<const Data> data);

protected:
  Envelope magnitude_envelope() const override { return env0_; }

private:
  std::shared_ptr<const Data> data_;
  std::string name_;
  SpectralProfile profile_;
  double radius_ = 0.0;
  int max_k_ = 0;
  bool even_ = true;
  Envelope env_;
  Envelope env0_;
  std::vector<double> deriv_sup_;
};

// The two standard mollifiers, synthesized on first use and cached on disk
// under COLOMBEAU_KERNEL_CACHE (default ./kernel_cache).
std::shared_ptr<const TableKernel> vanishing_moment_kernel();
std::shared_ptr<const TableKernel> tilted_vanishing_moment_kernel();

std::string kernel_cache_dir();
void warm_kernel_cache();

// Moment certification: table-node integrals plus envelope tail bounds
// against graded tolerances.  Odd moments of an even kernel are zero by
// exact pairing; everything else must clear |measured| + tail <= tol.
struct MomentCertificate {
  int max_order = 0;
  double mass_defect = 0.0;           // |int phi - 1| + tail
  std::vector<double> measured;       // table integral per alpha = 1..max
  std::vector<double> tail_bound;     // envelope tail per alpha
  std::vector<double> tolerance;      // graded tolerance per alpha
  double mass_tolerance = 0.0;
  bool pass = false;
};

MomentCertificate certify_moments(const TableKernel& k, int max_order);

// Throwing form used at kernel construction sites.
void require_moment_certificate(const TableKernel& k, int max_order);

}  // namespace colombeau
