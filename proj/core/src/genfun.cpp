#include "colombeau/genfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace colombeau {
namespace detail {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSqrtPi = 1.7724538509055160273;

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

struct Iv {
  double lo = 0.0;
  double hi = 0.0;
};

// Polynomial majorant |d^beta f(x)| <= C (1 + |x|)^deg valid on all of R.
struct Major {
  double C = 0.0;
  int deg = 0;
};

struct RepNode {
  virtual ~RepNode() = default;
  virtual Jet1 jet(double eps, double x, int order) const = 0;
  virtual std::optional<Iv> support(double) const { return std::nullopt; }
  virtual void windows(double, std::vector<Window>&) const {}
  virtual double res_hint(double) const { return kInf; }
  virtual std::optional<Major> majorant(double, int) const {
    return std::nullopt;
  }
  // sup_{|x| >= R} |x|^alpha |d^beta u_eps|, before the support
  // short-circuit; +inf when the node cannot certify one.
  virtual double tail_raw(double, int, int, double) const { return kInf; }
};

namespace {

using NodePtr = std::shared_ptr<const RepNode>;

double node_tail(const RepNode& n, double eps, int alpha, int beta,
                 double R) {
  if (auto s = n.support(eps)) {
    if (s->lo >= -R && s->hi <= R) return 0.0;
  }
  return n.tail_raw(eps, alpha, beta, R);
}

void require_jet_budget(int order) {
  if (order < 0 || order > kJetMaxOrder) {
    throw OrderTooHigh("derivative order " + std::to_string(order) +
                       " exceeds the jet budget of " +
                       std::to_string(kJetMaxOrder));
  }
}

// ---------------------------------------------------------------------------
// primitives

struct PolyNode final : RepNode {
  std::vector<double> c;  // sum c[k] x^k

  explicit PolyNode(std::vector<double> coeffs) : c(std::move(coeffs)) {
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    if (c.empty()) c.push_back(0.0);
  }

  Jet1 jet(double, double x, int order) const override {
    const Jet1 v = Jet1::variable(x, order);
    Jet1 r = Jet1::constant(c.back(), order);
    for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
      r = r * v + Jet1::constant(c[static_cast<size_t>(k)], order);
    }
    return r;
  }

  // Coefficient-sum bound on the beta-th derivative.
  std::optional<Major> majorant(double, int beta) const override {
    const int deg = static_cast<int>(c.size()) - 1;
    if (beta > deg) return Major{0.0, 0};
    double C = 0.0;
    for (int k = beta; k <= deg; ++k) {
      double fall = 1.0;
      for (int j = 0; j < beta; ++j) fall *= k - j;
      C += std::fabs(c[static_cast<size_t>(k)]) * fall;
    }
    return Major{C, deg - beta};
  }

  double tail_raw(double eps, int alpha, int beta, double) const override {
    const auto m = majorant(eps, beta);
    if (m->C == 0.0) return 0.0;
    if (alpha == 0 && m->deg == 0) return m->C;
    return kInf;
  }
};

struct ExpNode final : RepNode {
  double rate;
  explicit ExpNode(double r) : rate(r) {}

  Jet1 jet(double, double x, int order) const override {
    Jet1 arg = Jet1::constant(rate * x, order);
    if (order >= 1) arg.set_coeff(1, rate);
    return jexp(arg);
  }

  double res_hint(double) const override { return 4.0 / std::fabs(rate); }
};

struct TrigNode final : RepNode {
  double freq;
  double phase;
  TrigNode(double f, double p) : freq(f), phase(p) {}

  Jet1 jet(double, double x, int order) const override {
    Jet1 arg = Jet1::constant(freq * x + phase, order);
    if (order >= 1) arg.set_coeff(1, freq);
    return jsin(arg);
  }

  std::optional<Major> majorant(double, int beta) const override {
    return Major{std::pow(std::fabs(freq), beta), 0};
  }

  double tail_raw(double, int alpha, int beta, double) const override {
    return alpha == 0 ? std::pow(std::fabs(freq), beta) : kInf;
  }

  double res_hint(double) const override {
    return 6.2831853071795865 / (8.0 * std::fabs(freq));
  }
};

struct BumpNode final : RepNode {
  Cutoff psi;
  std::array<double, kJetMaxOrder + 1> sup{};

  explicit BumpNode(const Cutoff& p) : psi(p) {
    // Ramp derivative sups by dense scan; the margin covers peaks that
    // land between scan points.
    const double a = psi.center() + psi.plateau();
    const double b = psi.center() + psi.support();
    const int n = 2048;
    for (int i = 0; i <= n; ++i) {
      const double x = a + (b - a) * i / n;
      const Jet1 j = psi.jet(x, kJetMaxOrder);
      for (int k = 0; k <= kJetMaxOrder; ++k) {
        sup[static_cast<size_t>(k)] = std::max(
            sup[static_cast<size_t>(k)], std::fabs(j.derivative(k)));
      }
    }
    for (double& s : sup) s *= 1.25;
    sup[0] = std::max(sup[0], 1.0);
  }

  Jet1 jet(double, double x, int order) const override {
    return psi.jet(x, order);
  }

  std::optional<Iv> support(double) const override {
    return Iv{psi.center() - psi.support(), psi.center() + psi.support()};
  }

  void windows(double, std::vector<Window>& out) const override {
    const double res = (psi.support() - psi.plateau()) / 8.0;
    out.push_back({psi.center() - psi.support(),
                   psi.center() - psi.plateau(), res});
    out.push_back({psi.center() + psi.plateau(),
                   psi.center() + psi.support(), res});
  }

  std::optional<Major> majorant(double, int beta) const override {
    if (beta > kJetMaxOrder) return std::nullopt;
    return Major{sup[static_cast<size_t>(beta)], 0};
  }

  double tail_raw(double, int alpha, int beta, double) const override {
    if (beta > kJetMaxOrder) return kInf;
    const double edge = std::max(std::fabs(psi.center() - psi.support()),
                                 std::fabs(psi.center() + psi.support()));
    return std::pow(edge, alpha) * sup[static_cast<size_t>(beta)];
  }
};

struct KernNode final : RepNode {
  std::shared_ptr<const Kernel> k;

  explicit KernNode(std::shared_ptr<const Kernel> kk) : k(std::move(kk)) {
    if (!k) throw InvalidConfig("kernel representative: null kernel");
  }

  Jet1 jet(double, double x, int order) const override {
    return k->jet(x, order);
  }

  std::optional<Iv> support(double) const override {
    return Iv{-k->radius(), k->radius()};
  }

  void windows(double, std::vector<Window>& out) const override {
    out.push_back({-k->radius(), k->radius(), 2.0});
  }

  std::optional<Major> majorant(double, int beta) const override {
    if (beta > k->max_derivative()) return std::nullopt;
    return Major{k->derivative_sup(beta), 0};
  }

  double tail_raw(double, int alpha, int beta, double R) const override {
    if (beta > k->max_derivative()) return kInf;
    const double rad = k->radius();
    double bound = std::pow(rad, alpha) * k->derivative_sup(beta);
    const Kernel::Envelope env = k->envelope();
    if (R >= env.from && env.T > 0.0) {
      // x^alpha T e^{-c sqrt(x)} peaks at (2 alpha / c)^2.
      const double xs = std::min(
          rad, std::max(R, (2.0 * alpha / env.c) * (2.0 * alpha / env.c)));
      bound = std::min(bound, std::pow(xs, alpha) * env.T *
                                  std::exp(-env.c * std::sqrt(xs)));
    }
    return bound;
  }
};

struct SpecAmpNode final : RepNode {
  SpectralProfile p;
  std::array<double, kJetMaxOrder + 1> sup{};

  explicit SpecAmpNode(const SpectralProfile& prof) : p(prof) {
    if (!(p.r_out > p.r_in && p.r_in > 0)) {
      throw InvalidConfig("spectral ramp: need 0 < r_in < r_out");
    }
    const int n = 2048;
    for (int i = 0; i <= n; ++i) {
      const double x = p.r_in + (p.r_out - p.r_in) * i / n;
      const Jet1 j = spectral_amplitude_jet(p, x, kJetMaxOrder);
      for (int k = 0; k <= kJetMaxOrder; ++k) {
        sup[static_cast<size_t>(k)] = std::max(
            sup[static_cast<size_t>(k)], std::fabs(j.derivative(k)));
      }
    }
    for (double& s : sup) s *= 1.25;
    sup[0] = std::max(sup[0], 1.0);
  }

  Jet1 jet(double, double x, int order) const override {
    return spectral_amplitude_jet(p, x, order);
  }

  std::optional<Iv> support(double) const override {
    return Iv{-p.r_out, p.r_out};
  }

  void windows(double, std::vector<Window>& out) const override {
    const double res = (p.r_out - p.r_in) / 8.0;
    out.push_back({-p.r_out, -p.r_in, res});
    out.push_back({p.r_in, p.r_out, res});
  }

  std::optional<Major> majorant(double, int beta) const override {
    if (beta > kJetMaxOrder) return std::nullopt;
    return Major{sup[static_cast<size_t>(beta)], 0};
  }

  double tail_raw(double, int alpha, int beta, double) const override {
    if (beta > kJetMaxOrder) return kInf;
    return std::pow(p.r_out, alpha) * sup[static_cast<size_t>(beta)];
  }
};

// ---------------------------------------------------------------------------
// composites

struct SumNode final : RepNode {
  NodePtr a, b;
  SumNode(NodePtr x, NodePtr y) : a(std::move(x)), b(std::move(y)) {}

  Jet1 jet(double eps, double x, int order) const override {
    return a->jet(eps, x, order) + b->jet(eps, x, order);
  }

  std::optional<Iv> support(double eps) const override {
    const auto sa = a->support(eps), sb = b->support(eps);
    if (!sa || !sb) return std::nullopt;
    return Iv{std::min(sa->lo, sb->lo), std::max(sa->hi, sb->hi)};
  }

  void windows(double eps, std::vector<Window>& out) const override {
    a->windows(eps, out);
    b->windows(eps, out);
  }

  double res_hint(double eps) const override {
    return std::min(a->res_hint(eps), b->res_hint(eps));
  }

  std::optional<Major> majorant(double eps, int beta) const override {
    const auto ma = a->majorant(eps, beta), mb = b->majorant(eps, beta);
    if (!ma || !mb) return std::nullopt;
    return Major{ma->C + mb->C, std::max(ma->deg, mb->deg)};
  }

  double tail_raw(double eps, int alpha, int beta, double R) const override {
    return node_tail(*a, eps, alpha, beta, R) +
           node_tail(*b, eps, alpha, beta, R);
  }
};

struct ProdNode final : RepNode {
  NodePtr a, b;
  ProdNode(NodePtr x, NodePtr y) : a(std::move(x)), b(std::move(y)) {}

  Jet1 jet(double eps, double x, int order) const override {
    return a->jet(eps, x, order) * b->jet(eps, x, order);
  }

  std::optional<Iv> support(double eps) const override {
    const auto sa = a->support(eps), sb = b->support(eps);
    if (sa && sb) {
      const double lo = std::max(sa->lo, sb->lo);
      const double hi = std::min(sa->hi, sb->hi);
      if (lo > hi) return Iv{0.0, 0.0};  // empty; any superset is valid
      return Iv{lo, hi};
    }
    if (sa) return sa;
    return sb;
  }

  void windows(double eps, std::vector<Window>& out) const override {
    a->windows(eps, out);
    b->windows(eps, out);
  }

  double res_hint(double eps) const override {
    return std::min(a->res_hint(eps), b->res_hint(eps));
  }

  std::optional<Major> majorant(double eps, int beta) const override {
    double C = 0.0;
    int deg = 0;
    for (int j = 0; j <= beta; ++j) {
      const auto ma = a->majorant(eps, j), mb = b->majorant(eps, beta - j);
      if (!ma || !mb) return std::nullopt;
      C += binom(beta, j) * ma->C * mb->C;
      deg = std::max(deg, ma->deg + mb->deg);
    }
    return Major{C, deg};
  }

  // Leibniz split: each term folds one factor's polynomial majorant into
  // the other factor's weighted tail, whichever side certifies.
  double tail_raw(double eps, int alpha, int beta, double R) const override {
    double total = 0.0;
    for (int j = 0; j <= beta; ++j) {
      double t = kInf;
      if (const auto ma = a->majorant(eps, j)) {
        t = std::min(t, ma->C * std::pow(2.0, ma->deg) *
                            node_tail(*b, eps, alpha + ma->deg, beta - j, R));
      }
      if (const auto mb = b->majorant(eps, beta - j)) {
        t = std::min(t, mb->C * std::pow(2.0, mb->deg) *
                            node_tail(*a, eps, alpha + mb->deg, j, R));
      }
      if (!(t < kInf)) return kInf;
      total += binom(beta, j) * t;
    }
    return total;
  }
};

// u(x) = f((x - shift(eps)) * scale(eps)): the shift is subtracted before
// scaling so a concentrated kernel argument cancels exactly instead of
// losing the small difference under a large intermediate.
struct WarpNode final : RepNode {
  NodePtr child;
  ScalarNet shift, scale;

  WarpNode(NodePtr c, ScalarNet sh, ScalarNet sc)
      : child(std::move(c)), shift(std::move(sh)), scale(std::move(sc)) {}

  double s_at(double eps) const {
    const double s = scale(eps);
    if (!(std::isfinite(s)) || s == 0.0) {
      throw InvalidNet("warp scale must be finite and nonzero, got " +
                       std::to_string(s) + " at eps=" + std::to_string(eps));
    }
    return s;
  }

  Jet1 jet(double eps, double x, int order) const override {
    const double s = s_at(eps);
    const double t = shift(eps);
    Jet1 j = child->jet(eps, (x - t) * s, order);
    double pw = 1.0;
    Jet1 r = Jet1::constant(0.0, order);
    for (int k = 0; k <= order; ++k) {
      r.set_coeff(k, j.coeff(k) * pw);
      pw *= s;
    }
    return r;
  }

  std::optional<Iv> support(double eps) const override {
    const auto sc = child->support(eps);
    if (!sc) return std::nullopt;
    const double s = s_at(eps), t = shift(eps);
    const double u = t + sc->lo / s, v = t + sc->hi / s;
    return Iv{std::min(u, v), std::max(u, v)};
  }

  void windows(double eps, std::vector<Window>& out) const override {
    std::vector<Window> cw;
    child->windows(eps, cw);
    const double s = s_at(eps), t = shift(eps);
    for (const Window& w : cw) {
      const double u = t + w.lo / s, v = t + w.hi / s;
      out.push_back({std::min(u, v), std::max(u, v),
                     w.res / std::fabs(s)});
    }
  }

  double res_hint(double eps) const override {
    return child->res_hint(eps) / std::fabs(s_at(eps));
  }

  std::optional<Major> majorant(double eps, int beta) const override {
    const auto mc = child->majorant(eps, beta);
    if (!mc) return std::nullopt;
    const double s = std::fabs(s_at(eps)), t = std::fabs(shift(eps));
    const double grow = (1.0 + s * t) * std::max(1.0, s);
    return Major{mc->C * std::pow(s, beta) * std::pow(grow, mc->deg),
                 mc->deg};
  }

  double tail_raw(double eps, int alpha, int beta, double R) const override {
    const double s = std::fabs(s_at(eps)), t = std::fabs(shift(eps));
    const double Rp = std::max(0.0, s * (R - t));
    const double sb = std::pow(s, beta);
    if (alpha == 0) return sb * node_tail(*child, eps, 0, beta, Rp);
    return sb * std::pow(2.0, alpha) *
           (std::pow(t, alpha) * node_tail(*child, eps, 0, beta, Rp) +
            node_tail(*child, eps, alpha, beta, Rp) / std::pow(s, alpha));
  }
};

struct ScaleNode final : RepNode {
  NodePtr child;
  ScalarNet c;

  ScaleNode(NodePtr ch, ScalarNet cc) : child(std::move(ch)), c(std::move(cc)) {}

  Jet1 jet(double eps, double x, int order) const override {
    const double v = c(eps);
    if (v == 0.0) return Jet1::constant(0.0, order);
    return v * child->jet(eps, x, order);
  }

  std::optional<Iv> support(double eps) const override {
    if (c(eps) == 0.0) return Iv{0.0, 0.0};
    return child->support(eps);
  }

  void windows(double eps, std::vector<Window>& out) const override {
    if (c(eps) == 0.0) return;
    child->windows(eps, out);
  }

  double res_hint(double eps) const override {
    if (c(eps) == 0.0) return kInf;
    return child->res_hint(eps);
  }

  std::optional<Major> majorant(double eps, int beta) const override {
    const auto mc = child->majorant(eps, beta);
    if (!mc) return std::nullopt;
    return Major{std::fabs(c(eps)) * mc->C, mc->deg};
  }

  double tail_raw(double eps, int alpha, int beta, double R) const override {
    const double v = std::fabs(c(eps));
    if (v == 0.0) return 0.0;
    return v * node_tail(*child, eps, alpha, beta, R);
  }
};

struct DerivNode final : RepNode {
  NodePtr child;
  int m;

  DerivNode(NodePtr c, int mm) : child(std::move(c)), m(mm) {
    if (m < 1 || m > kJetMaxOrder) {
      throw OrderTooHigh("derivative order must lie in [1, " +
                         std::to_string(kJetMaxOrder) + "], got " +
                         std::to_string(m));
    }
  }

  Jet1 jet(double eps, double x, int order) const override {
    require_jet_budget(order + m);
    return jshift(child->jet(eps, x, order + m), m);
  }

  std::optional<Iv> support(double eps) const override {
    return child->support(eps);
  }

  void windows(double eps, std::vector<Window>& out) const override {
    child->windows(eps, out);
  }

  double res_hint(double eps) const override { return child->res_hint(eps); }

  std::optional<Major> majorant(double eps, int beta) const override {
    return child->majorant(eps, beta + m);
  }

  double tail_raw(double eps, int alpha, int beta, double R) const override {
    return node_tail(*child, eps, alpha, beta + m, R);
  }
};

// Truncated convolution (rho_w * f)(x), w = width(eps): quadrature in the
// kernel frame z over [-Rz, Rz] with derivatives falling on the kernel,
//   d^k (rho_w * f)(x) = w^{-k} int rho^{(k)}(z) f(x - w z) dz.
// All orders of a jet share one sweep; a doubled-panel pass must agree or
// the node refuses with QuadratureNotConverged.
struct MollifyNode final : RepNode {
  NodePtr child;
  std::shared_ptr<const Kernel> rho;
  ScalarNet width;
  double Rz;  // kernel-frame truncation radius
  double l1;  // certified bound for int |rho| over [-Rz, Rz]

  MollifyNode(NodePtr c, std::shared_ptr<const Kernel> k, ScalarNet w)
      : child(std::move(c)), rho(std::move(k)), width(std::move(w)) {
    if (!rho) throw InvalidConfig("mollified representative: null kernel");
    if (!width) throw InvalidConfig("mollified: width net must be callable");
    Rz = std::min(rho->radius(), rho->tail_radius(3e-15) + 1.0);
    // |rho| has a kink at every zero crossing (unit-scale features for the
    // synthesized kernels), so panel-doubling never certifies convergence;
    // quarter-unit fixed panels resolve each kink to well under the 5%
    // headroom folded into the bound.
    const int panels = std::max(64, static_cast<int>(std::ceil(8.0 * Rz)));
    const auto& kr = *rho;
    l1 = 1.05 * integrate_fixed(
                    [&kr](double z) { return std::fabs(kr.value(z)); }, -Rz,
                    Rz, panels) +
         rho->tail_mass_bound(Rz);
  }

  double w_at(double eps) const {
    const double w = width(eps);
    if (!(std::isfinite(w)) || !(w > 0.0)) {
      throw InvalidNet("mollifier width must be finite and positive, got " +
                       std::to_string(w) + " at eps=" + std::to_string(eps));
    }
    return w;
  }

  // One composite sweep of I_k = int rho^{(k)}(z) f(x - w z) dz, k <= order.
  void sweep(double eps, double x, double w, int order, int densify,
             std::vector<double>& integral, std::vector<double>& l1acc) const {
    const auto& gx = gl_nodes(16);
    const auto& gw = gl_weights(16);

    std::vector<Window> zwins;
    {
      std::vector<Window> cw;
      child->windows(eps, cw);
      for (const Window& v : cw) {
        const double a = (x - v.hi) / w, b = (x - v.lo) / w;
        if (b < -Rz || a > Rz) continue;
        zwins.push_back({std::max(a, -Rz), std::min(b, Rz), v.res / w});
      }
    }
    std::vector<double> seams{-Rz, Rz};
    for (const Window& v : zwins) {
      seams.push_back(v.lo);
      seams.push_back(v.hi);
    }
    std::sort(seams.begin(), seams.end());
    seams.erase(std::unique(seams.begin(), seams.end()), seams.end());

    double base = 2.0;
    const double hint = child->res_hint(eps);
    if (std::isfinite(hint)) base = std::min(base, hint / w);

    integral.assign(static_cast<size_t>(order) + 1, 0.0);
    l1acc.assign(static_cast<size_t>(order) + 1, 0.0);
    for (size_t s = 0; s + 1 < seams.size(); ++s) {
      const double a = seams[s], b = seams[s + 1];
      if (!(b > a)) continue;
      const double mid = 0.5 * (a + b);
      double res = base;
      for (const Window& v : zwins) {
        if (mid >= v.lo && mid <= v.hi) res = std::min(res, v.res);
      }
      const double need = std::ceil((b - a) / std::max(res, 1e-300));
      if (!(need <= 16384.0)) {
        throw QuadratureNotConverged(
            "mollified representative cannot resolve the integrand at eps=" +
            std::to_string(eps));
      }
      const int panels = std::max(1, static_cast<int>(need)) * densify;
      const double h = (b - a) / panels;
      for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h;
        for (size_t q = 0; q < gx.size(); ++q) {
          const double z = c + 0.5 * h * gx[q];
          const Jet1 kj = rho->jet(z, order);
          const double f = child->jet(eps, x - w * z, 0).value();
          const double wgt = 0.5 * h * gw[q];
          for (int k = 0; k <= order; ++k) {
            const double term = kj.derivative(k) * f;
            integral[static_cast<size_t>(k)] += wgt * term;
            l1acc[static_cast<size_t>(k)] += wgt * std::fabs(term);
          }
        }
      }
    }
  }

  Jet1 jet(double eps, double x, int order) const override {
    const double w = w_at(eps);
    std::vector<double> coarse, cl1, fine, fl1;
    sweep(eps, x, w, order, 1, coarse, cl1);
    sweep(eps, x, w, order, 2, fine, fl1);
    Jet1 r = Jet1::constant(0.0, order);
    double wk = 1.0, fact = 1.0;
    for (int k = 0; k <= order; ++k) {
      const size_t u = static_cast<size_t>(k);
      // The L1 term sits above the part of the error that refinement cannot
      // remove: accumulated rounding and kernel-table interpolation noise,
      // both proportional to the integrand's absolute mass.
      const double tol = 1e-10 * std::fabs(fine[u]) + 1e-11 * fl1[u] + 1e-280;
      if (std::fabs(fine[u] - coarse[u]) > tol) {
        std::ostringstream msg;
        msg << "mollified jet order " << k << " panel disagreement "
            << (fine[u] - coarse[u]) << " at eps=" << eps << ", x=" << x;
        throw QuadratureNotConverged(msg.str());
      }
      if (k > 0) {
        wk *= w;
        fact *= k;
      }
      r.set_coeff(k, fine[u] / (wk * fact));
    }
    return r;
  }

  std::optional<Iv> support(double eps) const override {
    const auto sc = child->support(eps);
    if (!sc) return std::nullopt;
    const double pad = w_at(eps) * Rz;
    return Iv{sc->lo - pad, sc->hi + pad};
  }

  void windows(double eps, std::vector<Window>& out) const override {
    std::vector<Window> cw;
    child->windows(eps, cw);
    const double pad = w_at(eps) * Rz;
    for (const Window& v : cw) out.push_back({v.lo - pad, v.hi + pad, v.res});
  }

  double res_hint(double eps) const override { return child->res_hint(eps); }

  std::optional<Major> majorant(double eps, int beta) const override {
    const auto mc = child->majorant(eps, beta);
    if (!mc) return std::nullopt;
    const double pad = w_at(eps) * Rz;
    return Major{l1 * mc->C * std::pow(1.0 + pad, mc->deg), mc->deg};
  }

  double tail_raw(double eps, int alpha, int beta, double R) const override {
    const double pad = w_at(eps) * Rz;
    if (!(R > pad)) return kInf;
    const double t1 = node_tail(*child, eps, alpha, beta, R - pad);
    const double t2 = node_tail(*child, eps, 0, beta, R - pad);
    return l1 * std::pow(2.0, alpha) * (t1 + std::pow(pad, alpha) * t2);
  }
};

}  // namespace
}  // namespace detail

// ---------------------------------------------------------------------------
// SmoothRep surface

SmoothRep SmoothRep::constant(double c) {
  return SmoothRep(std::make_shared<detail::PolyNode>(std::vector<double>{c}));
}

SmoothRep SmoothRep::coordinate() {
  return SmoothRep(
      std::make_shared<detail::PolyNode>(std::vector<double>{0.0, 1.0}));
}

SmoothRep SmoothRep::polynomial(std::vector<double> coeffs) {
  return SmoothRep(std::make_shared<detail::PolyNode>(std::move(coeffs)));
}

SmoothRep SmoothRep::exponential(double rate) {
  if (rate == 0.0) return constant(1.0);
  return SmoothRep(std::make_shared<detail::ExpNode>(rate));
}

SmoothRep SmoothRep::sine(double freq, double phase) {
  if (freq == 0.0) return constant(std::sin(phase));
  return SmoothRep(std::make_shared<detail::TrigNode>(freq, phase));
}

SmoothRep SmoothRep::cosine(double freq) {
  return sine(freq, 1.5707963267948966);
}

SmoothRep SmoothRep::gaussian() {
  return kernel(gaussian_kernel()).scaled(detail::kSqrtPi);
}

SmoothRep SmoothRep::bump(const Cutoff& psi) {
  return SmoothRep(std::make_shared<detail::BumpNode>(psi));
}

SmoothRep SmoothRep::kernel(std::shared_ptr<const Kernel> k) {
  return SmoothRep(std::make_shared<detail::KernNode>(std::move(k)));
}

SmoothRep SmoothRep::spectral_ramp(const SpectralProfile& p) {
  return SmoothRep(std::make_shared<detail::SpecAmpNode>(p));
}

SmoothRep operator+(const SmoothRep& a, const SmoothRep& b) {
  return SmoothRep(std::make_shared<detail::SumNode>(a.node_, b.node_));
}

SmoothRep operator-(const SmoothRep& a, const SmoothRep& b) {
  return a + b.scaled(-1.0);
}

SmoothRep operator*(const SmoothRep& a, const SmoothRep& b) {
  return SmoothRep(std::make_shared<detail::ProdNode>(a.node_, b.node_));
}

SmoothRep SmoothRep::substituted(double a, double b) const {
  if (a == 0.0) {
    throw InvalidConfig("affine substitution needs a nonzero slope");
  }
  const double shift = -b / a;
  return warped([shift](double) { return shift; },
                [a](double) { return a; });
}

SmoothRep SmoothRep::translated(ScalarNet center) const {
  return warped(std::move(center), [](double) { return 1.0; });
}

SmoothRep SmoothRep::translated(double center) const {
  return translated([center](double) { return center; });
}

SmoothRep SmoothRep::dilated(double r) const {
  return warped([](double) { return 0.0; },
                [r](double eps) { return std::pow(eps, -r); });
}

SmoothRep SmoothRep::warped(ScalarNet shift, ScalarNet scale) const {
  if (!shift || !scale) {
    throw InvalidConfig("warp: shift and scale nets must be callable");
  }
  return SmoothRep(std::make_shared<detail::WarpNode>(
      node_, std::move(shift), std::move(scale)));
}

SmoothRep SmoothRep::scaled(ScalarNet c) const {
  if (!c) throw InvalidConfig("scale net must be callable");
  return SmoothRep(std::make_shared<detail::ScaleNode>(node_, std::move(c)));
}

SmoothRep SmoothRep::scaled(double c) const {
  return scaled([c](double) { return c; });
}

SmoothRep SmoothRep::mollified(std::shared_ptr<const Kernel> rho,
                               ScalarNet width) const {
  return SmoothRep(std::make_shared<detail::MollifyNode>(
      node_, std::move(rho), std::move(width)));
}

SmoothRep SmoothRep::derivative(int m) const {
  if (m == 0) return *this;
  return SmoothRep(std::make_shared<detail::DerivNode>(node_, m));
}

Jet1 SmoothRep::jet(double eps, double x, int order) const {
  detail::require_jet_budget(order);
  return node_->jet(eps, x, order);
}

double SmoothRep::value(double eps, double x, int deriv) const {
  return jet(eps, x, deriv).derivative(deriv);
}

std::optional<std::pair<double, double>> SmoothRep::support(
    double eps) const {
  const auto s = node_->support(eps);
  if (!s) return std::nullopt;
  return std::make_pair(s->lo, s->hi);
}

std::vector<Window> SmoothRep::windows(double eps) const {
  std::vector<Window> out;
  node_->windows(eps, out);
  return out;
}

double SmoothRep::resolution_hint(double eps) const {
  return node_->res_hint(eps);
}

double SmoothRep::decay_bound(double eps, int alpha, int beta,
                              double beyond) const {
  if (alpha < 0 || beta < 0) {
    throw InvalidConfig("decay bound: orders must be nonnegative");
  }
  return detail::node_tail(*node_, eps, alpha, beta, beyond);
}

// ---------------------------------------------------------------------------
// GenFunction

const char* to_string(SpaceTag tag) {
  switch (tag) {
    case SpaceTag::G: return "G";
    case SpaceTag::Gc: return "G_c";
    case SpaceTag::Ginf: return "G^inf";
    case SpaceTag::GcInf: return "G_c^inf";
    case SpaceTag::GS: return "G_S";
    case SpaceTag::GSInf: return "G_S^inf";
    case SpaceTag::Gtau: return "G_tau";
  }
  return "?";
}

const char* to_string(Regularity r) {
  switch (r) {
    case Regularity::Regular: return "Regular";
    case Regularity::NotRegular: return "NotRegular";
    case Regularity::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

// Decay lattice by containment: compact < rapidly-decreasing < tempered <
// plain; the uniform-derivative flag survives sums and products.
struct TagInfo {
  int decay;  // 0 compact, 1 rapid, 2 tempered, 3 plain
  bool regular;
};

TagInfo tag_info(SpaceTag t) {
  switch (t) {
    case SpaceTag::Gc: return {0, false};
    case SpaceTag::GcInf: return {0, true};
    case SpaceTag::GS: return {1, false};
    case SpaceTag::GSInf: return {1, true};
    case SpaceTag::Gtau: return {2, false};
    case SpaceTag::Ginf: return {3, true};
    case SpaceTag::G: return {3, false};
  }
  return {3, false};
}

SpaceTag make_tag(int decay, bool regular) {
  switch (decay) {
    case 0: return regular ? SpaceTag::GcInf : SpaceTag::Gc;
    case 1: return regular ? SpaceTag::GSInf : SpaceTag::GS;
    case 2: return SpaceTag::Gtau;  // no regular variant is tracked
    default: return regular ? SpaceTag::Ginf : SpaceTag::G;
  }
}

SpaceTag sum_tag(SpaceTag a, SpaceTag b) {
  const TagInfo x = tag_info(a), y = tag_info(b);
  return make_tag(std::max(x.decay, y.decay), x.regular && y.regular);
}

SpaceTag product_tag(SpaceTag a, SpaceTag b) {
  const TagInfo x = tag_info(a), y = tag_info(b);
  int decay;
  if (x.decay == 0 || y.decay == 0) {
    decay = 0;  // a compactly supported factor wins
  } else if (std::max(x.decay, y.decay) == 3) {
    decay = 3;  // a plain factor may grow arbitrarily
  } else {
    decay = std::min(x.decay, y.decay);  // rapid beats tempered
  }
  return make_tag(decay, x.regular && y.regular);
}

Box intersect_domains(const Box& a, const Box& b) {
  Box r = Box::interval(std::max(a.lo.x, b.lo.x), std::min(a.hi.x, b.hi.x));
  if (!(r.lo.x <= r.hi.x)) {
    throw InvalidConfig("function domains do not overlap");
  }
  return r;
}

void require_line_box(const Box& b, const char* what) {
  if (b.dim != 1 || !b.valid()) {
    throw InvalidConfig(std::string(what) +
                        ": representatives are single-variable; boxes must "
                        "be valid intervals");
  }
}

}  // namespace

GenFunction::GenFunction(SmoothRep rep, Box domain, SpaceTag tag,
                         std::optional<Box> support)
    : rep_(std::move(rep)),
      domain_(domain),
      support_(std::move(support)),
      tag_(tag) {
  require_line_box(domain_, "function domain");
  if (support_) {
    require_line_box(*support_, "declared support");
    if (support_->lo.x < domain_.lo.x || support_->hi.x > domain_.hi.x) {
      throw InvalidConfig("declared support must lie inside the domain");
    }
  }
}

GenFunction GenFunction::on_line(SmoothRep rep, SpaceTag tag) {
  return GenFunction(std::move(rep),
                     Box::interval(-detail::kInf, detail::kInf), tag);
}

bool GenFunction::domain_is_line() const {
  return domain_.lo.x == -detail::kInf && domain_.hi.x == detail::kInf;
}

GenFunction GenFunction::with_tag(SpaceTag tag) const {
  GenFunction r = *this;
  r.tag_ = tag;
  return r;
}

GenFunction GenFunction::with_support(Box support) const {
  return GenFunction(rep_, domain_, tag_, support);
}

GenFunction operator+(const GenFunction& a, const GenFunction& b) {
  std::optional<Box> support;
  if (a.support_ && b.support_) {
    support = Box::interval(std::min(a.support_->lo.x, b.support_->lo.x),
                            std::max(a.support_->hi.x, b.support_->hi.x));
  }
  return GenFunction(a.rep_ + b.rep_,
                     intersect_domains(a.domain_, b.domain_),
                     sum_tag(a.tag_, b.tag_), support);
}

GenFunction operator-(const GenFunction& a, const GenFunction& b) {
  return a + GenFunction(b.rep_.scaled(-1.0), b.domain_, b.tag_, b.support_);
}

GenFunction operator*(const GenFunction& a, const GenFunction& b) {
  std::optional<Box> support;
  if (a.support_ && b.support_) {
    const double lo = std::max(a.support_->lo.x, b.support_->lo.x);
    const double hi = std::min(a.support_->hi.x, b.support_->hi.x);
    support = Box::interval(std::min(lo, hi), std::max(lo, hi));
  } else if (a.support_) {
    support = a.support_;
  } else if (b.support_) {
    support = b.support_;
  }
  return GenFunction(a.rep_ * b.rep_,
                     intersect_domains(a.domain_, b.domain_),
                     product_tag(a.tag_, b.tag_), support);
}

GenFunction GenFunction::derivative(int m) const {
  return GenFunction(rep_.derivative(m), domain_, tag_, support_);
}

// ---------------------------------------------------------------------------
// samplers

namespace {

// Clip, sort, and merge overlapping windows; the finest resolution wins on
// overlap.
std::vector<Window> merged_windows(const SmoothRep& rep, double eps,
                                   double lo, double hi) {
  std::vector<Window> win = rep.windows(eps);
  std::vector<Window> clipped;
  for (const Window& w : win) {
    const double a = std::max(w.lo, lo), b = std::min(w.hi, hi);
    if (a < b && std::isfinite(a) && std::isfinite(b)) {
      clipped.push_back({a, b, w.res});
    }
  }
  std::sort(clipped.begin(), clipped.end(),
            [](const Window& a, const Window& b) { return a.lo < b.lo; });
  std::vector<Window> out;
  for (const Window& w : clipped) {
    if (!out.empty() && w.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, w.hi);
      out.back().res = std::min(out.back().res, w.res);
    } else {
      out.push_back(w);
    }
  }
  return out;
}

// Golden-section ascent of f on [a, b]; returns the best value seen.
template <class F>
double golden_max(const F& f, double a, double b) {
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best = std::max(f1, f2);
  for (int it = 0; it < 40; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    }
    best = std::max(best, std::max(f1, f2));
  }
  return best;
}

// Deterministic sup estimate: dense grid plus window-following samples,
// then golden-section refinement around the largest local maxima.
template <class F>
double refined_sup(const F& f, double lo, double hi,
                   const std::vector<Window>& wins) {
  std::vector<double> xs;
  const int base = 2048;
  xs.reserve(static_cast<size_t>(base + 1) + wins.size() * 513);
  for (int i = 0; i <= base; ++i) {
    xs.push_back(lo + (hi - lo) * i / base);
  }
  for (const Window& w : wins) {
    for (int i = 0; i <= 512; ++i) {
      xs.push_back(w.lo + (w.hi - w.lo) * i / 512);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<double> vs(xs.size());
  double sup = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    vs[i] = f(xs[i]);
    sup = std::max(sup, vs[i]);
  }

  // Collect the five largest interior local maxima and polish each.
  std::vector<std::pair<double, size_t>> peaks;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double left = i == 0 ? -detail::kInf : vs[i - 1];
    const double right = i + 1 == xs.size() ? -detail::kInf : vs[i + 1];
    if (vs[i] >= left && vs[i] >= right) peaks.push_back({vs[i], i});
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  const size_t refine = std::min<size_t>(5, peaks.size());
  for (size_t p = 0; p < refine; ++p) {
    const size_t i = peaks[p].second;
    const double a = i == 0 ? xs[i] : xs[i - 1];
    const double b = i + 1 == xs.size() ? xs[i] : xs[i + 1];
    if (a < b) sup = std::max(sup, golden_max(f, a, b));
  }
  return sup;
}

void require_subinterval(const Box& K, const Box& domain, const char* what) {
  require_line_box(K, what);
  if (K.lo.x < domain.lo.x || K.hi.x > domain.hi.x) {
    throw InvalidConfig(std::string(what) +
                        " must lie inside the function domain");
  }
}

}  // namespace

ScalarNet seminorm_net(const GenFunction& u, const Box& K, int m) {
  require_subinterval(K, u.domain(), "seminorm box");
  detail::require_jet_budget(m);
  const SmoothRep rep = u.rep();
  // Probe once so order-budget violations surface at construction.
  rep.jet(1.0, 0.5 * (K.lo.x + K.hi.x), m);

  const double lo = K.lo.x, hi = K.hi.x;
  return [rep, lo, hi, m](double eps) {
    const auto wins = merged_windows(rep, eps, lo, hi);
    const auto f = [&](double x) {
      const Jet1 j = rep.jet(eps, x, m);
      double v = 0.0;
      for (int k = 0; k <= m; ++k) {
        v = std::max(v, std::fabs(j.derivative(k)));
      }
      return v;
    };
    return refined_sup(f, lo, hi, wins);
  };
}

double ultra_pseudo_seminorm(const GenFunction& u, const Box& K, int m,
                             const EpsGrid& grid,
                             const EstimateOptions& opts) {
  const ScalarNet net = seminorm_net(u, K, m);
  return ultra_norm(estimate_valuation(sample_net(net, grid), opts));
}

namespace {

bool tag_decays(SpaceTag t) {
  const int d = tag_info(t).decay;
  return d <= 2;  // compact, rapid, or tempered growth control
}

}  // namespace

GenNumber point_value(const GenFunction& u, const GenPoint& pt) {
  return point_derivative(u, pt, 0);
}

GenNumber point_derivative(const GenFunction& u, const GenPoint& pt, int k) {
  if (pt.dim() != 1) {
    throw InvalidConfig("point evaluation: the point must be 1-dimensional");
  }
  detail::require_jet_budget(k);
  const bool compact = is_compactly_supported(pt);
  if (compact) {
    // The trajectory hull must stay inside the domain.
    const Box& dom = u.domain();
    for (double eps : EpsGrid::deep().samples()) {
      const double x = pt.at(eps).x;
      if (x < dom.lo.x || x > dom.hi.x) {
        throw PointEscapesDomain(
            "point leaves the domain at eps=" + std::to_string(eps));
      }
    }
    for (double eps : pt.sample_hints()) {
      const double x = pt.at(eps).x;
      if (x < dom.lo.x || x > dom.hi.x) {
        throw PointEscapesDomain(
            "point leaves the domain at eps=" + std::to_string(eps));
      }
    }
  } else {
    if (!u.domain_is_line() || !tag_decays(u.space_tag())) {
      throw PointEscapesDomain(
          "escaping point: the representative must be globally defined "
          "with controlled decay or growth");
    }
  }
  const SmoothRep rep = u.rep();
  const GenPoint p = pt;
  return GenNumber::from_real(
      [rep, p, k](double eps) { return rep.value(eps, p.at(eps).x, k); });
}

// ---------------------------------------------------------------------------
// integration

namespace {

struct SweepResult {
  double integral = 0.0;
  double l1 = 0.0;
  bool all_zero = true;
};

// Composite Gauss-Legendre sweep with window-aware panel sizing;
// `densify` doubles the panel count for the convergence check.
SweepResult gl_sweep(const SmoothRep& rep, double eps, double lo, double hi,
                     const std::vector<Window>& wins, int densify) {
  const auto& gx = gl_nodes(16);
  const auto& gw = gl_weights(16);

  std::vector<double> seams{lo, hi};
  for (const Window& w : wins) {
    seams.push_back(w.lo);
    seams.push_back(w.hi);
  }
  std::sort(seams.begin(), seams.end());
  seams.erase(std::unique(seams.begin(), seams.end()), seams.end());

  const double hint = rep.resolution_hint(eps);
  const double base = (hi - lo) / 16.0;

  SweepResult r;
  for (size_t s = 0; s + 1 < seams.size(); ++s) {
    const double a = seams[s], b = seams[s + 1];
    if (!(b > a)) continue;
    const double mid = 0.5 * (a + b);
    double res = std::min(base, hint);
    for (const Window& w : wins) {
      if (mid >= w.lo && mid <= w.hi) res = std::min(res, w.res);
    }
    int panels = 1;
    if (std::isfinite(res) && res > 0.0) {
      panels = static_cast<int>(
          std::min(16384.0, std::max(1.0, std::ceil((b - a) / res))));
    }
    panels *= densify;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double c = a + (p + 0.5) * h;
      for (size_t q = 0; q < gx.size(); ++q) {
        const double x = c + 0.5 * h * gx[q];
        const double v = rep.value(eps, x, 0);
        const double wgt = 0.5 * h * gw[q];
        r.integral += wgt * v;
        r.l1 += wgt * std::fabs(v);
        if (v != 0.0) r.all_zero = false;
      }
    }
  }
  return r;
}

double integrate_rep_at(const SmoothRep& rep, double eps, double lo,
                        double hi) {
  if (!(hi > lo)) return 0.0;
  const auto wins = merged_windows(rep, eps, lo, hi);
  const SweepResult c = gl_sweep(rep, eps, lo, hi, wins, 1);
  const SweepResult f = gl_sweep(rep, eps, lo, hi, wins, 2);
  if (f.all_zero && c.all_zero) return 0.0;
  // The L1 term covers error that refinement cannot remove (rounding and
  // kernel-table interpolation noise); it is what bounds the certified
  // absolute error of cancellation integrals whose value is far below L1.
  const double tol =
      1e-10 * std::fabs(f.integral) + 1e-11 * f.l1 + 1e-280;
  if (std::fabs(f.integral - c.integral) > tol) {
    std::ostringstream msg;
    msg << "panel refinement disagreement " << (f.integral - c.integral)
        << " over [" << lo << ", " << hi << "] at eps=" << eps;
    throw QuadratureNotConverged(msg.str());
  }
  return f.integral;
}

}  // namespace

GenNumber integrate_compact(const GenFunction& u, const Box& K) {
  require_subinterval(K, u.domain(), "integration box");
  const SmoothRep rep = u.rep();
  const double lo = K.lo.x, hi = K.hi.x;
  return GenNumber::from_real([rep, lo, hi](double eps) {
    double a = lo, b = hi;
    if (const auto s = rep.support(eps)) {
      a = std::max(a, s->first);
      b = std::min(b, s->second);
    }
    if (!(b > a)) return 0.0;
    return integrate_rep_at(rep, eps, a, b);
  });
}

GenNumber integrate_pair(const GenFunction& u, const GenFunction& v) {
  const GenFunction prod = u * v;
  const SmoothRep rep = prod.rep();
  const Box dom = prod.domain();

  // Route selection is structural: a per-eps support interval from the
  // tree, a declared support box, or certified rapid decay.
  const bool structural = static_cast<bool>(rep.support(1.0));
  std::optional<Box> declared = prod.declared_support();
  if (!structural && !declared) {
    if (!(tag_info(u.space_tag()).decay <= 2 &&
          tag_info(v.space_tag()).decay <= 2 &&
          (tag_info(u.space_tag()).decay <= 1 ||
           tag_info(v.space_tag()).decay <= 1))) {
      throw NoCompactSupport(
          "pairing needs a compactly supported factor or certified decay");
    }
  }

  return GenNumber::from_real([rep, dom, declared](double eps) {
    double a = -detail::kInf, b = detail::kInf;
    if (const auto s = rep.support(eps)) {
      a = s->first;
      b = s->second;
    } else if (declared) {
      a = declared->lo.x;
      b = declared->hi.x;
    } else {
      // Truncate where the certified tail of the product is immeasurable:
      // integral beyond R is at most sup(|x|^2 |f|) * 2/R.
      double R = 50.0;
      double tail = detail::kInf;
      for (; R <= 800.0; R *= 2.0) {
        tail = rep.decay_bound(eps, 2, 0, R) * 2.0 / R;
        if (tail <= 5e-13) break;
      }
      if (!(tail <= 5e-13)) {
        throw TailNotCertified(
            "pairing truncation: no certified rapid-decay bound");
      }
      a = -R;
      b = R;
    }
    a = std::max(a, dom.lo.x);
    b = std::min(b, dom.hi.x);
    if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) return 0.0;
    return integrate_rep_at(rep, eps, a, b);
  });
}

// ---------------------------------------------------------------------------
// global (Schwartz) seminorms and regularity

ScalarNet schwartz_seminorm_net(const GenFunction& u, int alpha, int beta) {
  if (!u.domain_is_line()) {
    throw InvalidConfig("global seminorm needs a globally defined function");
  }
  if (alpha < 0 || alpha > 16) {
    throw InvalidConfig("global seminorm: weight power out of range");
  }
  detail::require_jet_budget(beta);
  const SmoothRep rep = u.rep();
  rep.jet(1.0, 0.0, beta);
  const bool must_certify = tag_info(u.space_tag()).decay <= 1;

  return [rep, alpha, beta, must_certify](double eps) {
    const double R0 = 50.0;
    const auto wins = merged_windows(rep, eps, -detail::kInf, detail::kInf);
    double outer = R0;
    for (const Window& w : wins) {
      outer = std::max({outer, std::fabs(w.lo), std::fabs(w.hi)});
    }
    const auto f = [&](double x) {
      return std::pow(std::fabs(x), alpha) *
             std::fabs(rep.value(eps, x, beta));
    };
    double sup = refined_sup(f, -R0, R0, wins);
    const double tail = rep.decay_bound(eps, alpha, beta, outer);
    if (std::isfinite(tail)) {
      sup = std::max(sup, tail);
    } else if (must_certify) {
      throw TailNotCertified(
          "global seminorm: rapidly decreasing tag without a certified "
          "tail bound");
    }
    return sup;
  };
}

RegularityReport classify_regular(const GenFunction& u, const Box& K,
                                  int m_max, const EpsGrid& grid,
                                  const EstimateOptions& opts) {
  if (m_max < 3) {
    throw InvalidConfig("regularity scan needs m_max >= 3");
  }
  detail::require_jet_budget(m_max);

  RegularityReport report;
  for (int m = 0; m <= m_max; ++m) {
    const ScalarNet net = seminorm_net(u, K, m);
    const DecayEstimate est = estimate_valuation(sample_net(net, grid), opts);
    double val;
    try {
      val = valuation(est);
    } catch (const AmbiguousValuation&) {
      report.kind = Regularity::Inconclusive;
      return report;
    }
    report.N_of_m.push_back(-std::min(val, opts.q_max));
  }

  const auto [mn, mx] =
      std::minmax_element(report.N_of_m.begin(), report.N_of_m.end());
  if (*mx - *mn <= 0.3) {
    report.kind = Regularity::Regular;
    report.N = std::max(0.0, *mx);
    return report;
  }
  int run = 0;
  for (size_t i = 0; i + 1 < report.N_of_m.size(); ++i) {
    if (report.N_of_m[i + 1] - report.N_of_m[i] >= 0.7) {
      if (++run >= 3) {
        report.kind = Regularity::NotRegular;
        report.N = report.N_of_m.back();
        return report;
      }
    } else {
      run = 0;
    }
  }
  report.kind = Regularity::Inconclusive;
  return report;
}

}  // namespace colombeau
