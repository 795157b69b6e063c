#pragma once

// Truncated Taylor arithmetic in one and two variables, order <= 8.
// Coefficients are normalized (f^(k)/k!), so products are plain Cauchy
// convolutions and composition is Horner evaluation in the nilpotent part.

#include <algorithm>
#include <array>
#include <cmath>

#include "colombeau/errors.hpp"

namespace colombeau {

inline constexpr int kJetMaxOrder = 8;

namespace detail {

inline constexpr std::array<double, kJetMaxOrder + 1> kFactorial = {
    1, 1, 2, 6, 24, 120, 720, 5040, 40320};

inline void check_jet_order(int n) {
  if (n < 0 || n > kJetMaxOrder) {
    throw InvalidConfig("jet order must lie in [0, 8], got " +
                        std::to_string(n));
  }
}

}  // namespace detail

class Jet1 {
public:
  Jet1() = default;

  static Jet1 constant(double v, int order) {
    detail::check_jet_order(order);
    Jet1 j;
    j.n_ = order;
    j.c_[0] = v;
    return j;
  }

  static Jet1 variable(double v, int order) {
    Jet1 j = constant(v, order);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  int order() const { return n_; }
  double value() const { return c_[0]; }

  double coeff(int k) const { return (k >= 0 && k <= n_) ? c_[k] : 0.0; }

  void set_coeff(int k, double v) {
    if (k < 0 || k > n_) throw InvalidConfig("jet coefficient out of range");
    c_[k] = v;
  }

  double derivative(int k) const {
    if (k < 0 || k > n_) {
      throw InvalidConfig("jet derivative order " + std::to_string(k) +
                          " exceeds jet order " + std::to_string(n_));
    }
    return c_[k] * detail::kFactorial[k];
  }

  friend Jet1 operator+(const Jet1& a, const Jet1& b) {
    Jet1 r;
    r.n_ = std::min(a.n_, b.n_);
    for (int k = 0; k <= r.n_; ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
  }

  friend Jet1 operator-(const Jet1& a, const Jet1& b) {
    Jet1 r;
    r.n_ = std::min(a.n_, b.n_);
    for (int k = 0; k <= r.n_; ++k) r.c_[k] = a.c_[k] - b.c_[k];
    return r;
  }

  Jet1 operator-() const {
    Jet1 r = *this;
    for (int k = 0; k <= n_; ++k) r.c_[k] = -r.c_[k];
    return r;
  }

  friend Jet1 operator*(const Jet1& a, const Jet1& b) {
    Jet1 r;
    r.n_ = std::min(a.n_, b.n_);
    for (int k = 0; k <= r.n_; ++k) {
      double acc = 0.0;
      for (int i = 0; i <= k; ++i) acc += a.c_[i] * b.c_[k - i];
      r.c_[k] = acc;
    }
    return r;
  }

  friend Jet1 operator*(double s, const Jet1& a) {
    Jet1 r = a;
    for (int k = 0; k <= r.n_; ++k) r.c_[k] *= s;
    return r;
  }

  friend Jet1 operator*(const Jet1& a, double s) { return s * a; }

private:
  int n_ = 0;
  std::array<double, kJetMaxOrder + 1> c_{};
};

class Jet2 {
public:
  static constexpr int kCoeffs = (kJetMaxOrder + 1) * (kJetMaxOrder + 2) / 2;

  // Graded-lexicographic triangular index for total degree i + j <= 8.
  static int tri_index(int i, int j) {
    const int s = i + j;
    return s * (s + 1) / 2 + j;
  }

  Jet2() = default;

  static Jet2 constant(double v, int order) {
    detail::check_jet_order(order);
    Jet2 j;
    j.n_ = order;
    j.c_[0] = v;
    return j;
  }

  static Jet2 variable(int axis, double v, int order) {
    if (axis != 0 && axis != 1) {
      throw InvalidConfig("Jet2::variable: axis must be 0 or 1");
    }
    Jet2 j = constant(v, order);
    if (order >= 1) j.c_[static_cast<size_t>(axis == 0 ? 1 : 2)] = 1.0;
    return j;
  }

  int order() const { return n_; }
  double value() const { return c_[0]; }

  double coeff(int i, int j) const {
    if (i < 0 || j < 0 || i + j > n_) return 0.0;
    return c_[static_cast<size_t>(tri_index(i, j))];
  }

  void set_coeff(int i, int j, double v) {
    if (i < 0 || j < 0 || i + j > n_) {
      throw InvalidConfig("jet coefficient out of range");
    }
    c_[static_cast<size_t>(tri_index(i, j))] = v;
  }

  double partial(int i, int j) const {
    if (i < 0 || j < 0 || i + j > n_) {
      throw InvalidConfig("jet partial (" + std::to_string(i) + "," +
                          std::to_string(j) + ") exceeds jet order " +
                          std::to_string(n_));
    }
    return coeff(i, j) * detail::kFactorial[i] * detail::kFactorial[j];
  }

  friend Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.n_ = std::min(a.n_, b.n_);
    for (int s = 0; s <= r.n_; ++s) {
      for (int j = 0; j <= s; ++j) {
        const int k = tri_index(s - j, j);
        r.c_[k] = a.c_[k] + b.c_[k];
      }
    }
    return r;
  }

  friend Jet2 operator-(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.n_ = std::min(a.n_, b.n_);
    for (int s = 0; s <= r.n_; ++s) {
      for (int j = 0; j <= s; ++j) {
        const int k = tri_index(s - j, j);
        r.c_[k] = a.c_[k] - b.c_[k];
      }
    }
    return r;
  }

  Jet2 operator-() const {
    Jet2 r = *this;
    for (double& v : r.c_) v = -v;
    return r;
  }

  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.n_ = std::min(a.n_, b.n_);
    for (int s = 0; s <= r.n_; ++s) {
      for (int j = 0; j <= s; ++j) {
        const int i = s - j;
        double acc = 0.0;
        for (int p = 0; p <= i; ++p) {
          for (int q = 0; q <= j; ++q) {
            acc += a.coeff(p, q) * b.coeff(i - p, j - q);
          }
        }
        r.c_[static_cast<size_t>(tri_index(i, j))] = acc;
      }
    }
    return r;
  }

  friend Jet2 operator*(double s, const Jet2& a) {
    Jet2 r = a;
    for (double& v : r.c_) v *= s;
    return r;
  }

  friend Jet2 operator*(const Jet2& a, double s) { return s * a; }

private:
  int n_ = 0;
  std::array<double, kCoeffs> c_{};
};

namespace detail {

// Horner evaluation of sum g[k] (u - u0)^k; the shifted argument is
// nilpotent, so truncation at the jet order is exact.
template <class J>
J compose_series(const double* g, int count, const J& u) {
  const int n = u.order();
  const J z = u - J::constant(u.value(), n);
  J r = J::constant(g[count - 1], n);
  for (int k = count - 2; k >= 0; --k) {
    r = r * z + J::constant(g[k], n);
  }
  return r;
}

}  // namespace detail

template <class J>
J jexp(const J& u) {
  const int n = u.order();
  double g[kJetMaxOrder + 1];
  const double e = std::exp(u.value());
  for (int k = 0; k <= n; ++k) g[k] = e / detail::kFactorial[k];
  return detail::compose_series(g, n + 1, u);
}

template <class J>
J jsin(const J& u) {
  const int n = u.order();
  double g[kJetMaxOrder + 1];
  for (int k = 0; k <= n; ++k) {
    g[k] = std::sin(u.value() + k * 1.5707963267948966) / detail::kFactorial[k];
  }
  return detail::compose_series(g, n + 1, u);
}

template <class J>
J jcos(const J& u) {
  const int n = u.order();
  double g[kJetMaxOrder + 1];
  for (int k = 0; k <= n; ++k) {
    g[k] = std::cos(u.value() + k * 1.5707963267948966) / detail::kFactorial[k];
  }
  return detail::compose_series(g, n + 1, u);
}

template <class J>
J jrecip(const J& u) {
  const double v = u.value();
  if (v == 0.0) throw InvalidNet("jet reciprocal at zero");
  const int n = u.order();
  double g[kJetMaxOrder + 1];
  g[0] = 1.0 / v;
  for (int k = 1; k <= n; ++k) g[k] = -g[k - 1] / v;
  return detail::compose_series(g, n + 1, u);
}

template <class J>
J jlog(const J& u) {
  const double v = u.value();
  if (!(v > 0.0)) throw InvalidNet("jet logarithm of a nonpositive value");
  const int n = u.order();
  double g[kJetMaxOrder + 1];
  g[0] = std::log(v);
  if (n >= 1) g[1] = 1.0 / v;
  for (int k = 2; k <= n; ++k) {
    g[k] = -g[k - 1] * (static_cast<double>(k - 1) / k) / v;
  }
  return detail::compose_series(g, n + 1, u);
}

template <class J>
J operator/(const J& a, const J& b) {
  return a * jrecip(b);
}

template <class J>
J jpow_int(const J& u, int p) {
  if (p < 0) return jrecip(jpow_int(u, -p));
  J r = J::constant(1.0, u.order());
  J base = u;
  while (p > 0) {
    if (p & 1) r = r * base;
    base = base * base;
    p >>= 1;
  }
  return r;
}

// Jet of the m-th derivative: shift coefficients and restore factorials.
inline Jet1 jshift(const Jet1& u, int m) {
  if (m < 0 || m > u.order()) {
    throw InvalidConfig("jshift: derivative order exceeds jet order");
  }
  Jet1 r = Jet1::constant(0.0, u.order() - m);
  for (int k = 0; k + m <= u.order(); ++k) {
    r.set_coeff(k, u.coeff(k + m) * detail::kFactorial[k + m] /
                       detail::kFactorial[k]);
  }
  return r;
}

inline Jet2 jshift(const Jet2& u, int a, int b) {
  if (a < 0 || b < 0 || a + b > u.order()) {
    throw InvalidConfig("jshift: partial order exceeds jet order");
  }
  Jet2 r = Jet2::constant(0.0, u.order() - a - b);
  for (int s = 0; s <= r.order(); ++s) {
    for (int j = 0; j <= s; ++j) {
      const int i = s - j;
      const double num = detail::kFactorial[i + a] * detail::kFactorial[j + b];
      const double den = detail::kFactorial[i] * detail::kFactorial[j];
      r.set_coeff(i, j, u.coeff(i + a, j + b) * num / den);
    }
  }
  return r;
}

}  // namespace colombeau
