#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace fluidfluid {

/// Truncated bivariate Taylor polynomial of total degree 3 about a point:
/// f(x0 + dx, y0 + dy) = sum c(a, b) dx^a dy^b, a + b <= 3. Arithmetic is
/// exact up to the truncation, so partial derivatives up to third order of
/// any composition of the supported operations come out exactly.
class Jet3 {
 public:
  static constexpr int kDegree = 3;
  static constexpr std::size_t kSize = 10;

  constexpr Jet3() = default;
  constexpr Jet3(double constant) { c_[0] = constant; }  // NOLINT: implicit by design

  static constexpr std::size_t index(int a, int b) {
    const int d = a + b;
    return static_cast<std::size_t>(d * (d + 1) / 2 + b);
  }

  static Jet3 var_x(double x0) {
    Jet3 j(x0);
    j.c_[index(1, 0)] = 1.0;
    return j;
  }
  static Jet3 var_y(double y0) {
    Jet3 j(y0);
    j.c_[index(0, 1)] = 1.0;
    return j;
  }

  double value() const { return c_[0]; }
  double coeff(int a, int b) const { return c_[index(a, b)]; }
  /// Partial derivative d^{a+b} / dx^a dy^b at the expansion point.
  double d(int a, int b) const { return factorial(a) * factorial(b) * c_[index(a, b)]; }
  double dx() const { return d(1, 0); }
  double dy() const { return d(0, 1); }

  Jet3& operator+=(const Jet3& o) {
    for (std::size_t i = 0; i < kSize; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet3& operator-=(const Jet3& o) {
    for (std::size_t i = 0; i < kSize; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet3& operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Jet3 operator+(Jet3 a, const Jet3& b) { return a += b; }
  friend Jet3 operator-(Jet3 a, const Jet3& b) { return a -= b; }
  friend Jet3 operator-(Jet3 a) { return a *= -1.0; }
  friend Jet3 operator*(Jet3 a, double s) { return a *= s; }
  friend Jet3 operator*(double s, Jet3 a) { return a *= s; }
  friend Jet3 operator*(const Jet3& a, const Jet3& b) {
    Jet3 r;
    for (int da = 0; da <= kDegree; ++da)
      for (int ia = 0; ia <= da; ++ia) {
        const double va = a.c_[index(da - ia, ia)];
        if (va == 0.0) continue;
        for (int db = 0; da + db <= kDegree; ++db)
          for (int ib = 0; ib <= db; ++ib)
            r.c_[index(da - ia + db - ib, ia + ib)] += va * b.c_[index(db - ib, ib)];
      }
    return r;
  }

  /// f(g) from the derivatives f(g0), f'(g0), f''(g0), f'''(g0).
  Jet3 compose(const std::array<double, 4>& derivs) const {
    Jet3 delta = *this;
    delta.c_[0] = 0.0;
    Jet3 r(derivs[0]);
    Jet3 power(1.0);
    double fact = 1.0;
    for (int k = 1; k <= kDegree; ++k) {
      power = power * delta;
      fact *= k;
      r += power * (derivs[static_cast<std::size_t>(k)] / fact);
    }
    return r;
  }

 private:
  static constexpr double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }
  std::array<double, kSize> c_{};
};

inline Jet3 sin(const Jet3& g) {
  const double s = std::sin(g.value()), c = std::cos(g.value());
  return g.compose({s, c, -s, -c});
}
inline Jet3 cos(const Jet3& g) {
  const double s = std::sin(g.value()), c = std::cos(g.value());
  return g.compose({c, -s, -c, s});
}
inline Jet3 exp(const Jet3& g) {
  const double e = std::exp(g.value());
  return g.compose({e, e, e, e});
}
inline Jet3 sinh(const Jet3& g) {
  const double s = std::sinh(g.value()), c = std::cosh(g.value());
  return g.compose({s, c, s, c});
}
inline Jet3 cosh(const Jet3& g) {
  const double s = std::sinh(g.value()), c = std::cosh(g.value());
  return g.compose({c, s, c, s});
}

}  // namespace fluidfluid
