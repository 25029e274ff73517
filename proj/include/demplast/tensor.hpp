#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace demplast {

/// Symmetric second-order tensor in 3D.
///
/// Components are stored in the order (11, 22, 33, 12, 13, 23). The shear
/// slots hold tensor components, not engineering shears, so the double
/// contraction carries a factor of two on the off-diagonal terms.
class SymTensor2 {
public:
  static constexpr std::size_t kSize = 6;

  constexpr SymTensor2() = default;
  constexpr SymTensor2(double a11, double a22, double a33, double a12, double a13, double a23)
      : c_{a11, a22, a33, a12, a13, a23} {}

  static constexpr SymTensor2 identity() { return {1.0, 1.0, 1.0, 0.0, 0.0, 0.0}; }
  static constexpr SymTensor2 diag(double a, double b, double c) { return {a, b, c, 0.0, 0.0, 0.0}; }

  /// Symmetric part of a full 3x3 matrix given row-major.
  static constexpr SymTensor2 sym(const std::array<std::array<double, 3>, 3>& g) {
    return {g[0][0],
            g[1][1],
            g[2][2],
            0.5 * (g[0][1] + g[1][0]),
            0.5 * (g[0][2] + g[2][0]),
            0.5 * (g[1][2] + g[2][1])};
  }

  constexpr double& operator[](std::size_t k) { return c_[k]; }
  constexpr double operator[](std::size_t k) const { return c_[k]; }

  /// Component (i, j) with 0-based indices; symmetric access.
  constexpr double operator()(int i, int j) const { return c_[slot(i, j)]; }
  constexpr double& operator()(int i, int j) { return c_[slot(i, j)]; }

  constexpr const std::array<double, kSize>& data() const { return c_; }

  constexpr SymTensor2& operator+=(const SymTensor2& o) {
    for (std::size_t k = 0; k < kSize; ++k) c_[k] += o.c_[k];
    return *this;
  }
  constexpr SymTensor2& operator-=(const SymTensor2& o) {
    for (std::size_t k = 0; k < kSize; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  constexpr SymTensor2& operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend constexpr SymTensor2 operator+(SymTensor2 a, const SymTensor2& b) { return a += b; }
  friend constexpr SymTensor2 operator-(SymTensor2 a, const SymTensor2& b) { return a -= b; }
  friend constexpr SymTensor2 operator-(SymTensor2 a) { return a *= -1.0; }
  friend constexpr SymTensor2 operator*(double s, SymTensor2 a) { return a *= s; }
  friend constexpr SymTensor2 operator*(SymTensor2 a, double s) { return a *= s; }
  friend constexpr SymTensor2 operator/(SymTensor2 a, double s) { return a *= (1.0 / s); }
  friend constexpr bool operator==(const SymTensor2&, const SymTensor2&) = default;

private:
  static constexpr std::size_t slot(int i, int j) {
    if (i == j) return static_cast<std::size_t>(i);
    const int lo = i < j ? i : j;
    const int hi = i < j ? j : i;
    if (lo == 0) return hi == 1 ? 3 : 4;
    return 5;
  }

  std::array<double, kSize> c_{};
};

constexpr double trace(const SymTensor2& a) { return a[0] + a[1] + a[2]; }

/// a - tr(a)/3 I
constexpr SymTensor2 deviator(const SymTensor2& a) {
  const double m = trace(a) / 3.0;
  return {a[0] - m, a[1] - m, a[2] - m, a[3], a[4], a[5]};
}

/// Full double contraction a:b.
constexpr double contract(const SymTensor2& a, const SymTensor2& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + 2.0 * (a[3] * b[3] + a[4] * b[4] + a[5] * b[5]);
}

inline double norm(const SymTensor2& a) { return std::sqrt(contract(a, a)); }

/// y += alpha * x
constexpr void axpy(double alpha, const SymTensor2& x, SymTensor2& y) {
  for (std::size_t k = 0; k < SymTensor2::kSize; ++k) y[k] += alpha * x[k];
}

/// sqrt(3/2) |dev(sigma)|
inline double von_mises(const SymTensor2& sigma) { return std::sqrt(1.5) * norm(deviator(sigma)); }

}  // namespace demplast
