#pragma once

#include <array>
#include <cstddef>

#include "t5/rational.hpp"

namespace t5 {

/// Forward-mode dual number carrying a value and its gradient with respect to
/// N independent variables. Works over any exact or floating field T.
template <class T, std::size_t N>
struct Dual {
  T v{};
  std::array<T, N> d{};

  Dual() = default;
  Dual(const T& value) : v(value) {}  // NOLINT(google-explicit-constructor)
  Dual(int value) : v(value) {}       // NOLINT(google-explicit-constructor)

  static Dual variable(const T& value, std::size_t index) {
    Dual x(value);
    x.d[index] = T(1);
    return x;
  }

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (std::size_t i = 0; i < N; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (std::size_t i = 0; i < N; ++i) d[i] -= o.d[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (std::size_t i = 0; i < N; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    // (u/w)' = (u' w - u w') / w^2
    const T w2 = o.v * o.v;
    for (std::size_t i = 0; i < N; ++i) d[i] = (d[i] * o.v - v * o.d[i]) / w2;
    v /= o.v;
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend Dual operator-(Dual a) {
    a.v = -a.v;
    for (auto& x : a.d) x = -x;
    return a;
  }
};

template <class T, std::size_t N>
bool is_zero(const Dual<T, N>& x) {
  return is_zero(x.v);
}

}  // namespace t5
