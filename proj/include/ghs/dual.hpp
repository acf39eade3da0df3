#pragma once

// Nested forward-mode dual numbers. A Dual<T> carries a value and one
// directional derivative; nesting Dual<Dual<...>> yields exact higher and
// mixed partial derivatives of anything written generically over the scalar
// type. All built-in fields in this library are templated on the scalar so
// that nesting is automatic.

#include <cmath>
#include <type_traits>

namespace ghs {

template <class T>
struct Dual {
  T v{};  // value
  T d{};  // derivative along the seeded direction

  constexpr Dual() = default;
  constexpr Dual(const T& value) : v(value) {}
  constexpr Dual(const T& value, const T& deriv) : v(value), d(deriv) {}
  template <class U, class = std::enable_if_t<std::is_arithmetic_v<U> && !std::is_same_v<U, T>>>
  constexpr Dual(U value) : v(static_cast<double>(value)) {}
};

// ---- scalar depth bookkeeping ----

template <class S>
struct DualDepth : std::integral_constant<int, 0> {};
template <class T>
struct DualDepth<Dual<T>> : std::integral_constant<int, DualDepth<T>::value + 1> {};
template <class S>
inline constexpr int dual_depth_v = DualDepth<S>::value;

using D0 = double;
using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;
using D4 = Dual<D3>;
using D5 = Dual<D4>;
using D6 = Dual<D5>;

inline constexpr int kMaxDualDepth = 6;

template <int K>
struct ScalarAtDepth;
template <> struct ScalarAtDepth<0> { using type = D0; };
template <> struct ScalarAtDepth<1> { using type = D1; };
template <> struct ScalarAtDepth<2> { using type = D2; };
template <> struct ScalarAtDepth<3> { using type = D3; };
template <> struct ScalarAtDepth<4> { using type = D4; };
template <> struct ScalarAtDepth<5> { using type = D5; };
template <> struct ScalarAtDepth<6> { using type = D6; };
template <int K>
using scalar_at_depth_t = typename ScalarAtDepth<K>::type;

// Deep value extraction (for branching, pivoting, reporting).
inline double val(double x) { return x; }
template <class T>
double val(const Dual<T>& x) { return val(x.v); }

inline bool finite_deep(double x) { return std::isfinite(x); }
template <class T>
bool finite_deep(const Dual<T>& x) { return finite_deep(x.v) && finite_deep(x.d); }

// ---- arithmetic ----

template <class T>
constexpr Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T>
constexpr Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T>
constexpr Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T>
constexpr Dual<T> operator+(const Dual<T>& a) { return a; }

template <class T>
constexpr Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d};
}
template <class T>
constexpr Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}

// double on either side (parameters and literals stay plain doubles)
template <class T>
constexpr Dual<T> operator+(const Dual<T>& a, double b) { return {a.v + b, a.d}; }
template <class T>
constexpr Dual<T> operator+(double a, const Dual<T>& b) { return {b.v + a, b.d}; }
template <class T>
constexpr Dual<T> operator-(const Dual<T>& a, double b) { return {a.v - b, a.d}; }
template <class T>
constexpr Dual<T> operator-(double a, const Dual<T>& b) { return {a - b.v, -b.d}; }
template <class T>
constexpr Dual<T> operator*(const Dual<T>& a, double b) { return {a.v * b, a.d * b}; }
template <class T>
constexpr Dual<T> operator*(double a, const Dual<T>& b) { return {b.v * a, b.d * a}; }
template <class T>
constexpr Dual<T> operator/(const Dual<T>& a, double b) { return {a.v / b, a.d / b}; }
template <class T>
constexpr Dual<T> operator/(double a, const Dual<T>& b) {
  return {a / b.v, -(a * b.d) / (b.v * b.v)};
}

template <class T> Dual<T>& operator+=(Dual<T>& a, const Dual<T>& b) { a = a + b; return a; }
template <class T> Dual<T>& operator-=(Dual<T>& a, const Dual<T>& b) { a = a - b; return a; }
template <class T> Dual<T>& operator*=(Dual<T>& a, const Dual<T>& b) { a = a * b; return a; }
template <class T> Dual<T>& operator/=(Dual<T>& a, const Dual<T>& b) { a = a / b; return a; }
template <class T> Dual<T>& operator+=(Dual<T>& a, double b) { a = a + b; return a; }
template <class T> Dual<T>& operator-=(Dual<T>& a, double b) { a = a - b; return a; }
template <class T> Dual<T>& operator*=(Dual<T>& a, double b) { a = a * b; return a; }
template <class T> Dual<T>& operator/=(Dual<T>& a, double b) { a = a / b; return a; }

// ---- elementary functions (recurse through nesting) ----

using std::asin;
using std::asinh;
using std::atan;
using std::atanh;
using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::log1p;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tanh;

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  T s = sqrt(x.v);
  return {s, x.d / (2.0 * s)};
}
template <class T>
Dual<T> exp(const Dual<T>& x) {
  T e = exp(x.v);
  return {e, x.d * e};
}
template <class T>
Dual<T> log(const Dual<T>& x) { return {log(x.v), x.d / x.v}; }
template <class T>
Dual<T> log1p(const Dual<T>& x) { return {log1p(x.v), x.d / (1.0 + x.v)}; }
template <class T>
Dual<T> sin(const Dual<T>& x) { return {sin(x.v), x.d * cos(x.v)}; }
template <class T>
Dual<T> cos(const Dual<T>& x) { return {cos(x.v), -(x.d * sin(x.v))}; }
template <class T>
Dual<T> sinh(const Dual<T>& x) { return {sinh(x.v), x.d * cosh(x.v)}; }
template <class T>
Dual<T> cosh(const Dual<T>& x) { return {cosh(x.v), x.d * sinh(x.v)}; }
template <class T>
Dual<T> tanh(const Dual<T>& x) {
  T t = tanh(x.v);
  return {t, x.d * (1.0 - t * t)};
}
template <class T>
Dual<T> atan(const Dual<T>& x) { return {atan(x.v), x.d / (1.0 + x.v * x.v)}; }
template <class T>
Dual<T> asin(const Dual<T>& x) { return {asin(x.v), x.d / sqrt(1.0 - x.v * x.v)}; }
template <class T>
Dual<T> asinh(const Dual<T>& x) { return {asinh(x.v), x.d / sqrt(1.0 + x.v * x.v)}; }
template <class T>
Dual<T> atanh(const Dual<T>& x) { return {atanh(x.v), x.d / (1.0 - x.v * x.v)}; }

template <class S>
constexpr S sq(const S& x) { return x * x; }

// Integer power by repeated multiplication; exact under AD.
template <class S>
S pow_i(S x, int n) {
  if (n < 0) return 1.0 / pow_i(x, -n);
  S r(1.0);
  while (n > 0) {
    if (n & 1) r = r * x;
    x = x * x;
    n >>= 1;
  }
  return r;
}

}  // namespace ghs
