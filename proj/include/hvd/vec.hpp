#pragma once

// Small dense-vector helpers over std::vector / std::span. Dimensions in
// this library are tiny (d+1 <= a dozen), so plain loops are fine.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hvd/error.hpp"

namespace hvd {

template <class T>
using Vec = std::vector<T>;

inline void require_same_arity(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    fail(ErrorCode::ArityMismatch, std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
}

template <class T>
T dot(std::span<const T> a, std::span<const T> b) {
  require_same_arity(a.size(), b.size(), "dot");
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
T norm2(std::span<const T> a) {
  T s = 0;
  for (const auto& v : a) s += v * v;
  return s;
}

template <class T>
T dist2(std::span<const T> a, std::span<const T> b) {
  require_same_arity(a.size(), b.size(), "dist2");
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const T d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

template <class T>
Vec<T> sub(std::span<const T> a, std::span<const T> b) {
  require_same_arity(a.size(), b.size(), "sub");
  Vec<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class T>
Vec<T> scaled(std::span<const T> a, const T& s) {
  Vec<T> r(a.begin(), a.end());
  for (auto& v : r) v *= s;
  return r;
}

/// a + t (b - a)
template <class T>
Vec<T> lerp(std::span<const T> a, std::span<const T> b, const T& t) {
  require_same_arity(a.size(), b.size(), "lerp");
  Vec<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + t * (b[i] - a[i]);
  return r;
}

// Overloads so call sites can pass vectors without spelling out spans.
template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) { return dot(std::span<const T>(a), std::span<const T>(b)); }
template <class T>
T norm2(const Vec<T>& a) { return norm2(std::span<const T>(a)); }
template <class T>
T dist2(const Vec<T>& a, const Vec<T>& b) { return dist2(std::span<const T>(a), std::span<const T>(b)); }
template <class T>
Vec<T> sub(const Vec<T>& a, const Vec<T>& b) { return sub(std::span<const T>(a), std::span<const T>(b)); }
template <class T>
Vec<T> scaled(const Vec<T>& a, const T& s) { return scaled(std::span<const T>(a), s); }
template <class T>
Vec<T> lerp(const Vec<T>& a, const Vec<T>& b, const T& t) {
  return lerp(std::span<const T>(a), std::span<const T>(b), t);
}

}  // namespace hvd
