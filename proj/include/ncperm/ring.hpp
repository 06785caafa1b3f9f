#pragma once

#include "ncperm/rational.hpp"

#include <concepts>

namespace ncperm {

/// Values usable as ABP/circuit evaluation targets: an associative ring
/// with a Q-action. Multiplication need not commute. Rational, square
/// RatMatrix and NcPoly all qualify.
template <class T>
concept RingElement = std::copyable<T> && requires(const T& a, const T& b, const Rational& q) {
  { a + b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a * q } -> std::convertible_to<T>;
};

/// Additive zero of the ring `one` belongs to (keeps matrix dimensions).
template <RingElement T>
T zero_like(const T& one) {
  return one * Rational(0);
}

}  // namespace ncperm
