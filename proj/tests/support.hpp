#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "freudlab/bigreal.hpp"

namespace freudlab::test {

/// |a − b| ≤ 10^-digits · max(|a|, |b|, floor)
inline bool close(const BigReal& a, const BigReal& b, long digits, double floor = 0.0) {
  BigReal scale = max(max(abs(a), abs(b)), BigReal(floor));
  return abs(a - b) <= scale * BigReal::pow10(-digits);
}

inline BigReal lit(const char* text) { return BigReal(std::string_view(text)); }

}  // namespace freudlab::test

#define CHECK_CLOSE(a, b, digits)                                                                 \
  do {                                                                                            \
    const ::freudlab::BigReal lhs_ = (a), rhs_ = (b);                                             \
    INFO(#a " = " << lhs_.to_string(25) << ", " #b " = " << rhs_.to_string(25));                 \
    CHECK(::freudlab::test::close(lhs_, rhs_, (digits)));                                         \
  } while (0)

#define CHECK_SMALL(a, bound_digits)                                                              \
  do {                                                                                            \
    const ::freudlab::BigReal v_ = (a);                                                           \
    INFO(#a " = " << v_.to_string(10));                                                           \
    CHECK(::freudlab::abs(v_) <= ::freudlab::BigReal::pow10(-(bound_digits)));                   \
  } while (0)
