#ifndef RATMAPS_BIGINT_HPP
#define RATMAPS_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace ratmaps {

/// Exact arbitrary-precision integer. Formula specializations at q up to
/// 2^20 with exponents like dm routinely exceed 64 bits, so every reported
/// integer goes through this type.
using BigInt = boost::multiprecision::cpp_int;

}  // namespace ratmaps

#endif
