#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace qtrade {

// All subspace counts are exact; they outgrow 64 bits quickly.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

}  // namespace qtrade
