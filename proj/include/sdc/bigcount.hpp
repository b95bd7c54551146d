#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace sdc {

// Exact unbounded integer; certificates never touch floating point.
using BigCount = boost::multiprecision::cpp_int;

}  // namespace sdc
