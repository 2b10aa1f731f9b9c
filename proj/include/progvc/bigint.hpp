#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace progvc {

using BigInt = boost::multiprecision::cpp_int;

}  // namespace progvc
