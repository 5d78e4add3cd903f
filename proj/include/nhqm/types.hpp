#pragma once

#include <complex>

namespace nhqm {

using cdouble = std::complex<double>;

}  // namespace nhqm
