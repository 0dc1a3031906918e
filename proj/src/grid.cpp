#include "vspc/grid.hpp"

#include <cstdlib>
#include <string>

#include "vspc/errors.hpp"

namespace vspc {

GridSpec::GridSpec(int n) : n_(n) {
  if (n < 8 || (n & (n - 1)) != 0) {
    throw UsageError("grid size must be a power of two >= 8, got " + std::to_string(n));
  }
}

bool GridSpec::is_dealiased_mode(int i1, int i2) const {
  // max(|k1|,|k2|) > n/3 is removed; compare in integers to avoid rounding.
  return 3 * std::abs(wavenumber(i1)) > n_ || 3 * std::abs(wavenumber(i2)) > n_;
}

}  // namespace vspc
