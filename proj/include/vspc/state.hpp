#pragma once

#include "vspc/field.hpp"

namespace vspc {

/// Solution pair (u, F) at time t.
struct State {
  double t = 0.0;
  VectorField u;
  TensorField F;

  const GridSpec& grid() const { return u.grid(); }
};

}  // namespace vspc
