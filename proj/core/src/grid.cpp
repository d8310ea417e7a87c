#include "splitmax/grid.hpp"

#include <cmath>

#include "splitmax/error.hpp"

namespace splitmax {

void GridSpec::validate() const {
  for (int a = 0; a < 3; ++a) {
    if (n[a] < 2) {
      throw ValidationError("grid.n: n_i >= 2 required (got n_" + std::to_string(a + 1) + " = " +
                            std::to_string(n[a]) + ")");
    }
    if (!(h[a] > 0.0) || !std::isfinite(h[a])) {
      throw ValidationError("grid.h: h_i > 0 required (axis " + std::to_string(a + 1) + ")");
    }
  }
}

}  // namespace splitmax
