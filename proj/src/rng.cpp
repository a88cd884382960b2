#include "phasecone/rng.hpp"

#include <cmath>
#include <numbers>

namespace phasecone {

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller on (0, 1] x [0, 1) so the log argument never vanishes.
  double u = 1.0 - uniform01();
  double v = uniform01();
  double r = std::sqrt(-2.0 * std::log(u));
  double angle = 2.0 * std::numbers::pi * v;
  spare_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

}  // namespace phasecone
