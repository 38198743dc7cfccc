#include "qsum/rng.hpp"

namespace qsum {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace qsum
