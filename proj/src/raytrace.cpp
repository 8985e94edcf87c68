#include "ringpet/raytrace.hpp"

namespace ringpet {

double line_integral(const ImageGrid& grid, const double* img, std::array<double, 2> p0,
                     std::array<double, 2> p1) {
  double acc = 0.0;
  trace_segment(grid, p0, p1, [&](size_t idx, double len) { acc += img[idx] * len; });
  return acc;
}

}  // namespace ringpet
