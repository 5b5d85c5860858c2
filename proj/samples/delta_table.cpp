// Prints Δ_d and the improved Mahler factor next to the classical d - 1.
#include <cstdio>

#include "dioph/section_dual.hpp"

int main() {
  using namespace dioph;
  std::printf("%3s  %-24s %-14s %s\n", "d", "delta", "factor", "d-1");
  for (int d = 2; d <= 12; ++d) {
    Rational D = delta_d(d);
    std::printf("%3d  %-24s %-14s %d\n", d, to_string(D).c_str(),
                to_decimal(Enclosure(mahler_factor(d).hi()), 10).c_str(), d - 1);
  }
}
