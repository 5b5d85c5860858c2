// Exponent estimates for (θ, θ²) with θ³ = θ + 1, primal and dual, and the
// Jarník identity between them.
#include <cstdio>

#include "dioph/exponents.hpp"
#include "dioph/presets.hpp"

int main() {
  using namespace dioph;
  Preset p = cubic_presets().front();
  ExponentEstimate pr = estimate_exponents(p.system, Side::kPrimal, Integer(10000));
  ExponentEstimate du = estimate_exponents(p.system, Side::kDual, Integer(10000));
  std::printf("%s\n", p.name.c_str());
  std::printf("primal  alpha %.4f  beta %.4f\n", pr.alpha_fit, pr.beta_fit);
  std::printf("dual    alpha %.4f  beta %.4f\n", du.alpha_fit, du.beta_fit);
  std::printf("1/alpha + alpha_t - 1 = %.4f\n", 1 / pr.alpha_fit + du.alpha_fit - 1);
}
