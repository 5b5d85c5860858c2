// Transfers a primal point of Θ = (1/3, 2/7) to a dual one and re-checks the
// certificate from its JSON.
#include <iostream>

#include "dioph/certificate.hpp"
#include "dioph/transference.hpp"

int main() {
  using namespace dioph;
  RatMatrix theta(1, 2);
  theta(0, 0) = Rational(1, 3);
  theta(0, 1) = Rational(2, 7);
  System s = System::from(theta);

  Rational X = 30, U(1, 900);
  auto w = find_point(Box::make(s, Side::kPrimal, Enclosure(U), Enclosure(X)));
  if (!w) {
    std::cerr << "no point in the primal box\n";
    return 1;
  }
  Certificate c = mahler_transfer(s, X, U, *w);
  auto json = to_json(c);
  std::cout << json.dump(2) << "\n";

  VerifyReport rep = verify_certificate(nlohmann::ordered_json::parse(json.dump()));
  std::cout << "witness " << w->str() << " -> " << c.output_point.str()
            << (rep.ok ? "  verified\n" : "  REJECTED\n");
  return rep.ok ? 0 : 1;
}
