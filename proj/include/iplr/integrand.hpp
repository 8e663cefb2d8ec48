#ifndef IPLR_INTEGRAND_HPP
#define IPLR_INTEGRAND_HPP

#include <cstdint>
#include <string>
#include <vector>

// Desk-scale test integrands with known integrals. The one family offered
// is f(x) = prod_j (1 + c_j*(x_j^2 - 1/3)) with |c_j| <= 1, whose exact
// integral over [0,1)^s is 1.

namespace iplr {

struct TestIntegrand {
  std::vector<double> coefficients;  // one c_j per dimension

  // Throws on |c_j| > 1.
  static TestIntegrand poly_product(std::vector<double> c);

  uint32_t dimension() const {
    return static_cast<uint32_t>(coefficients.size());
  }
  double exact_integral() const { return 1.0; }
  double value(const std::vector<double>& x) const;
};

std::string integrand_to_json(const TestIntegrand& f);
TestIntegrand integrand_from_json(const std::string& text);

}  // namespace iplr

#endif
