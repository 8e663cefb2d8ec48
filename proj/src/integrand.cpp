#include "iplr/integrand.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace iplr {

TestIntegrand TestIntegrand::poly_product(std::vector<double> c) {
  if (c.empty()) throw std::invalid_argument("dimension must be positive");
  for (double cj : c) {
    if (!(std::fabs(cj) <= 1.0)) {
      throw std::invalid_argument("integrand coefficients must lie in [-1, 1]");
    }
  }
  return TestIntegrand{std::move(c)};
}

double TestIntegrand::value(const std::vector<double>& x) const {
  if (x.size() != coefficients.size()) {
    throw std::invalid_argument("integrand dimension mismatch");
  }
  double f = 1.0;
  for (size_t j = 0; j < x.size(); ++j) {
    f *= 1.0 + coefficients[j] * (x[j] * x[j] - 1.0 / 3.0);
  }
  return f;
}

std::string integrand_to_json(const TestIntegrand& f) {
  nlohmann::json root;
  root["family"] = "poly-product";
  root["s"] = f.dimension();
  root["coefficients"] = f.coefficients;
  return root.dump(2) + "\n";
}

TestIntegrand integrand_from_json(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("integrand is not valid JSON: ") +
                                e.what());
  }
  if (!root.is_object()) {
    throw std::invalid_argument("integrand must be an object");
  }
  for (auto it = root.begin(); it != root.end(); ++it) {
    const std::string& k = it.key();
    if (k != "family" && k != "s" && k != "coefficients") {
      throw std::invalid_argument("integrand has unknown field '" + k + "'");
    }
  }
  if (!root.contains("family") || root["family"] != "poly-product") {
    throw std::invalid_argument("integrand family must be 'poly-product'");
  }
  if (!root.contains("coefficients")) {
    throw std::invalid_argument("integrand missing field 'coefficients'");
  }
  std::vector<double> c;
  try {
    c = root["coefficients"].get<std::vector<double>>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument("integrand coefficients must be numbers");
  }
  if (root.contains("s")) {
    uint64_t s;
    try {
      s = root["s"].get<uint64_t>();
    } catch (const nlohmann::json::exception&) {
      throw std::invalid_argument("integrand s must be an integer");
    }
    if (s != c.size()) {
      throw std::invalid_argument("integrand dimension mismatch");
    }
  }
  return TestIntegrand::poly_product(std::move(c));
}

}  // namespace iplr
