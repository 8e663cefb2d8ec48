#include "iplr/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace iplr {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  if (n != y.size() || n < 2) return std::nan("");
  double xm = 0.0, ym = 0.0;
  for (size_t i = 0; i < n; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= static_cast<double>(n);
  ym /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < n; ++i) {
    num += (x[i] - xm) * (y[i] - ym);
    den += (x[i] - xm) * (x[i] - xm);
  }
  return den == 0.0 ? std::nan("") : num / den;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file '" + path + "'");
  out << content;
  if (!out) throw std::invalid_argument("cannot write file '" + path + "'");
}

namespace {

std::vector<double> parse_double_list(const std::string& text,
                                      const char* what) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("");
    } catch (...) {
      throw std::invalid_argument(std::string("bad number in ") + what +
                                  ": '" + item + "'");
    }
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  return out;
}

uint64_t pow_u64(uint32_t b, uint32_t e) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < e; ++i) r *= b;
  return r;
}

const char* criterion_label(const CriterionKind& kind) {
  return kind.is_b1() ? "B1" : "B2";
}

LambdaOptimum optimized_bound(const SearchConfig& config, Algorithm algo,
                              bool gamma_tilde_variant) {
  const BoundParams bp{config.b, config.m, config.s, config.d,
                       config.criterion.alpha};
  auto bound_at = [&](double lambda) {
    return theoretical_bound(algo, config.criterion, bp, config.weights,
                             lambda, std::nullopt, gamma_tilde_variant)
        .value;
  };
  return optimize_lambda(bound_at,
                         std::min(config.criterion.alpha, config.d));
}

}  // namespace

Weights parse_weights_spec(const std::string& spec, uint32_t s) {
  if (spec.empty() || spec == "ones") {
    return Weights::product(std::vector<double>(s, 1.0));
  }
  if (spec.front() == '@') {
    Weights w = weights_from_json(read_text_file(spec.substr(1)));
    if (w.dimension() != s) {
      throw std::invalid_argument("weight dimension mismatch");
    }
    return w;
  }
  if (spec.rfind("product:", 0) == 0) {
    auto gammas = parse_double_list(spec.substr(8), "product weights");
    if (gammas.size() != s) {
      throw std::invalid_argument("weight dimension mismatch");
    }
    return Weights::product(std::move(gammas));
  }
  if (spec.rfind("power:", 0) == 0) {
    auto e = parse_double_list(spec.substr(6), "power weights");
    if (e.size() != 1) {
      throw std::invalid_argument("power weights take a single exponent");
    }
    std::vector<double> gammas(s);
    for (uint32_t j = 1; j <= s; ++j) {
      gammas[j - 1] = std::pow(static_cast<double>(j), e[0]);
    }
    return Weights::product(std::move(gammas));
  }
  throw std::invalid_argument("unrecognized weights spec '" + spec + "'");
}

SearchConfig make_search_config(const SearchOptions& opts) {
  SearchConfig config;
  config.b = opts.b;
  config.m = opts.m;
  config.s = opts.s;
  config.d = opts.d;
  if (opts.criterion == "b1") {
    config.criterion = CriterionKind::b1(opts.alpha);
  } else if (opts.criterion == "b2") {
    config.criterion = CriterionKind::b2(opts.alpha);
  } else {
    throw std::invalid_argument("criterion must be b1 or b2");
  }
  config.weights = parse_weights_spec(opts.weights, opts.s);
  if (opts.modulus) config.modulus = poly_from_int(*opts.modulus, opts.b);
  config.validate();
  return config;
}

void check_point_scale(uint32_t b, uint32_t m, Algorithm algo) {
  const double log2_n = m * std::log2(static_cast<double>(b));
  const double cap = algo == Algorithm::FastCbc ? 24.0 : 20.0;
  if (log2_n > cap + 1e-9) {
    throw GuardError("point count exceeds desk scale");
  }
}

SearchResult run_search(const SearchConfig& config, Algorithm algo) {
  switch (algo) {
    case Algorithm::Cbc:
      return cbc_construct(config);
    case Algorithm::FastCbc:
      return fast_cbc_construct(config);
    case Algorithm::Korobov:
      return korobov_construct(config);
    default:
      return exhaustive_construct(config);
  }
}

void cmd_construct(const SearchOptions& opts, const std::string& out_path,
                   std::ostream& log) {
  const Algorithm algo = algorithm_from_name(opts.algorithm);
  const SearchConfig config = make_search_config(opts);
  check_point_scale(config.b, config.m, algo);
  const SearchResult result = run_search(config, algo);
  write_text_file(out_path, descriptor_to_json(make_descriptor(config, result)));

  log << "criterion " << criterion_label(config.criterion) << " value: "
      << format_double(result.trace.back().value) << "\n";
  const LambdaOptimum opt = optimized_bound(config, algo, false);
  log << "theoretical bound: " << format_double(opt.value)
      << " (lambda* = " << format_double(opt.lambda) << ")\n";
  if (algo == Algorithm::Korobov && !config.criterion.is_b1()) {
    // the inflated-weight reading of the Korobov B2 bound, reported along
    // with the plain one
    const LambdaOptimum alt = optimized_bound(config, algo, true);
    log << "theoretical bound (inflated weights): " << format_double(alt.value)
        << " (lambda* = " << format_double(alt.lambda) << ")\n";
  }
  log << "initial error: " << format_double(config.weights.gamma_empty())
      << "\n";
  log << "rule written to " << out_path << "\n";
}

void cmd_points(const std::string& rule_path, const std::string& format,
                const std::string& out_path) {
  const bool rational = format == "rational";
  if (!rational && format != "double") {
    throw std::invalid_argument("format must be rational or double");
  }
  const RuleDescriptor desc = descriptor_from_json(read_text_file(rule_path));
  const InterlacedRule rule = desc.to_rule();
  check_point_scale(desc.b, desc.m, Algorithm::Cbc);
  const InterlacedPointSet pts = generate_interlaced_points(rule);
  const uint64_t den = pow_u64(desc.b, rule.d * desc.m);

  std::string out;
  std::string den_str = std::to_string(den);
  for (uint64_t n = 0; n < pts.points.rows(); ++n) {
    for (uint32_t j = 0; j < pts.points.cols(); ++j) {
      if (j) out += ',';
      const uint64_t num = pts.points.numerator(n, j);
      if (rational) {
        out += std::to_string(num);
        out += '/';
        out += den_str;
      } else {
        out += format_double(static_cast<double>(num) /
                             static_cast<double>(den));
      }
    }
    out += '\n';
  }
  write_text_file(out_path, out);
}

void cmd_convergence(const SearchOptions& opts, uint32_t m_from, uint32_t m_to,
                     const std::string& out_path, std::ostream& log) {
  if (m_from < 1 || m_to < m_from) {
    throw std::invalid_argument("invalid m range");
  }
  const Algorithm algo = algorithm_from_name(opts.algorithm);
  for (uint32_t m = m_from; m <= m_to; ++m) {
    check_point_scale(opts.b, m, algo);
  }

  std::string csv = "m,n,criterion,bound\n";
  std::vector<double> ms, logs;
  bool any_zero = false;
  for (uint32_t m = m_from; m <= m_to; ++m) {
    SearchOptions step = opts;
    step.m = m;
    const SearchConfig config = make_search_config(step);
    const SearchResult result = run_search(config, algo);
    const double value = result.trace.back().value;
    const LambdaOptimum opt = optimized_bound(config, algo, false);
    csv += std::to_string(m) + "," + std::to_string(pow_u64(opts.b, m)) + "," +
           format_double(value) + "," + format_double(opt.value) + "\n";
    if (value > 0.0) {
      ms.push_back(static_cast<double>(m));
      logs.push_back(std::log2(value) / std::log2(static_cast<double>(opts.b)));
    } else {
      any_zero = true;
    }
  }
  write_text_file(out_path, csv);
  const double slope = any_zero ? std::nan("") : fit_slope(ms, logs);
  log << "fitted slope: " << (std::isnan(slope) ? "nan" : format_double(slope))
      << "\n";
  log << "table written to " << out_path << "\n";
}

void cmd_integrate(const std::string& rule_path,
                   const std::string& integrand_path,
                   const std::string& out_path, std::ostream& log) {
  const RuleDescriptor desc = descriptor_from_json(read_text_file(rule_path));
  const TestIntegrand f = integrand_from_json(read_text_file(integrand_path));
  if (f.dimension() != desc.s) {
    throw std::invalid_argument("integrand dimension mismatch");
  }
  const InterlacedRule rule = desc.to_rule();
  check_point_scale(desc.b, desc.m, Algorithm::Cbc);
  const InterlacedPointSet pts = generate_interlaced_points(rule);
  const double den = static_cast<double>(pow_u64(desc.b, rule.d * desc.m));

  double sum = 0.0;
  std::vector<double> x(desc.s);
  for (uint64_t n = 0; n < pts.points.rows(); ++n) {
    for (uint32_t j = 0; j < desc.s; ++j) {
      x[j] = static_cast<double>(pts.points.numerator(n, j)) / den;
    }
    sum += f.value(x);
  }
  const double estimate = sum / static_cast<double>(pts.points.rows());
  const double exact = f.exact_integral();
  const double abs_error = std::fabs(estimate - exact);

  nlohmann::json root;
  root["estimate"] = estimate;
  root["exact"] = exact;
  root["abs_error"] = abs_error;
  write_text_file(out_path, root.dump(2) + "\n");
  log << "estimate: " << format_double(estimate)
      << ", abs error: " << format_double(abs_error) << "\n";
}

}  // namespace iplr
