#ifndef IPLR_COMMANDS_HPP
#define IPLR_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "iplr/descriptor.hpp"
#include "iplr/integrand.hpp"

// Bodies of the CLI subcommands, separated from flag parsing so tests can
// drive them directly. Anything user-facing that goes wrong throws:
// std::invalid_argument for bad input (CLI exit 2), GuardError for requests
// beyond desk scale (exit 3).

namespace iplr {

// Flag bundle common to construct and convergence.
struct SearchOptions {
  uint32_t b = 2;
  uint32_t m = 4;
  uint32_t s = 1;
  uint32_t d = 2;
  uint32_t alpha = 2;
  std::string criterion = "b1";  // b1 | b2
  std::string algorithm = "cbc";
  std::string weights;  // see parse_weights_spec; empty = all ones
  std::optional<uint64_t> modulus;
};

// "ones" (or empty), "product:g1,g2,...", "power:e" for gamma_j = j^e, or
// "@path" to a weights JSON file.
Weights parse_weights_spec(const std::string& spec, uint32_t s);

SearchConfig make_search_config(const SearchOptions& opts);

// Desk-scale cap on the point count: b^m <= 2^20, or 2^24 on the transform
// path. Throws GuardError.
void check_point_scale(uint32_t b, uint32_t m, Algorithm algo);

SearchResult run_search(const SearchConfig& config, Algorithm algo);

void cmd_construct(const SearchOptions& opts, const std::string& out_path,
                   std::ostream& log);

void cmd_points(const std::string& rule_path, const std::string& format,
                const std::string& out_path);

void cmd_convergence(const SearchOptions& opts, uint32_t m_from, uint32_t m_to,
                     const std::string& out_path, std::ostream& log);

void cmd_integrate(const std::string& rule_path,
                   const std::string& integrand_path,
                   const std::string& out_path, std::ostream& log);

// Shortest round-tripping decimal form, locale-independent.
std::string format_double(double v);

// Least-squares slope of y against x; NaN when degenerate.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace iplr

#endif
