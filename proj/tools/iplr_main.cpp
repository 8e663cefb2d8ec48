#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "iplr/commands.hpp"
#include "iplr/version.hpp"

namespace {

// "a..b" -> (a, b)
void parse_m_range(const std::string& text, uint32_t& from, uint32_t& to) {
  const size_t dots = text.find("..");
  try {
    if (dots == std::string::npos) throw std::invalid_argument("");
    size_t used = 0;
    unsigned long a = std::stoul(text.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument("");
    const std::string rest = text.substr(dots + 2);
    unsigned long b = std::stoul(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("");
    from = static_cast<uint32_t>(a);
    to = static_cast<uint32_t>(b);
  } catch (...) {
    throw std::invalid_argument("m range must have the form a..b");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interlaced polynomial lattice rules"};
  app.set_version_flag("--version", iplr::kLibraryVersion);
  app.require_subcommand(1);

  iplr::SearchOptions opts;
  std::string out_path;
  std::string rule_path;
  std::string format = "double";
  std::string integrand_path;
  std::string m_range;
  uint64_t modulus = 0;

  auto add_search_flags = [&](CLI::App* cmd) {
    cmd->add_option("--b", opts.b, "prime base")->capture_default_str();
    cmd->add_option("--s", opts.s, "interlaced dimensions")
        ->capture_default_str();
    cmd->add_option("--d", opts.d, "interlacing factor")
        ->capture_default_str();
    cmd->add_option("--alpha", opts.alpha, "smoothness")
        ->capture_default_str();
    cmd->add_option("--criterion", opts.criterion, "b1 or b2")
        ->capture_default_str();
    cmd->add_option("--algorithm", opts.algorithm,
                    "cbc, fast-cbc, korobov, or exhaustive")
        ->capture_default_str();
    cmd->add_option("--weights", opts.weights,
                    "ones | product:g1,g2,... | power:e | @file.json");
    cmd->add_option("--modulus", modulus,
                    "integer encoding of the modulus polynomial "
                    "(default: smallest irreducible)");
  };

  CLI::App* construct = app.add_subcommand(
      "construct", "search for a generating vector, write its descriptor");
  add_search_flags(construct);
  construct->add_option("--m", opts.m, "number of points = b^m")
      ->capture_default_str();
  construct->add_option("--out", out_path, "descriptor JSON path")->required();

  CLI::App* points =
      app.add_subcommand("points", "export the interlaced point set as CSV");
  points->add_option("--rule", rule_path, "descriptor JSON path")->required();
  points->add_option("--format", format, "rational or double")
      ->capture_default_str();
  points->add_option("--out", out_path, "CSV path")->required();

  CLI::App* convergence = app.add_subcommand(
      "convergence", "construct rules across an m range, tabulate "
                     "criterion values and bounds");
  add_search_flags(convergence);
  convergence->add_option("--m-range", m_range, "a..b")->required();
  convergence->add_option("--out", out_path, "CSV path")->required();

  CLI::App* integrate = app.add_subcommand(
      "integrate", "average a test integrand over a rule's points");
  integrate->add_option("--rule", rule_path, "descriptor JSON path")
      ->required();
  integrate->add_option("--integrand", integrand_path,
                        "integrand JSON path")
      ->required();
  integrate->add_option("--out", out_path, "result JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (construct->count("--modulus") || convergence->count("--modulus")) {
      opts.modulus = modulus;
    }
    if (construct->parsed()) {
      iplr::cmd_construct(opts, out_path, std::cout);
    } else if (points->parsed()) {
      iplr::cmd_points(rule_path, format, out_path);
    } else if (convergence->parsed()) {
      uint32_t from = 0, to = 0;
      parse_m_range(m_range, from, to);
      iplr::cmd_convergence(opts, from, to, out_path, std::cout);
    } else if (integrate->parsed()) {
      iplr::cmd_integrate(rule_path, integrand_path, out_path, std::cout);
    }
  } catch (const iplr::GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
