#ifndef IPLR_DESCRIPTOR_HPP
#define IPLR_DESCRIPTOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "iplr/search.hpp"

// Rule descriptors: the JSON exchange format tying a constructed rule to
// the criterion, weights, and provenance that produced it. Decoding is
// strict - schema_version must match and unknown fields are rejected - so
// a descriptor either round-trips losslessly or fails loudly.

namespace iplr {

inline constexpr const char* kSchemaVersion = "1";

struct RuleDescriptor {
  uint32_t b = 2;
  uint32_t m = 1;
  uint32_t s = 1;
  uint32_t d = 2;
  uint64_t p_enc = 0;
  std::vector<uint64_t> q_encs;  // length d*s
  CriterionKind criterion;
  Weights weights = Weights::product({1.0});
  // provenance
  std::string algorithm;  // "cbc" | "fast-cbc" | "korobov" | "exhaustive"
  double elapsed = 0.0;
  std::string library_version;

  InterlacedRule to_rule() const;
};

const char* algorithm_name(Algorithm algo);
Algorithm algorithm_from_name(const std::string& name);

RuleDescriptor make_descriptor(const SearchConfig& config,
                               const SearchResult& result);

std::string descriptor_to_json(const RuleDescriptor& desc);
// Throws std::invalid_argument on malformed input of any kind.
RuleDescriptor descriptor_from_json(const std::string& text);

// Weights fragment shared with the CLI weight files.
std::string weights_to_json(const Weights& weights);
Weights weights_from_json(const std::string& text);

}  // namespace iplr

#endif
