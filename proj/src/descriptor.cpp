#include "iplr/descriptor.hpp"

#include "json.hpp"

#include "iplr/version.hpp"

namespace iplr {

using nlohmann::json;

namespace {

// Strictness helper: every consumed key is crossed off, leftovers reject.
class FieldChecker {
 public:
  explicit FieldChecker(const json& obj, const char* where)
      : obj_(obj), where_(where) {
    if (!obj.is_object()) {
      throw std::invalid_argument(std::string(where) + " must be an object");
    }
  }

  const json& require(const char* key) {
    auto it = obj_.find(key);
    if (it == obj_.end()) {
      throw std::invalid_argument(std::string(where_) + " missing field '" +
                                  key + "'");
    }
    seen_.push_back(key);
    return *it;
  }

  const json* optional(const char* key) {
    auto it = obj_.find(key);
    if (it == obj_.end()) return nullptr;
    seen_.push_back(key);
    return &*it;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      bool known = false;
      for (const auto& s : seen_) {
        if (s == it.key()) {
          known = true;
          break;
        }
      }
      if (!known) {
        throw std::invalid_argument(std::string(where_) + " has unknown field '" +
                                    it.key() + "'");
      }
    }
  }

 private:
  const json& obj_;
  const char* where_;
  std::vector<std::string> seen_;
};

template <class T>
T as(const json& v, const char* what) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("invalid value for ") + what);
  }
}

json weights_node(const Weights& w) {
  json node;
  if (w.is_product()) {
    node["kind"] = "product";
    node["gammas"] = w.raw();
  } else {
    node["kind"] = "general";
    json table = json::object();
    const auto& raw = w.raw();
    for (uint64_t mask = 1; mask < raw.size(); ++mask) {
      if (raw[mask] != 0.0) table[std::to_string(mask)] = raw[mask];
    }
    node["table"] = table;
    node["s"] = w.dimension();
  }
  node["gamma_empty"] = w.gamma_empty();
  return node;
}

Weights weights_from_node(const json& node) {
  FieldChecker f(node, "weights");
  const std::string kind = as<std::string>(f.require("kind"), "weights.kind");
  double gamma_empty = 1.0;
  if (const json* ge = f.optional("gamma_empty")) {
    gamma_empty = as<double>(*ge, "weights.gamma_empty");
  }
  if (kind == "product") {
    auto gammas = as<std::vector<double>>(f.require("gammas"),
                                          "weights.gammas");
    f.finish();
    return Weights::product(std::move(gammas), gamma_empty);
  }
  if (kind == "general") {
    const uint32_t s = as<uint32_t>(f.require("s"), "weights.s");
    const json& table = f.require("table");
    if (!table.is_object()) {
      throw std::invalid_argument("weights.table must be an object");
    }
    if (s < 1 || s > 20) {
      throw std::invalid_argument("general weights limited to s <= 20");
    }
    std::vector<double> dense(size_t(1) << s, 0.0);
    for (auto it = table.begin(); it != table.end(); ++it) {
      uint64_t mask;
      try {
        size_t pos = 0;
        mask = std::stoull(it.key(), &pos);
        if (pos != it.key().size()) throw std::invalid_argument("");
      } catch (...) {
        throw std::invalid_argument("weights.table key is not a subset mask");
      }
      if (mask == 0 || mask >= dense.size()) {
        throw std::invalid_argument("subset mask out of range");
      }
      dense[mask] = as<double>(it.value(), "weights.table value");
    }
    f.finish();
    return Weights::general(s, std::move(dense), gamma_empty);
  }
  throw std::invalid_argument("weights.kind must be 'product' or 'general'");
}

json criterion_node(const CriterionKind& kind) {
  json node;
  if (kind.is_b1()) {
    node["kind"] = "B1";
    node["alpha"] = kind.alpha;
  } else {
    node["kind"] = "B2";
  }
  return node;
}

CriterionKind criterion_from_node(const json& node, uint32_t d) {
  FieldChecker f(node, "criterion");
  const std::string kind = as<std::string>(f.require("kind"), "criterion.kind");
  if (kind == "B1") {
    const uint32_t alpha = as<uint32_t>(f.require("alpha"), "criterion.alpha");
    f.finish();
    return CriterionKind::b1(alpha);
  }
  if (kind == "B2") {
    f.finish();
    // alpha enters B2 only through d <= alpha; the weakest valid choice
    return CriterionKind::b2(d);
  }
  throw std::invalid_argument("criterion.kind must be 'B1' or 'B2'");
}

}  // namespace

InterlacedRule RuleDescriptor::to_rule() const {
  std::vector<Poly> q;
  q.reserve(q_encs.size());
  for (uint64_t e : q_encs) q.push_back(poly_from_int(e, b));
  return InterlacedRule(d, s, PolyLatticeRule(b, m, poly_from_int(p_enc, b),
                                              std::move(q)));
}

const char* algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::Cbc:
      return "cbc";
    case Algorithm::FastCbc:
      return "fast-cbc";
    case Algorithm::Korobov:
      return "korobov";
    default:
      return "exhaustive";
  }
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "cbc") return Algorithm::Cbc;
  if (name == "fast-cbc") return Algorithm::FastCbc;
  if (name == "korobov") return Algorithm::Korobov;
  if (name == "exhaustive") return Algorithm::Exhaustive;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

RuleDescriptor make_descriptor(const SearchConfig& config,
                               const SearchResult& result) {
  RuleDescriptor d;
  d.b = config.b;
  d.m = config.m;
  d.s = config.s;
  d.d = config.d;
  d.p_enc = poly_to_int(result.rule.base.p);
  d.q_encs.clear();
  for (const Poly& q : result.rule.base.q) d.q_encs.push_back(poly_to_int(q));
  d.criterion = config.criterion;
  d.weights = config.weights;
  d.algorithm = algorithm_name(result.algorithm);
  d.elapsed = result.elapsed;
  d.library_version = kLibraryVersion;
  return d;
}

std::string descriptor_to_json(const RuleDescriptor& desc) {
  json root;
  root["schema_version"] = kSchemaVersion;
  root["b"] = desc.b;
  root["m"] = desc.m;
  root["s"] = desc.s;
  root["d"] = desc.d;
  root["p"] = desc.p_enc;
  root["q"] = desc.q_encs;
  root["criterion"] = criterion_node(desc.criterion);
  root["weights"] = weights_node(desc.weights);
  root["provenance"] = {{"algorithm", desc.algorithm},
                        {"elapsed", desc.elapsed},
                        {"library_version", desc.library_version}};
  return root.dump(2) + "\n";
}

RuleDescriptor descriptor_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("descriptor is not valid JSON: ") +
                                e.what());
  }
  FieldChecker f(root, "descriptor");
  const std::string version =
      as<std::string>(f.require("schema_version"), "schema_version");
  if (version != kSchemaVersion) {
    throw std::invalid_argument("unsupported schema_version '" + version + "'");
  }
  RuleDescriptor d;
  d.b = as<uint32_t>(f.require("b"), "b");
  d.m = as<uint32_t>(f.require("m"), "m");
  d.s = as<uint32_t>(f.require("s"), "s");
  d.d = as<uint32_t>(f.require("d"), "d");
  d.p_enc = as<uint64_t>(f.require("p"), "p");
  d.q_encs = as<std::vector<uint64_t>>(f.require("q"), "q");
  d.criterion = criterion_from_node(f.require("criterion"), d.d);
  d.weights = weights_from_node(f.require("weights"));
  FieldChecker prov(f.require("provenance"), "provenance");
  d.algorithm = as<std::string>(prov.require("algorithm"), "algorithm");
  d.elapsed = as<double>(prov.require("elapsed"), "elapsed");
  d.library_version =
      as<std::string>(prov.require("library_version"), "library_version");
  prov.finish();
  f.finish();
  algorithm_from_name(d.algorithm);  // reject unknown tags
  d.to_rule();                       // reject structurally invalid rules
  return d;
}

std::string weights_to_json(const Weights& weights) {
  return weights_node(weights).dump(2) + "\n";
}

Weights weights_from_json(const std::string& text) {
  json node;
  try {
    node = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("weights are not valid JSON: ") +
                                e.what());
  }
  return weights_from_node(node);
}

}  // namespace iplr
