#include "mpsim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mpsim {

namespace {

using nlohmann::json;
using scenario::ExperimentSpec;
using scenario::FlowKind;
using scenario::FlowSpec;
using scenario::LinkParams;
using scenario::TopologyKind;

void reject_unknown_keys(const json& obj, const std::string& path,
                         const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items())
    if (!known.contains(key)) throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
}

double require_number(const json& obj, const std::string& path, const std::string& key,
                      double fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) throw ConfigError(path.empty() ? key : path + "." + key, "missing required field");
    return fallback;
  }
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path.empty() ? key : path + "." + key, "expected a number");
  return v.get<double>();
}

std::string field(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

LinkParams parse_link(const json& obj, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  reject_unknown_keys(obj, path, {"rate_mbps", "delay_ms", "queue_packets"});
  LinkParams params;
  const double rate_mbps = require_number(obj, path, "rate_mbps", 0.0, true);
  if (!(rate_mbps > 0.0)) throw ConfigError(field(path, "rate_mbps"), "must be positive");
  params.rate_bps = rate_mbps * 1e6;
  const double delay_ms = require_number(obj, path, "delay_ms", 0.0, true);
  if (delay_ms < 0.0) throw ConfigError(field(path, "delay_ms"), "must be non-negative");
  params.prop_delay_s = delay_ms / 1e3;
  const double queue = require_number(obj, path, "queue_packets", 0.0);
  if (queue < 0.0 || queue != static_cast<double>(static_cast<std::size_t>(queue)))
    throw ConfigError(field(path, "queue_packets"), "must be a non-negative integer");
  params.queue_capacity = static_cast<std::size_t>(queue);
  return params;
}

FlowSpec parse_flow(const json& obj, const std::string& path, std::size_t path_count) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  reject_unknown_keys(obj, path, {"kind", "algorithm", "paths", "start_time"});
  FlowSpec flow;

  std::string kind = "mptcp";
  if (obj.contains("kind")) {
    if (!obj.at("kind").is_string()) throw ConfigError(field(path, "kind"), "expected a string");
    kind = obj.at("kind").get<std::string>();
  }
  if (kind == "mptcp")
    flow.kind = FlowKind::Mptcp;
  else if (kind == "sptcp")
    flow.kind = FlowKind::Sptcp;
  else
    throw ConfigError(field(path, "kind"), "unknown flow kind '" + kind + "'");

  std::string algorithm = flow.kind == FlowKind::Sptcp ? "reno" : "lia";
  if (obj.contains("algorithm")) {
    if (!obj.at("algorithm").is_string())
      throw ConfigError(field(path, "algorithm"), "expected a string");
    algorithm = obj.at("algorithm").get<std::string>();
  }
  const auto parsed = cc::algorithm_from_string(algorithm);
  if (!parsed)
    throw ConfigError(field(path, "algorithm"), "unknown algorithm '" + algorithm + "'");
  flow.algorithm = *parsed;

  if (!obj.contains("paths")) throw ConfigError(field(path, "paths"), "missing required field");
  const auto& paths = obj.at("paths");
  if (!paths.is_array() || paths.empty())
    throw ConfigError(field(path, "paths"), "expected a non-empty array of path indexes");
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths.at(i);
    const std::string p_path = field(path, "paths") + "[" + std::to_string(i) + "]";
    if (!p.is_number_unsigned()) throw ConfigError(p_path, "expected a path index");
    const auto index = p.get<std::uint64_t>();
    if (index >= path_count)
      throw ConfigError(p_path, "path " + std::to_string(index) + " does not exist");
    flow.subflow_paths.push_back(static_cast<std::size_t>(index));
  }
  if (flow.kind == FlowKind::Sptcp && flow.subflow_paths.size() != 1)
    throw ConfigError(field(path, "paths"), "sptcp flows use exactly one path");

  flow.start_time_s = require_number(obj, path, "start_time", 0.0);
  if (flow.start_time_s < 0.0)
    throw ConfigError(field(path, "start_time"), "must be non-negative");
  return flow;
}

}  // namespace

scenario::ExperimentSpec parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "top level must be an object");
  reject_unknown_keys(doc, "",
                      {"topology", "paths", "shared_link", "flows", "duration", "seed",
                       "trace_interval", "alpha_total", "start_jitter", "access_rate_factor"});

  ExperimentSpec spec;

  if (!doc.contains("topology")) throw ConfigError("topology", "missing required field");
  if (!doc.at("topology").is_string()) throw ConfigError("topology", "expected a string");
  const auto topology = doc.at("topology").get<std::string>();
  if (topology == "shared_bottleneck")
    spec.topology = TopologyKind::SharedBottleneck;
  else if (topology == "disjoint_paths")
    spec.topology = TopologyKind::DisjointPaths;
  else if (topology == "partially_shared")
    spec.topology = TopologyKind::PartiallyShared;
  else
    throw ConfigError("topology", "unknown topology '" + topology + "'");

  if (!doc.contains("paths")) throw ConfigError("paths", "missing required field");
  if (!doc.at("paths").is_array() || doc.at("paths").empty())
    throw ConfigError("paths", "expected a non-empty array");
  for (std::size_t i = 0; i < doc.at("paths").size(); ++i)
    spec.paths.push_back(parse_link(doc.at("paths").at(i), "paths[" + std::to_string(i) + "]"));
  if (spec.topology == TopologyKind::SharedBottleneck && spec.paths.size() != 1)
    throw ConfigError("paths", "shared_bottleneck uses exactly one path");

  if (doc.contains("shared_link")) {
    if (spec.topology != TopologyKind::PartiallyShared)
      throw ConfigError("shared_link", "only valid for the partially_shared topology");
    spec.shared_link = parse_link(doc.at("shared_link"), "shared_link");
  } else if (spec.topology == TopologyKind::PartiallyShared) {
    throw ConfigError("shared_link", "missing required field for partially_shared");
  }

  if (!doc.contains("flows")) throw ConfigError("flows", "missing required field");
  if (!doc.at("flows").is_array() || doc.at("flows").empty())
    throw ConfigError("flows", "expected a non-empty array");
  for (std::size_t i = 0; i < doc.at("flows").size(); ++i)
    spec.flows.push_back(
        parse_flow(doc.at("flows").at(i), "flows[" + std::to_string(i) + "]", spec.paths.size()));

  spec.duration_s = require_number(doc, "", "duration", 60.0);
  if (!(spec.duration_s > 0.0)) throw ConfigError("duration", "must be positive");

  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned())
      throw ConfigError("seed", "expected an unsigned integer");
    spec.seed = doc.at("seed").get<std::uint64_t>();
  }

  spec.trace_interval_s = require_number(doc, "", "trace_interval", 0.1);
  if (!(spec.trace_interval_s > 0.0)) throw ConfigError("trace_interval", "must be positive");

  spec.alpha_total = require_number(doc, "", "alpha_total", cc::kDefaultAlphaTotal);
  if (!(spec.alpha_total > 0.0)) throw ConfigError("alpha_total", "must be positive");

  spec.start_jitter_s = require_number(doc, "", "start_jitter", 0.01);
  if (spec.start_jitter_s < 0.0) throw ConfigError("start_jitter", "must be non-negative");

  spec.access_rate_factor = require_number(doc, "", "access_rate_factor", 10.0);
  if (!(spec.access_rate_factor >= 1.0))
    throw ConfigError("access_rate_factor", "must be at least 1");

  return spec;
}

scenario::ExperimentSpec load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace mpsim
