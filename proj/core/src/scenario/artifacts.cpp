#include "mpsim/scenario/artifacts.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace mpsim::scenario {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string trace_csv(const RunResult& result) {
  std::string out = "time,flow,subflow,cwnd,ssthresh,srtt_ms,phase\n";
  for (const auto& row : result.trace) {
    out += format_number(row.time);
    out += ',';
    out += std::to_string(row.flow);
    out += ',';
    out += std::to_string(row.subflow);
    out += ',';
    out += format_number(row.cwnd);
    out += ',';
    out += format_number(row.ssthresh);
    out += ',';
    out += format_number(row.srtt_ms);
    out += ',';
    out += cc::to_string(row.phase);
    out += '\n';
  }
  return out;
}

std::string throughput_csv(const ExperimentSpec& spec, const RunResult& result) {
  const auto series = throughput_series(result.deliveries, spec.trace_interval_s,
                                        spec.duration_s, spec.flows.size());
  std::string out = "time,flow,goodput_bps\n";
  if (series.empty()) return out;
  for (std::size_t bin = 0; bin < series[0].size(); ++bin) {
    for (std::size_t f = 0; f < series.size(); ++f) {
      out += format_number(series[f][bin].time);
      out += ',';
      out += std::to_string(f);
      out += ',';
      out += format_number(series[f][bin].bps);
      out += '\n';
    }
  }
  return out;
}

std::string summary_json(const RunSummary& summary) {
  nlohmann::ordered_json doc;
  doc["schema"] = "mpsim-run-summary-v1";
  doc["seed"] = summary.seed;
  doc["rng_algorithm"] = summary.rng_algorithm;
  doc["duration_s"] = summary.duration_s;
  doc["warmup_s"] = summary.warmup_s;
  doc["total_simulated_s"] = summary.total_simulated_s;
  doc["jain_index"] = summary.jain_index;
  doc["flows"] = nlohmann::ordered_json::array();
  for (const auto& flow : summary.flows) {
    nlohmann::ordered_json f;
    f["id"] = flow.id;
    f["kind"] = std::string(to_string(flow.kind));
    f["algorithm"] = std::string(cc::to_string(flow.algorithm));
    f["goodput_bps"] = flow.goodput_bps;
    f["subflows"] = nlohmann::ordered_json::array();
    for (const auto& sub : flow.subflows) {
      nlohmann::ordered_json s;
      s["path"] = sub.path;
      s["mean_cwnd"] = sub.mean_cwnd;
      s["goodput_bps"] = sub.goodput_bps;
      s["loss_events"] = sub.loss_events;
      s["rto_events"] = sub.rto_events;
      s["delivered_segments"] = sub.delivered_segments;
      f["subflows"].push_back(std::move(s));
    }
    doc["flows"].push_back(std::move(f));
  }
  doc["links"] = nlohmann::ordered_json::array();
  for (const auto& link : summary.links) {
    nlohmann::ordered_json l;
    l["name"] = link.name;
    l["rate_bps"] = link.rate_bps;
    l["mean_queue_delay_s"] = link.mean_queue_delay_s;
    l["drops"] = link.drops;
    l["delivered_bits"] = link.delivered_bits;
    doc["links"].push_back(std::move(l));
  }
  return doc.dump(2) + "\n";
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

void write_artifacts(const std::filesystem::path& out_dir, const ExperimentSpec& spec,
                     const RunResult& result) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec && !std::filesystem::is_directory(out_dir))
    throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " +
                             ec.message());
  write_file(out_dir / "trace.csv", trace_csv(result));
  write_file(out_dir / "throughput.csv", throughput_csv(spec, result));
  write_file(out_dir / "summary.json", summary_json(result.summary));
}

}  // namespace mpsim::scenario
