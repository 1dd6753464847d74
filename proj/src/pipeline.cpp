// Copyright 2026 The tim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tim/pipeline.hpp"

#include "tim/classify.hpp"
#include "tim/error.hpp"
#include "tim/io/trajectory_csv.hpp"
#include "tim/parallel.hpp"
#include "tim/signal.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

namespace tim::pipeline
{

namespace
{

using Clock = std::chrono::steady_clock;
using ordered_json = nlohmann::ordered_json;

constexpr double kSegmentSeconds = static_cast<double>(kSegmentSteps) * kDt;

std::string fixed(double value, int precision)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, precision);
  return std::string(buf, res.ptr);
}

void make_dirs(const fs::path & dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  }
}

void write_text(const fs::path & path, const std::string & text)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << text;
  if (!out.flush()) {
    throw IoError("write failed: " + path.string());
  }
}

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Per-trajectory figures, reduced in index order so sums do not depend on scheduling.
struct Measured
{
  InteractionCategory category{InteractionCategory::None};
  double distance_m{0.0};
  quality::QualityReport before;
  std::optional<quality::QualityReport> after;
};

double round_trip(double x)
{
  const std::string text = io::format_fixed(x);
  double out = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

// The record as a reader of its CSV sees it.
TrajectoryRecord as_written(TrajectoryRecord r)
{
  for (auto & row : r.rows) {
    row.x = round_trip(row.x);
    row.y = round_trip(row.y);
    row.v = round_trip(row.v);
    row.a = round_trip(row.a);
    if (row.dist_to_stop_line) {
      row.dist_to_stop_line = round_trip(*row.dist_to_stop_line);
    }
    if (row.dist_to_sign) {
      row.dist_to_sign = round_trip(*row.dist_to_sign);
    }
  }
  return r;
}

void accumulate(RunManifest & m, const std::vector<Measured> & items)
{
  for (const Measured & it : items) {
    CategorySummary & c = m.at(it.category);
    ++c.count;
    c.distance_km += it.distance_m / 1000.0;
    c.duration_h += kSegmentSeconds / 3600.0;
    c.before.anomaly_accel_pct += it.before.anomaly_accel_pct;
    c.before.anomaly_jerk_pct += it.before.anomaly_jerk_pct;
    c.before.anomaly_inversion_pct += it.before.anomaly_inversion_pct;
    if (it.after) {
      if (!c.after) {
        c.after = quality::QualityReport{};
      }
      c.after->anomaly_accel_pct += it.after->anomaly_accel_pct;
      c.after->anomaly_jerk_pct += it.after->anomaly_jerk_pct;
      c.after->anomaly_inversion_pct += it.after->anomaly_inversion_pct;
    }
  }
  // sums to means; `after` averages over the trajectories that have one
  std::array<std::size_t, kAllCategories.size()> with_after{};
  for (const Measured & it : items) {
    with_after[static_cast<std::size_t>(it.category)] += it.after ? 1 : 0;
  }
  for (std::size_t k = 0; k < m.categories.size(); ++k) {
    CategorySummary & c = m.categories[k];
    if (c.count > 0) {
      const auto n = static_cast<double>(c.count);
      c.before.anomaly_accel_pct /= n;
      c.before.anomaly_jerk_pct /= n;
      c.before.anomaly_inversion_pct /= n;
    }
    if (c.after && with_after[k] > 0) {
      const auto n = static_cast<double>(with_after[k]);
      c.after->anomaly_accel_pct /= n;
      c.after->anomaly_jerk_pct /= n;
      c.after->anomaly_inversion_pct /= n;
    }
  }
}

ordered_json report_json(const quality::QualityReport & r)
{
  ordered_json j;
  j["anomaly_accel_pct"] = r.anomaly_accel_pct;
  j["anomaly_jerk_pct"] = r.anomaly_jerk_pct;
  j["anomaly_inversion_pct"] = r.anomaly_inversion_pct;
  return j;
}

void write_outputs(const RunManifest & m, const fs::path & out, const std::string & prefix)
{
  make_dirs(out);
  write_text(out / (prefix + "manifest.json"), format_manifest(m));
  write_text(out / (prefix + "summary.csv"), format_summary_csv(m));
  write_text(out / (prefix + "summary.txt"), format_summary_text(m));
}

bool is_enhanced(const fs::path & p)
{
  const std::string stem = p.stem().string();
  constexpr std::string_view suffix = "_enhanced";
  return stem.size() >= suffix.size() && stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void require_directory(const fs::path & dir)
{
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw IoError("not a readable directory: " + dir.string());
  }
}

std::uint64_t uniform_index(std::mt19937_64 & rng, std::size_t bound)
{
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return std::min<std::uint64_t>(bound - 1, static_cast<std::uint64_t>(u * static_cast<double>(bound)));
}

std::string comparison_csv(const TrajectoryRecord & record, const idm::IdmParams & p,
                           const std::string & set)
{
  std::ostringstream out;
  out << "index,set,v_observed,v_simulated,a_observed,a_model\n";
  std::size_t first = record.rows.size();
  for (std::size_t i = 0; i < record.rows.size(); ++i) {
    const auto & d = record.rows[i].dist_to_stop_line;
    if (d && *d > 0.0) {
      first = i;
      break;
    }
  }
  idm::Approach sim;
  if (first < record.rows.size()) {
    sim = idm::simulate_approach(record.rows[first].v, *record.rows[first].dist_to_stop_line, p, kDt,
                                 record.rows.size() - first);
  }
  for (std::size_t i = 0; i < record.rows.size(); ++i) {
    const TrajectoryRow & r = record.rows[i];
    out << r.index << ',' << set << ',' << io::format_fixed(r.v) << ',';
    if (i >= first && i - first < sim.v.size()) {
      out << io::format_fixed(sim.v[i - first]);
    }
    out << ',' << io::format_fixed(r.a) << ',';
    if (r.dist_to_stop_line && *r.dist_to_stop_line > 0.0) {
      out << io::format_fixed(idm::idm_accel(r.v, *r.dist_to_stop_line, p));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

int exit_code_for(const std::exception & e)
{
  if (dynamic_cast<const InsufficientData *>(&e) != nullptr ||
      dynamic_cast<const EmptyInput *>(&e) != nullptr ||
      dynamic_cast<const AllSamplesInvalid *>(&e) != nullptr) {
    return kExitNoData;
  }
  if (dynamic_cast<const IoError *>(&e) != nullptr || dynamic_cast<const ParseError *>(&e) != nullptr ||
      dynamic_cast<const SchemaError *>(&e) != nullptr) {
    return kExitIo;
  }
  return kExitConfig;
}

std::size_t RunManifest::total() const
{
  std::size_t n = 0;
  for (const auto & c : categories) {
    n += c.count;
  }
  return n;
}

std::string format_manifest(const RunManifest & m)
{
  ordered_json j;
  j["command"] = m.command;
  j["inputs"] = m.inputs;
  j["config"] = m.config_path ? ordered_json(*m.config_path) : ordered_json(nullptr);
  j["segments_read"] = m.segments_read;
  j["processed"] = m.total();
  ordered_json skipped = ordered_json::array();
  for (const auto & d : m.diagnostics) {
    skipped.push_back({{"source", d.source}, {"segment_id", d.segment_id}, {"message", d.message}});
  }
  j["skipped"] = skipped;
  ordered_json cats = ordered_json::object();
  for (InteractionCategory cat : kAllCategories) {
    const CategorySummary & c = m.at(cat);
    ordered_json e;
    e["count"] = c.count;
    e["distance_km"] = c.distance_km;
    e["duration_h"] = c.duration_h;
    e["before"] = c.count > 0 ? report_json(c.before) : ordered_json(nullptr);
    if (c.after) {
      e["after"] = report_json(*c.after);
    }
    cats[std::string(to_string(cat))] = e;
  }
  j["categories"] = cats;
  return j.dump(2) + "\n";
}

namespace
{

std::vector<std::string> summary_header(bool with_after)
{
  std::vector<std::string> h = {"category",  "count",          "distance_km",
                                "duration_h", "accel_pct",      "jerk_pct",
                                "inversion_pct"};
  if (with_after) {
    h.insert(h.end(), {"accel_pct_after", "jerk_pct_after", "inversion_pct_after"});
  }
  return h;
}

std::vector<std::vector<std::string>> summary_rows(const RunManifest & m, bool with_after)
{
  std::vector<std::vector<std::string>> rows;
  auto metrics = [](std::vector<std::string> & r, const std::optional<quality::QualityReport> & q) {
    if (q) {
      r.push_back(fixed(q->anomaly_accel_pct, 2));
      r.push_back(fixed(q->anomaly_jerk_pct, 2));
      r.push_back(fixed(q->anomaly_inversion_pct, 2));
    } else {
      r.insert(r.end(), 3, "");
    }
  };
  for (InteractionCategory cat : kAllCategories) {
    const CategorySummary & c = m.at(cat);
    std::vector<std::string> r = {std::string(to_string(cat)), std::to_string(c.count),
                                  fixed(c.distance_km, 3), fixed(c.duration_h, 4)};
    metrics(r, c.count > 0 ? std::optional(c.before) : std::nullopt);
    if (with_after) {
      metrics(r, c.count > 0 ? c.after : std::nullopt);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

bool has_after(const RunManifest & m)
{
  return std::any_of(m.categories.begin(), m.categories.end(),
                     [](const CategorySummary & c) { return c.after.has_value(); });
}

}  // namespace

std::string format_summary_csv(const RunManifest & m)
{
  const bool with_after = has_after(m);
  std::ostringstream out;
  const auto header = summary_header(with_after);
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << header[i];
  }
  out << '\n';
  for (const auto & r : summary_rows(m, with_after)) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      out << (i ? "," : "") << r[i];
    }
    out << '\n';
  }
  return out.str();
}

std::string format_summary_text(const RunManifest & m)
{
  const bool with_after = has_after(m);
  const auto header = summary_header(with_after);
  auto rows = summary_rows(m, with_after);
  for (auto & r : rows) {
    for (auto & cell : r) {
      if (cell.empty()) {
        cell = "-";
      }
    }
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) {
    width[i] = header[i].size();
    for (const auto & r : rows) {
      width[i] = std::max(width[i], r[i].size());
    }
  }
  std::ostringstream out;
  auto line = [&](const std::vector<std::string> & cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i == 0) {
        out << std::left << std::setw(static_cast<int>(width[i])) << cells[i];
      } else {
        out << "  " << std::right << std::setw(static_cast<int>(width[i])) << cells[i];
      }
    }
    out << '\n';
  };
  line(header);
  for (const auto & r : rows) {
    line(r);
  }
  out << "total " << m.total() << " of " << m.segments_read << " read";
  if (!m.diagnostics.empty()) {
    out << ", " << m.diagnostics.size() << " skipped";
  }
  out << '\n';
  return out.str();
}

double travelled_distance(const TrajectoryRecord & record)
{
  double d = 0.0;
  for (std::size_t i = 1; i < record.rows.size(); ++i) {
    d += distance(Vec2{record.rows[i - 1].x, record.rows[i - 1].y}, Vec2{record.rows[i].x, record.rows[i].y});
  }
  return d;
}

RunManifest run_extract(const ExtractOptions & options, const io::ParamBundle & params)
{
  const auto start = Clock::now();
  RunManifest m;
  m.command = "extract";
  m.config_path = options.config_path;

  std::vector<Segment> segments;
  std::set<std::string> seen;
  for (const fs::path & input : options.inputs) {
    m.inputs.push_back(input.generic_string());
    io::ReadResult r = io::read_segments(input, options.strict);
    m.segments_read += r.segments.size() + r.diagnostics.size();
    m.diagnostics.insert(m.diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
    for (Segment & s : r.segments) {
      if (!seen.insert(s.id).second) {
        if (options.strict) {
          throw SchemaError("duplicate segment id '" + s.id + "' in " + input.string());
        }
        m.diagnostics.push_back({input.generic_string(), s.id, "duplicate segment id"});
        continue;
      }
      segments.push_back(std::move(s));
    }
  }
  if (segments.empty()) {
    throw InsufficientData("no valid segments in the input");
  }

  for (InteractionCategory c : kAllCategories) {
    if (c != InteractionCategory::None) {
      make_dirs(options.out / std::string(to_string(c)));
    }
  }

  std::vector<Measured> measured(segments.size());
  parallel_for(segments.size(), options.jobs, [&](std::size_t i) {
    const Classification cls = classify(segments[i], params.light, params.sign);
    const TrajectoryRecord record = organize(segments[i], cls);
    measured[i].category = cls.category;
    measured[i].distance_m = travelled_distance(record);
    measured[i].before = quality::quality_report(as_written(record), params.quality);
    if (cls.category != InteractionCategory::None) {
      io::write_trajectory_csv(record,
                               options.out / std::string(to_string(cls.category)) / (record.segment_id + ".csv"));
    }
  });
  accumulate(m, measured);
  write_outputs(m, options.out, "");
  m.wall_seconds = seconds_since(start);
  return m;
}

std::vector<fs::path> list_trajectories(const fs::path & dir)
{
  require_directory(dir);
  std::vector<fs::path> dirs = {dir};
  for (InteractionCategory c : kAllCategories) {
    const fs::path sub = dir / std::string(to_string(c));
    std::error_code ec;
    if (fs::is_directory(sub, ec)) {
      dirs.push_back(sub);
    }
  }
  std::vector<fs::path> files;
  for (const fs::path & d : dirs) {
    std::error_code ec;
    for (fs::directory_iterator it(d, ec), end; !ec && it != end; it.increment(ec)) {
      const fs::path & p = it->path();
      if (it->is_regular_file() && p.extension() == ".csv" && !is_enhanced(p) &&
          p.filename() != "summary.csv" && p.filename() != "enhance_summary.csv" &&
          p.filename() != "assess_summary.csv") {
        files.push_back(p);
      }
    }
    if (ec) {
      throw IoError("cannot list " + d.string() + ": " + ec.message());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

fs::path enhanced_sibling(const fs::path & raw)
{
  return raw.parent_path() / (raw.stem().string() + "_enhanced.csv");
}

RunManifest run_enhance(const StageOptions & options, const io::ParamBundle & params)
{
  const auto start = Clock::now();
  RunManifest m;
  m.command = "enhance";
  m.inputs.push_back(options.dir.generic_string());
  m.config_path = options.config_path;
  const std::vector<fs::path> files = list_trajectories(options.dir);
  if (files.empty()) {
    throw InsufficientData("no trajectory files under " + options.dir.string());
  }
  m.segments_read = files.size();
  std::vector<Measured> measured(files.size());
  parallel_for(files.size(), options.jobs, [&](std::size_t i) {
    const TrajectoryRecord raw = io::read_trajectory_csv(files[i]);
    const TrajectoryRecord clean = signal::denoise_trajectory(raw, params.denoise);
    measured[i].category = raw.category;
    measured[i].distance_m = travelled_distance(raw);
    measured[i].before = quality::quality_report(raw, params.quality);
    measured[i].after = quality::quality_report(clean, params.quality);
    io::write_trajectory_csv(clean, enhanced_sibling(files[i]));
  });
  accumulate(m, measured);
  write_outputs(m, options.out.value_or(options.dir), "enhance_");
  m.wall_seconds = seconds_since(start);
  return m;
}

RunManifest run_assess(const StageOptions & options, const io::ParamBundle & params)
{
  const auto start = Clock::now();
  RunManifest m;
  m.command = "assess";
  m.inputs.push_back(options.dir.generic_string());
  m.config_path = options.config_path;
  const std::vector<fs::path> files = list_trajectories(options.dir);
  if (files.empty()) {
    throw InsufficientData("no trajectory files under " + options.dir.string());
  }
  m.segments_read = files.size();
  std::vector<Measured> measured(files.size());
  parallel_for(files.size(), options.jobs, [&](std::size_t i) {
    const TrajectoryRecord raw = io::read_trajectory_csv(files[i]);
    measured[i].category = raw.category;
    measured[i].distance_m = travelled_distance(raw);
    measured[i].before = quality::quality_report(raw, params.quality);
    const fs::path sibling = enhanced_sibling(files[i]);
    std::error_code ec;
    if (fs::exists(sibling, ec)) {
      measured[i].after = quality::quality_report(io::read_trajectory_csv(sibling), params.quality);
    }
  });
  accumulate(m, measured);
  if (options.out) {
    make_dirs(*options.out);
    write_text(*options.out / "assess_summary.csv", format_summary_csv(m));
    write_text(*options.out / "assess_summary.txt", format_summary_text(m));
  }
  m.wall_seconds = seconds_since(start);
  return m;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(std::size_t n,
                                                                            double split,
                                                                            std::uint64_t seed)
{
  if (n < 2) {
    throw InsufficientData("a calibration/validation split needs at least two trajectories");
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = i;
  }
  // Fisher-Yates with our own index draw; std::shuffle is not portable across libraries.
  std::mt19937_64 rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(order[i], order[uniform_index(rng, i + 1)]);
  }
  const auto n_cal = static_cast<std::size_t>(
    std::clamp<long long>(std::llround(split * static_cast<double>(n)), 1, static_cast<long long>(n) - 1));
  std::vector<std::size_t> cal(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_cal));
  std::vector<std::size_t> val(order.begin() + static_cast<std::ptrdiff_t>(n_cal), order.end());
  std::sort(cal.begin(), cal.end());
  std::sort(val.begin(), val.end());
  return {cal, val};
}

CalibrationRun run_calibrate(const CalibrateOptions & options, const io::ParamBundle & params)
{
  const std::vector<fs::path> files = list_trajectories(options.dir);
  std::vector<TrajectoryRecord> records;
  for (const fs::path & f : files) {
    TrajectoryRecord r = io::read_trajectory_csv(options.use_enhanced ? enhanced_sibling(f) : f);
    if (r.category == InteractionCategory::LightStop) {
      records.push_back(std::move(r));
    }
  }
  if (records.size() < 2) {
    throw InsufficientData("calibration needs at least two LightStop trajectories, found " +
                           std::to_string(records.size()));
  }

  idm::CalibrationSpec spec = params.calibration;
  if (options.seed) {
    spec.seed = *options.seed;
  }
  const auto [cal_idx, val_idx] = split_indices(records.size(), spec.split, synth::mix_seed(spec.seed));
  std::vector<TrajectoryRecord> cal;
  std::vector<TrajectoryRecord> val;
  CalibrationRun run;
  for (std::size_t i : cal_idx) {
    cal.push_back(records[i]);
    run.calibration_ids.push_back(records[i].segment_id);
  }
  for (std::size_t i : val_idx) {
    val.push_back(records[i]);
    run.validation_ids.push_back(records[i].segment_id);
  }
  run.result = idm::calibrate(cal, val, spec, options.jobs);

  const idm::IdmParams & b = run.result.best;
  ordered_json j;
  j["source"] = options.dir.generic_string();
  j["trajectories"] = options.use_enhanced ? "enhanced" : "raw";
  j["seed"] = spec.seed;
  j["n_samples"] = spec.n_samples;
  j["objective"] = std::string(idm::to_string(spec.objective));
  j["exclude_dwell"] = spec.exclude_dwell;
  j["best"] = {{"v0", b.v0}, {"T", b.T}, {"a_max", b.a_max}, {"b", b.b}, {"s0", b.s0}, {"delta", b.delta}};
  j["best_index"] = run.result.best_index;
  j["samples_used"] = run.result.samples_used;
  j["rmse_calibration"] = run.result.rmse_calibration;
  j["rmse_validation"] =
    run.result.rmse_validation ? ordered_json(*run.result.rmse_validation) : ordered_json(nullptr);
  j["calibration_ids"] = run.calibration_ids;
  j["validation_ids"] = run.validation_ids;
  run.report = j.dump(2) + "\n";

  const fs::path out = options.out.value_or(options.dir / "calibration");
  make_dirs(out / "comparison");
  write_text(out / "calibration_report.json", run.report);
  for (const auto & r : cal) {
    write_text(out / "comparison" / (r.segment_id + ".csv"), comparison_csv(r, b, "calibration"));
  }
  for (const auto & r : val) {
    write_text(out / "comparison" / (r.segment_id + ".csv"), comparison_csv(r, b, "validation"));
  }
  return run;
}

std::vector<synth::ScenarioSpec> parse_scenario_specs(const std::string & text, const std::string & source)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error & e) {
    throw ParseError(source + ": " + e.what());
  }
  if (!doc.is_array()) {
    throw ParseError(source + ": expected an array of scenario objects");
  }
  std::vector<synth::ScenarioSpec> specs;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto & e = doc[i];
    const std::string where = source + "[" + std::to_string(i) + "]";
    if (!e.is_object() || !e.contains("category") || !e["category"].is_string()) {
      throw ParseError(where + ": each scenario needs a string 'category'");
    }
    const auto cat = category_from_string(e["category"].get<std::string>());
    if (!cat) {
      throw InfeasibleSpec(where + ": unknown category '" + e["category"].get<std::string>() + "'");
    }
    try {
      const std::uint64_t seed = e.value("seed", static_cast<std::uint64_t>(i));
      synth::ScenarioSpec s = synth::sample_spec(*cat, seed);
      s.approach_speed = e.value("approach_speed", s.approach_speed);
      s.intersection_scale = e.value("intersection_scale", s.intersection_scale);
      s.noise_sigma_speed = e.value("noise_sigma_speed", 0.0);
      s.noise_sigma_pos = e.value("noise_sigma_pos", 0.0);
      specs.push_back(s);
    } catch (const nlohmann::json::exception & ex) {
      throw ParseError(where + ": " + ex.what());
    }
  }
  return specs;
}

std::size_t run_synth(const std::vector<synth::ScenarioSpec> & specs, const fs::path & out, unsigned jobs)
{
  std::vector<synth::LabeledSegment> scenes(specs.size());
  parallel_for(specs.size(), jobs, [&](std::size_t i) { scenes[i] = synth::generate(specs[i]); });
  std::set<std::string> ids;
  for (const auto & s : scenes) {
    if (!ids.insert(s.segment.id).second) {
      throw InfeasibleSpec("two scenarios produce the same segment id '" + s.segment.id + "'");
    }
  }
  make_dirs(out);
  parallel_for(scenes.size(), jobs, [&](std::size_t i) {
    io::write_segments(out / (scenes[i].segment.id + ".json"), std::span(&scenes[i].segment, 1));
  });
  std::ostringstream labels;
  labels << "segment_id,category\n";
  for (const auto & s : scenes) {
    labels << s.segment.id << ',' << to_string(s.label) << '\n';
  }
  write_text(out / "labels.csv", labels.str());
  return scenes.size();
}

}  // namespace tim::pipeline
