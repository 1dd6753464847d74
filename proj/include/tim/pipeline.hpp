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

// Batch stages behind the `tim` command: extract, enhance, assess, calibrate
// and synth. Every output is a pure function of inputs, parameters and seeds.

#ifndef TIM_PIPELINE_HPP_
#define TIM_PIPELINE_HPP_

#include "tim/idm.hpp"
#include "tim/io/config.hpp"
#include "tim/io/segment_json.hpp"
#include "tim/quality.hpp"
#include "tim/synthgen.hpp"
#include "tim/types.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tim::pipeline
{

namespace fs = std::filesystem;

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitIo = 2,
  kExitNoData = 3,
};

/// Maps a library exception to its exit code.
int exit_code_for(const std::exception & e);

/// One row of the per-category summary. Metrics are means over the
/// category's trajectories.
struct CategorySummary
{
  std::size_t count{0};
  double distance_km{0.0};
  double duration_h{0.0};
  quality::QualityReport before;
  std::optional<quality::QualityReport> after;
};

struct RunManifest
{
  std::string command;
  std::vector<std::string> inputs;
  std::optional<std::string> config_path;
  std::size_t segments_read{0};
  std::vector<io::Diagnostic> diagnostics;
  std::array<CategorySummary, kAllCategories.size()> categories{};
  double wall_seconds{0.0};  // reported, never written

  std::size_t total() const;
  CategorySummary & at(InteractionCategory c) { return categories[static_cast<std::size_t>(c)]; }
  const CategorySummary & at(InteractionCategory c) const
  {
    return categories[static_cast<std::size_t>(c)];
  }
};

/// Manifest as JSON (no timing, so reruns are byte-identical).
std::string format_manifest(const RunManifest & m);
/// Summary table as CSV and as aligned text.
std::string format_summary_csv(const RunManifest & m);
std::string format_summary_text(const RunManifest & m);

/// Chord length of the trajectory in metres.
double travelled_distance(const TrajectoryRecord & record);

struct ExtractOptions
{
  std::vector<fs::path> inputs;
  fs::path out;
  unsigned jobs{0};
  bool strict{false};
  std::optional<std::string> config_path;  // for the manifest only
};

/// Classifies and organizes every readable segment; writes
/// <out>/<Category>/<id>.csv for each non-None segment plus manifest.json,
/// summary.csv and summary.txt. Throws InsufficientData when no segment is valid.
RunManifest run_extract(const ExtractOptions & options, const io::ParamBundle & params);

/// Organized trajectory files below `dir`: files directly in it and in its
/// per-category subdirectories, excluding `_enhanced` siblings, in path order.
std::vector<fs::path> list_trajectories(const fs::path & dir);

/// `<stem>_enhanced.csv` next to `raw`.
fs::path enhanced_sibling(const fs::path & raw);

struct StageOptions
{
  fs::path dir;
  std::optional<fs::path> out;  // default `dir`
  unsigned jobs{0};
  std::optional<std::string> config_path;
};

/// Denoises every trajectory below `dir` into its `_enhanced` sibling and
/// writes enhance_manifest.json / enhance_summary.{csv,txt} into `out`.
/// Throws IoError when `dir` is unreadable.
RunManifest run_enhance(const StageOptions & options, const io::ParamBundle & params);

/// Before/after table from existing files (after-columns only where an
/// `_enhanced` sibling exists); writes assess_summary.{csv,txt} only when
/// `out` is set.
RunManifest run_assess(const StageOptions & options, const io::ParamBundle & params);

struct CalibrateOptions
{
  fs::path dir;
  std::optional<fs::path> out;  // default <dir>/calibration
  std::optional<std::uint64_t> seed;  // overrides calibration.seed
  bool use_enhanced{false};
  unsigned jobs{0};
};

struct CalibrationRun
{
  idm::CalibrationResult result;
  std::vector<std::string> calibration_ids;
  std::vector<std::string> validation_ids;
  std::string report;  // calibration_report.json contents
};

/// Seeded split of `n` items: shuffled indices, the first `n_cal` calibrate.
/// n_cal = round(split * n) clamped to [1, n - 1].
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(std::size_t n,
                                                                            double split,
                                                                            std::uint64_t seed);

/// Calibrates the IDM on the LightStop trajectories below `dir`; writes
/// calibration_report.json and comparison/<id>.csv (observed against
/// simulated speed). Throws InsufficientData for fewer than two trajectories.
CalibrationRun run_calibrate(const CalibrateOptions & options, const io::ParamBundle & params);

/// Specs from a JSON array of objects with `category` and optional
/// approach_speed, intersection_scale, noise_sigma_speed, noise_sigma_pos,
/// seed. Missing speed and scale are drawn with sample_spec.
std::vector<synth::ScenarioSpec> parse_scenario_specs(const std::string & text,
                                                      const std::string & source);

/// Writes <out>/<id>.json per spec and labels.csv; returns the file count.
/// Throws InfeasibleSpec before writing anything.
std::size_t run_synth(const std::vector<synth::ScenarioSpec> & specs, const fs::path & out,
                      unsigned jobs);

}  // namespace tim::pipeline

#endif  // TIM_PIPELINE_HPP_
