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

// tim: batch front end. extract -> enhance -> assess -> calibrate, plus synth.

#include "tim/error.hpp"
#include "tim/io/config.hpp"
#include "tim/parallel.hpp"
#include "tim/pipeline.hpp"
#include "tim/synthgen.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace
{

namespace fs = std::filesystem;
namespace pl = tim::pipeline;

struct Common
{
  std::optional<std::string> config;
  unsigned jobs{0};
};

void add_common(CLI::App & cmd, Common & c)
{
  cmd.add_option("--config", c.config, "parameter file (TIM_CONFIG overrides)");
  cmd.add_option("--jobs,-j", c.jobs, "worker threads, 0 = all cores")->capture_default_str();
}

struct Loaded
{
  tim::io::ParamBundle params;
  std::optional<std::string> path;
};

Loaded load(const Common & c)
{
  std::optional<fs::path> requested;
  if (c.config) {
    requested = fs::path(*c.config);
  }
  const auto resolved = tim::io::resolve_config_path(requested);
  Loaded out;
  out.params = tim::io::load_params(resolved);
  if (resolved) {
    out.path = resolved->generic_string();
  }
  return out;
}

void report(const pl::RunManifest & m)
{
  for (const auto & d : m.diagnostics) {
    std::cerr << "tim: skipped " << tim::io::describe(d) << '\n';
  }
  std::cout << pl::format_summary_text(m);
  std::cerr << "tim: " << m.command << " finished in " << m.wall_seconds << " s\n";
}

std::string read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw tim::IoError("cannot read " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Traffic-light and stop-sign interaction trajectories: extract, assess, enhance, calibrate"};
  app.require_subcommand(1);

  Common extract_c;
  std::vector<std::string> extract_inputs;
  std::string extract_out;
  bool extract_strict = false;
  auto * extract = app.add_subcommand("extract", "classify segments and write organized trajectories");
  extract->add_option("inputs", extract_inputs, "segment files or directories")->required();
  extract->add_option("--out,-o", extract_out, "output directory")->required();
  extract->add_flag("--strict", extract_strict, "fail on the first invalid segment");
  add_common(*extract, extract_c);

  Common enhance_c;
  std::string enhance_dir;
  std::optional<std::string> enhance_out;
  auto * enhance = app.add_subcommand("enhance", "denoise trajectories into _enhanced siblings");
  enhance->add_option("dir", enhance_dir, "extract output directory")->required();
  enhance->add_option("--out,-o", enhance_out, "where the manifest and summary go (default: dir)");
  add_common(*enhance, enhance_c);

  Common assess_c;
  std::string assess_dir;
  std::optional<std::string> assess_out;
  auto * assess = app.add_subcommand("assess", "quality metrics before and after enhancement");
  assess->add_option("dir", assess_dir, "extract output directory")->required();
  assess->add_option("--out,-o", assess_out, "also write assess_summary.{csv,txt} here");
  add_common(*assess, assess_c);

  Common calib_c;
  std::string calib_dir;
  std::optional<std::string> calib_out;
  std::optional<std::uint64_t> calib_seed;
  bool calib_enhanced = false;
  auto * calibrate = app.add_subcommand("calibrate", "Monte-Carlo IDM calibration on LightStop trajectories");
  calibrate->add_option("dir", calib_dir, "extract output directory")->required();
  calibrate->add_option("--out,-o", calib_out, "report directory (default: dir/calibration)");
  calibrate->add_option("--seed", calib_seed, "overrides calibration.seed");
  calibrate->add_flag("--enhanced", calib_enhanced, "calibrate on the _enhanced trajectories");
  add_common(*calibrate, calib_c);

  Common synth_c;
  std::optional<std::string> synth_spec;
  std::string synth_out;
  std::size_t per_category = 25;
  std::uint64_t synth_seed = 1;
  bool include_none = false;
  auto * synth = app.add_subcommand("synth", "generate labelled synthetic segments");
  synth->add_option("spec", synth_spec, "JSON array of scenario specs (default: a balanced batch)");
  synth->add_option("--out,-o", synth_out, "output directory")->required();
  synth->add_option("--per-category", per_category, "balanced batch size per category")->capture_default_str();
  synth->add_option("--seed", synth_seed, "balanced batch seed")->capture_default_str();
  synth->add_flag("--include-none", include_none, "add negative (None) scenes");
  add_common(*synth, synth_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : pl::kExitConfig;
  }

  try {
    if (extract->parsed()) {
      const Loaded cfg = load(extract_c);
      pl::ExtractOptions o;
      o.inputs.assign(extract_inputs.begin(), extract_inputs.end());
      o.out = extract_out;
      o.jobs = extract_c.jobs;
      o.strict = extract_strict;
      o.config_path = cfg.path;
      report(pl::run_extract(o, cfg.params));
    } else if (enhance->parsed() || assess->parsed()) {
      const bool is_enhance = enhance->parsed();
      const Common & c = is_enhance ? enhance_c : assess_c;
      const Loaded cfg = load(c);
      pl::StageOptions o;
      o.dir = is_enhance ? enhance_dir : assess_dir;
      const auto & out = is_enhance ? enhance_out : assess_out;
      if (out) {
        o.out = fs::path(*out);
      }
      o.jobs = c.jobs;
      o.config_path = cfg.path;
      report(is_enhance ? pl::run_enhance(o, cfg.params) : pl::run_assess(o, cfg.params));
    } else if (calibrate->parsed()) {
      const Loaded cfg = load(calib_c);
      pl::CalibrateOptions o;
      o.dir = calib_dir;
      if (calib_out) {
        o.out = fs::path(*calib_out);
      }
      o.seed = calib_seed;
      o.use_enhanced = calib_enhanced;
      o.jobs = calib_c.jobs;
      std::cout << pl::run_calibrate(o, cfg.params).report;
    } else if (synth->parsed()) {
      std::vector<tim::synth::ScenarioSpec> specs;
      if (synth_spec) {
        specs = pl::parse_scenario_specs(read_file(*synth_spec), *synth_spec);
      } else {
        specs = tim::synth::balanced_specs(per_category, synth_seed, include_none);
      }
      const std::size_t n = pl::run_synth(specs, synth_out, synth_c.jobs);
      std::cout << "wrote " << n << " segments to " << synth_out << '\n';
    }
  } catch (const std::exception & e) {
    std::cerr << "tim: error: " << e.what() << '\n';
    return pl::exit_code_for(e);
  }
  return pl::kExitOk;
}
