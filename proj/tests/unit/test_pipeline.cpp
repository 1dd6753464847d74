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

#include "tim/error.hpp"
#include "tim/io/segment_json.hpp"
#include "tim/pipeline.hpp"
#include "tim/synthgen.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>

using namespace tim;
using namespace tim::pipeline;
namespace fs = std::filesystem;

namespace
{

struct TempDir
{
  fs::path path;

  TempDir()
  {
    std::random_device rd;
    path = fs::temp_directory_path() / ("tim_test_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir()
  {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

int run_cli(const std::string & args)
{
  const std::string cmd = std::string(TIM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_file(const fs::path & p, const std::string & text)
{
  std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("error exit codes")
{
  CHECK(exit_code_for(InsufficientData("x")) == kExitNoData);
  CHECK(exit_code_for(IoError("x")) == kExitIo);
  CHECK(exit_code_for(SchemaError("x")) == kExitIo);
  CHECK(exit_code_for(ConfigError("k", "x")) == kExitConfig);
  CHECK(exit_code_for(InfeasibleSpec("x")) == kExitConfig);
}

TEST_CASE("split indices")
{
  const auto [cal, val] = split_indices(19, 15.0 / 19.0, 7);
  CHECK(cal.size() == 15);
  CHECK(val.size() == 4);
  std::vector<std::size_t> all = cal;
  all.insert(all.end(), val.begin(), val.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i] == i);
  }
  CHECK(split_indices(19, 15.0 / 19.0, 7) == split_indices(19, 15.0 / 19.0, 7));
  CHECK(split_indices(2, 0.99, 1).first.size() == 1);
  CHECK(split_indices(2, 0.01, 1).first.size() == 1);
}

TEST_CASE("extract conserves counts")
{
  TempDir tmp;
  std::vector<Segment> segs;
  std::array<std::size_t, kAllCategories.size()> expected{};
  for (const auto & spec : synth::balanced_specs(2, 3, true)) {
    const auto scene = synth::generate(spec);
    segs.push_back(scene.segment);
    ++expected[static_cast<std::size_t>(scene.label)];
  }
  Segment dup = segs.front();
  segs.push_back(dup);
  io::write_segments(tmp.path / "in.json", segs);

  ExtractOptions opt;
  opt.inputs = {tmp.path / "in.json"};
  opt.out = tmp.path / "out";
  opt.jobs = 2;
  const RunManifest m = run_extract(opt, io::ParamBundle{});
  CHECK(m.segments_read == segs.size());
  CHECK(m.total() == segs.size() - 1);
  CHECK(m.diagnostics.size() == 1);
  for (std::size_t c = 0; c < kAllCategories.size(); ++c) {
    CHECK(m.categories[c].count == expected[c]);
  }
  CHECK(list_trajectories(opt.out).size() == segs.size() - 1 - expected.back());
  CHECK(fs::exists(opt.out / "manifest.json"));
  CHECK(fs::exists(opt.out / "summary.csv"));

  opt.strict = true;
  CHECK_THROWS_AS(run_extract(opt, io::ParamBundle{}), SchemaError);
}

TEST_CASE("enhance writes siblings next to the raw files")
{
  TempDir tmp;
  std::vector<Segment> segs;
  for (const auto & spec : synth::balanced_specs(1, 4)) {
    segs.push_back(synth::generate(spec).segment);
  }
  io::write_segments(tmp.path / "in.json", segs);
  ExtractOptions opt;
  opt.inputs = {tmp.path / "in.json"};
  opt.out = tmp.path / "out";
  const RunManifest ex = run_extract(opt, io::ParamBundle{});
  StageOptions st;
  st.dir = opt.out;
  const RunManifest m = run_enhance(st, io::ParamBundle{});
  CHECK(m.total() == 8);
  for (const auto & raw : list_trajectories(opt.out)) {
    CHECK(fs::exists(enhanced_sibling(raw)));
  }
  const RunManifest a = run_assess(st, io::ParamBundle{});
  CHECK(a.at(InteractionCategory::LightStop).after.has_value());
  // extract measures what its CSV files hold, so the before columns agree
  for (InteractionCategory c : kAllCategories) {
    CHECK(a.at(c).before.anomaly_jerk_pct == ex.at(c).before.anomaly_jerk_pct);
    CHECK(a.at(c).before.anomaly_inversion_pct == ex.at(c).before.anomaly_inversion_pct);
  }
}

TEST_CASE("CLI exit codes")
{
  TempDir tmp;
  fs::create_directories(tmp.path / "empty");
  CHECK(run_cli("extract " + (tmp.path / "empty").string() + " --out " + (tmp.path / "o1").string()) == 3);
  CHECK(run_cli("extract /nonexistent/dir --out " + (tmp.path / "o2").string()) == 2);

  write_file(tmp.path / "bad.ini", "[light]\neta_left = 0.05\n");
  CHECK(run_cli("extract " + (tmp.path / "empty").string() + " --out " + (tmp.path / "o3").string() +
                " --config " + (tmp.path / "bad.ini").string()) == 1);

  write_file(tmp.path / "one.json", R"([{"category": "LightStop", "seed": 1}])");
  CHECK(run_cli("synth " + (tmp.path / "one.json").string() + " --out " + (tmp.path / "scenes").string()) == 0);
  CHECK(run_cli("extract " + (tmp.path / "scenes").string() + " --out " + (tmp.path / "org").string()) == 0);
  CHECK(run_cli("calibrate " + (tmp.path / "org").string()) == 3);

  write_file(tmp.path / "fast.json", R"([{"category": "LightStop", "approach_speed": 90}])");
  CHECK(run_cli("synth " + (tmp.path / "fast.json").string() + " --out " + (tmp.path / "s2").string()) == 1);
  CHECK(run_cli("frobnicate") == 1);
}
