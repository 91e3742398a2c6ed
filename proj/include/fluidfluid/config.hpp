#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fluidfluid/flow.hpp"
#include "fluidfluid/mms.hpp"

namespace fluidfluid {

/// Run configuration. Every field has a default so an empty file is valid.
struct RunConfig {
  int nx = 8;
  int ny_half = 4;
  MaterialParams params;
  FlowPreset flow = FlowPreset::Zero;

  // Data for the static solve: "zero" or a manufactured case name.
  std::string solve_data = "zero";

  MmsKind mms_case = MmsKind::Mms1;
  std::vector<int> mms_levels{4, 8, 16, 32};

  double t = 1.0;
  int n = 16;
  bool project_initial = true;
  // Manufactured case whose exact fields are the initial state.
  MmsKind initial = MmsKind::Mms1;
  int snapshots = 0;  // VTK snapshots written during evolve (0 = none)

  std::vector<int> infsup_levels{4, 8, 16};

  std::string output_dir = "out";

  /// Throws ValidationError naming the offending key.
  void validate() const;
};

/// Parses a TOML subset: [section] headers, key = value lines, '#'
/// comments; values are integers, floats, booleans, basic strings and
/// single-line arrays of integers. Unknown sections or keys and type
/// mismatches throw ConfigError naming the key.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace fluidfluid
