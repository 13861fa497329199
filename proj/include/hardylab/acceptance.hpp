// Copyright 2026 The hardylab Authors
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

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hardylab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string measured;
  std::string target;
  double seconds = 0.0;
};

struct SuiteOptions {
  bool full = true;  // false: deterministic criteria only
  std::uint64_t seed = 7;
  unsigned threads = 0;
  std::string cli_path;  // hardylab executable for the determinism check
  std::string work_dir;  // scratch space for files; defaults to a temp dir
};

/// One pass/fail line per criterion, e.g. "PASS  7 disk calibration ...".
std::string format_result(const CriterionResult& r);

/// Runs the acceptance criteria in order, reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(
    const SuiteOptions& opts,
    const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace hardylab
