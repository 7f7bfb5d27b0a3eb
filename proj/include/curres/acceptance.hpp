// Copyright 2026 The curres Authors
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

#include <string>
#include <vector>

namespace curres {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// algebra, kernel, barriers, coupling, hydro, duality, longtime, or all.
const std::vector<std::string>& acceptance_suites();

/// Runs the criteria of one suite with fixed seeds. Throws kInvalidArgument
/// for an unknown suite name.
std::vector<CriterionResult> run_criteria(const std::string& suite);

/// JSON verdict {suite, passed, criteria: [...]}.
std::string acceptance_json(const std::string& suite, const std::vector<CriterionResult>& results);
std::string run_acceptance(const std::string& suite);

}  // namespace curres
