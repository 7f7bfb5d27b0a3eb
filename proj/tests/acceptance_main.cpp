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

// Acceptance runner: one PASS/FAIL line per criterion.
//
//   curres_acceptance [suite] [--json path]

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "curres/acceptance.hpp"
#include "curres/error.hpp"

int main(int argc, char** argv) {
  std::string suite = "all";
  std::string json_path;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--json") == 0 && i + 1 < argc) {
      json_path = argv[++i];
    } else {
      suite = argv[i];
    }
  }
  std::vector<curres::CriterionResult> results;
  try {
    results = curres::run_criteria(suite);
  } catch (const curres::Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] criterion %2d  %-28s %8.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, r.detail.c_str());
    failed += r.passed ? 0 : 1;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  if (!json_path.empty()) std::ofstream(json_path) << curres::acceptance_json(suite, results) << "\n";
  return failed == 0 ? 0 : 1;
}
