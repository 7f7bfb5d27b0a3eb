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

#include "curres/profile.hpp"

namespace curres {

/// {"atom_mass": c, "cell_width": h, "densities": [...]}
std::string profile_to_json(const MacroProfile& u);
MacroProfile profile_from_json(const std::string& text);

/// Columns r_left, density; the atom is not representable and is written as
/// a comment line.
std::string profile_to_csv(const MacroProfile& u);

std::string read_text_file(const std::string& path);
/// Creates parent directories as needed.
void write_text_file(const std::string& path, const std::string& content);

MacroProfile load_profile(const std::string& path);
void save_profile(const std::string& path, const MacroProfile& u);

}  // namespace curres
