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

#include "curres/io.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "curres/error.hpp"
#include "json.hpp"

namespace curres {

std::string profile_to_json(const MacroProfile& u) {
  nlohmann::json j;
  j["atom_mass"] = u.atom_mass();
  j["cell_width"] = u.cell_width();
  j["densities"] = std::vector<double>(u.density().begin(), u.density().end());
  return j.dump();
}

MacroProfile profile_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("profile JSON does not parse: ") + e.what());
  }
  if (!j.is_object() || !j.contains("densities") || !j["densities"].is_array()) {
    fail(ErrorCode::kInvalidArgument, "profile JSON needs a \"densities\" array");
  }
  std::vector<double> dens;
  try {
    dens = j["densities"].get<std::vector<double>>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::kInvalidArgument, "profile densities must be numbers");
  }
  require(!dens.empty(), ErrorCode::kInvalidArgument, "profile has no cells");
  const double atom = j.value("atom_mass", 0.0);
  if (j.contains("cell_width")) {
    const double h = j["cell_width"].get<double>();
    require(std::abs(h * static_cast<double>(dens.size()) - 1.0) < 1e-9,
            ErrorCode::kInvalidArgument, "cell_width times the number of cells must be 1");
  }
  return MacroProfile(atom, std::move(dens));
}

std::string profile_to_csv(const MacroProfile& u) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "# atom_mass=" << u.atom_mass() << "\n";
  out << "r_left,density\n";
  for (std::size_t k = 0; k < u.cells(); ++k) {
    out << static_cast<double>(k) * u.cell_width() << "," << u.density()[k] << "\n";
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path);
  out << content;
  if (!out) fail(ErrorCode::kIo, "write failed for " + path);
}

MacroProfile load_profile(const std::string& path) {
  return profile_from_json(read_text_file(path));
}

void save_profile(const std::string& path, const MacroProfile& u) {
  write_text_file(path, profile_to_json(u));
}

}  // namespace curres
