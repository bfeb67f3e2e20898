// Copyright 2026 The IBGN Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ibgn/generative_model.hpp"

namespace ibgn {

inline constexpr int kModelSchemaVersion = 1;

/// Everything `train` produces: one model per class, sharing a vocabulary.
struct ModelBundle {
  int schema_version = kModelSchemaVersion;
  std::vector<std::string> vocab;
  std::vector<std::string> classes;
  std::vector<ClassModel> models;  // parallel to classes

  bool operator==(const ModelBundle&) const = default;
};

/// JSON text of the bundle. Doubles are written in shortest round-trip
/// form, so parse(serialize(b)) == b bit for bit.
std::string serialize(const ModelBundle& bundle);
ModelBundle parse_bundle(const std::string& text);

void save_bundle(const std::filesystem::path& path, const ModelBundle& bundle);
ModelBundle load_bundle(const std::filesystem::path& path);

}  // namespace ibgn
