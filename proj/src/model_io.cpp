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


#include "ibgn/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ibgn/error.hpp"

namespace ibgn {
namespace {

using json = nlohmann::json;

json matrix_to_json(const Matrix<double>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  }
  return rows;
}

Matrix<double> matrix_from_json(const json& rows, std::size_t cols) {
  Matrix<double> m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto values = rows[r].get<std::vector<double>>();
    if (values.size() != cols) {
      throw Error(ErrorCode::kParseError, "matrix row has wrong length");
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = values[c];
  }
  return m;
}

json model_to_json(const ClassModel& m) {
  json phi = json::array();
  for (const auto& [key, probs] : m.phi) {
    phi.push_back({{"from", key.from_action},
                   {"to", key.to_action},
                   {"constraint", to_string(key.constraint)},
                   {"p", probs}});
  }
  json links = json::array();
  for (auto [i, j] : m.structure.links()) links.push_back({i, j});
  return {{"k_star", m.k_star},
          {"ell", m.ell},
          {"alpha", m.alpha},
          {"beta", matrix_to_json(m.beta)},
          {"theta", matrix_to_json(m.theta)},
          {"structure", links},
          {"phi", phi},
          {"size_histogram", m.size_histogram}};
}

ClassModel model_from_json(const json& j, const std::vector<std::string>& vocab) {
  ClassModel m;
  m.k_star = j.at("k_star").get<std::size_t>();
  m.ell = j.at("ell").get<std::size_t>();
  m.alpha = j.at("alpha").get<std::vector<double>>();
  m.beta = matrix_from_json(j.at("beta"), vocab.size());
  m.theta = matrix_from_json(j.at("theta"), vocab.size());
  const auto links = j.at("structure").get<std::vector<std::pair<int, int>>>();
  m.structure = StructureMask::from_links(m.k_star, links);
  for (const json& e : j.at("phi")) {
    PhiKey key{e.at("from").get<ActionId>(), e.at("to").get<ActionId>(),
               parse_relation_set(e.at("constraint").get<std::string>())};
    m.phi.emplace(key, e.at("p").get<std::vector<double>>());
  }
  m.size_histogram = j.at("size_histogram").get<std::vector<std::size_t>>();
  m.action_vocab = vocab;
  validate(m);
  return m;
}

}  // namespace

std::string serialize(const ModelBundle& bundle) {
  json models = json::array();
  for (const ClassModel& m : bundle.models) models.push_back(model_to_json(m));
  const json root = {{"schema_version", bundle.schema_version},
                     {"vocab", bundle.vocab},
                     {"classes", bundle.classes},
                     {"models", models}};
  return root.dump(1) + "\n";
}

ModelBundle parse_bundle(const std::string& text) {
  try {
    const json root = json::parse(text);
    ModelBundle bundle;
    bundle.schema_version = root.at("schema_version").get<int>();
    if (bundle.schema_version != kModelSchemaVersion) {
      throw Error(ErrorCode::kParseError,
                  "unsupported model schema version " +
                      std::to_string(bundle.schema_version));
    }
    bundle.vocab = root.at("vocab").get<std::vector<std::string>>();
    bundle.classes = root.at("classes").get<std::vector<std::string>>();
    for (const json& m : root.at("models")) {
      bundle.models.push_back(model_from_json(m, bundle.vocab));
    }
    if (bundle.models.size() != bundle.classes.size()) {
      throw Error(ErrorCode::kParseError, "model count != class count");
    }
    return bundle;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("model file: ") + e.what());
  }
}

void save_bundle(const std::filesystem::path& path, const ModelBundle& bundle) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << serialize(bundle);
}

ModelBundle load_bundle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_bundle(text.str());
}

}  // namespace ibgn
