// Copyright 2026 The polygamy-lab Authors
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

#include "polygamy/state_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polygamy/errors.hpp"

namespace polygamy {

namespace {

using nlohmann::json;

std::vector<Complex> read_entries(const json& data) {
  if (!data.is_array()) throw ValidationError("\"data\" must be an array");
  std::vector<Complex> out;
  out.reserve(data.size());
  for (const json& z : data) {
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() ||
        !z[1].is_number()) {
      throw ValidationError("each \"data\" entry must be [re, im]");
    }
    out.emplace_back(z[0].get<double>(), z[1].get<double>());
  }
  return out;
}

json write_entries(std::span<const Complex> values) {
  json data = json::array();
  for (const Complex& z : values) data.push_back({z.real(), z.imag()});
  return data;
}

}  // namespace

AnyState parse_state(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("kind") ||
      !doc.contains("data")) {
    throw ValidationError("state file needs \"dims\", \"kind\" and \"data\"");
  }
  std::vector<std::size_t> dims;
  try {
    for (const json& d : doc.at("dims")) {
      if (!d.is_number_integer() || d.get<long long>() < 2) {
        throw ValidationError("\"dims\" entries must be integers >= 2");
      }
      dims.push_back(d.get<std::size_t>());
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad \"dims\": ") + e.what());
  }
  if (dims.empty()) throw ValidationError("\"dims\" is empty");
  SystemLayout layout(std::move(dims));
  std::vector<Complex> entries = read_entries(doc.at("data"));

  const json& kind = doc.at("kind");
  if (kind == "pure") {
    if (entries.size() != layout.total_dim()) {
      throw ValidationError("pure state needs " +
                            std::to_string(layout.total_dim()) + " amplitudes");
    }
    return PureState(std::move(entries), std::move(layout), kStateFileTolerance);
  }
  if (kind == "density") {
    const std::size_t n = layout.total_dim();
    if (entries.size() != n * n) {
      throw ValidationError("density matrix needs " + std::to_string(n * n) +
                            " entries");
    }
    return DensityMatrix(ComplexMatrix(n, n, std::move(entries)),
                         std::move(layout), kStateFileTolerance);
  }
  throw ValidationError("\"kind\" must be \"pure\" or \"density\"");
}

AnyState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open state file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str());
}

std::string dump_state(const PureState& psi) {
  json doc;
  doc["dims"] = psi.layout().dims();
  doc["kind"] = "pure";
  doc["data"] = write_entries(psi.amplitudes());
  return doc.dump();
}

std::string dump_state(const DensityMatrix& rho) {
  json doc;
  doc["dims"] = rho.layout().dims();
  doc["kind"] = "density";
  doc["data"] = write_entries(rho.matrix().entries());
  return doc.dump();
}

DensityMatrix to_density(const AnyState& state) {
  if (const auto* psi = std::get_if<PureState>(&state)) return psi->density();
  return std::get<DensityMatrix>(state);
}

}  // namespace polygamy
