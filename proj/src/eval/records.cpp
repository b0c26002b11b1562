// Copyright 2026 The privbasis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privbasis/eval/records.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "privbasis/error.hpp"

namespace privbasis::eval {

std::string release_to_json(const Release& r) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& x : r) {
    arr.push_back({{"itemset", std::vector<ItemId>(x.itemset.begin(), x.itemset.end())},
                   {"noisy_frequency", x.noisy_frequency}});
  }
  return arr.dump(1) + "\n";
}

Release release_from_json(std::string_view text) {
  Release out;
  try {
    const auto arr = nlohmann::json::parse(text);
    if (!arr.is_array()) throw InvalidArgument("release file must hold a JSON array");
    for (const auto& rec : arr) {
      out.push_back({Itemset(rec.at("itemset").get<std::vector<ItemId>>()), rec.at("noisy_frequency").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed release file: ") + e.what());
  }
  return out;
}

void write_release(const Release& r, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << release_to_json(r);
}

Release read_release(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return release_from_json(ss.str());
}

}  // namespace privbasis::eval
