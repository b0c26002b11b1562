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

// Release files: a JSON array of {"itemset": [ids...], "noisy_frequency": x}.
// Doubles are written with enough digits to read back bit-identically.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "privbasis/release.hpp"

namespace privbasis::eval {

std::string release_to_json(const Release& r);
Release release_from_json(std::string_view text);

void write_release(const Release& r, const std::filesystem::path& path);
Release read_release(const std::filesystem::path& path);

}  // namespace privbasis::eval
