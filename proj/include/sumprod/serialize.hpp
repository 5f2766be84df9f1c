// Copyright 2026 The sumprod authors
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

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sumprod/procedures.hpp"
#include "sumprod/ring.hpp"
#include "sumprod/set_algebra.hpp"

namespace sumprod {

using ordered_json = nlohmann::ordered_json;

/// Set file: {"ring": [p, f, e, n], "elements": ["0", "5", ...]} with
/// canonical decimal index strings.
ordered_json set_to_json(const RingSet& s);
RingSet set_from_json(const ordered_json& j,
                      std::uint64_t enum_cap = Ring::kDefaultEnumCap);
void write_set_file(const std::string& path, const RingSet& s);
RingSet read_set_file(const std::string& path,
                      std::uint64_t enum_cap = Ring::kDefaultEnumCap);

ordered_json certificate_to_json(const BGCertificate& cert);
BGCertificate certificate_from_json(const ordered_json& j);

ordered_json witness_to_json(const SegmentWitness& w);

}  // namespace sumprod
