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

#include "sumprod/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace sumprod {

ordered_json set_to_json(const RingSet& s) {
    const auto& p = s.ring()->params();
    ordered_json j;
    j["ring"] = {p.p, p.f, p.e, s.level()};
    auto& elems = j["elements"] = ordered_json::array();
    for (auto idx : s.members()) elems.push_back(std::to_string(idx));
    return j;
}

RingSet set_from_json(const ordered_json& j, std::uint64_t enum_cap) {
    if (!j.contains("ring") || !j.contains("elements"))
        throw std::invalid_argument("set file: missing ring or elements");
    auto r = j.at("ring");
    if (!r.is_array() || r.size() != 4) throw std::invalid_argument("set file: ring must be [p,f,e,n]");
    RingParams params{r[0].get<std::int64_t>(), r[1].get<int>(), r[2].get<int>(), r[3].get<int>()};
    RingPtr ring = make_ring(params, enum_cap);
    RingSet s(ring, params.n);
    for (const auto& el : j.at("elements")) {
        std::uint64_t idx =
            el.is_string() ? std::stoull(el.get<std::string>()) : el.get<std::uint64_t>();
        if (idx >= ring->size()) throw std::invalid_argument("set file: element index out of range");
        s.insert((std::uint32_t)idx);
    }
    return s;
}

void write_set_file(const std::string& path, const RingSet& s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open set file for writing: " + path);
    out << set_to_json(s).dump() << "\n";
}

RingSet read_set_file(const std::string& path, std::uint64_t enum_cap) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open set file: " + path);
    ordered_json j;
    in >> j;
    return set_from_json(j, enum_cap);
}

ordered_json certificate_to_json(const BGCertificate& cert) {
    ordered_json j;
    auto& scalars = j["scalars"] = ordered_json::array();
    for (auto s : cert.scalars) scalars.push_back(std::to_string(s));
    j["C"] = cert.c_fold;
    j["eps"] = cert.eps.to_string();
    j["verified"] = cert.verified;
    return j;
}

BGCertificate certificate_from_json(const ordered_json& j) {
    BGCertificate cert;
    for (const auto& s : j.at("scalars"))
        cert.scalars.push_back(
            (std::uint32_t)(s.is_string() ? std::stoul(s.get<std::string>()) : s.get<std::uint32_t>()));
    cert.c_fold = j.at("C").get<int>();
    cert.eps = Rational::parse(j.at("eps").get<std::string>());
    cert.verified = j.value("verified", false);
    return cert;
}

ordered_json witness_to_json(const SegmentWitness& w) {
    ordered_json j;
    j["x"] = std::to_string(w.x.index());
    j["N1"] = w.n1;
    j["N2"] = w.n2;
    return j;
}

}  // namespace sumprod
