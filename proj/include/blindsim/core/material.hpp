/*
Copyright 2026 The blindsim Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

     http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "blindsim/core/bands.hpp"
#include "blindsim/core/decibel.hpp"
#include "blindsim/core/errors.hpp"

namespace blindsim {

/// Surface material: per-band absorption coefficient, plus an optional
/// per-band transmission loss for materials that can act as partitions.
struct Material {
  std::string name;
  BandSpectrum alpha{};
  std::optional<BandSpectrum> tl_db{};

  bool has_tl() const { return tl_db.has_value(); }

  /// Intensity transmission coefficient in one band; 0 without TL data.
  double tau(std::size_t band) const {
    return tl_db ? transmission_coefficient((*tl_db)[band]) : 0.0;
  }
};

/// Named material registry. Adding a material validates it; absorption
/// coefficients above 1 (as published for some perforated absorbers) are
/// clamped to 1 and the clamp is recorded as a warning.
class MaterialDb {
 public:
  void add(Material m) {
    if (m.name.empty()) throw input_error("material: empty name");
    if (!all_finite(m.alpha))
      throw input_error("material '" + m.name + "': alpha must be finite");
    for (std::size_t b = 0; b < kNumBands; ++b) {
      if (m.alpha[b] < 0.0)
        throw input_error("material '" + m.name + "': alpha[" +
                          band_label(b) + " Hz] is negative");
      if (m.alpha[b] > 1.0) {
        std::ostringstream os;
        os << "material '" << m.name << "': alpha[" << band_label(b)
           << " Hz] = " << m.alpha[b] << " clamped to 1.0";
        warnings_.push_back(os.str());
        m.alpha[b] = 1.0;
      }
    }
    if (m.tl_db) {
      for (std::size_t b = 0; b < kNumBands; ++b) {
        const double tl = (*m.tl_db)[b];
        if (std::isnan(tl) || tl < 0.0)
          throw input_error("material '" + m.name + "': tl_db[" +
                            band_label(b) + " Hz] must be >= 0");
        if (m.alpha[b] + m.tau(b) > 1.0 + 1e-12)
          throw input_error("material '" + m.name + "': alpha + tau > 1 at " +
                            band_label(b) + " Hz");
      }
    }
    by_name_[m.name] = std::move(m);
  }

  bool contains(const std::string& name) const {
    return by_name_.count(name) != 0;
  }

  const Material& get(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) {
      std::ostringstream os;
      os << "unknown material '" << name << "'; available:";
      for (const auto& [n, _] : by_name_) os << " " << n;
      throw input_error(os.str());
    }
    return it->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(by_name_.size());
    for (const auto& [n, _] : by_name_) out.push_back(n);
    return out;
  }

  std::size_t size() const { return by_name_.size(); }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Built-in database. Octave-band absorption and transmission-loss data
  /// for the constructions the bundled scenarios are made of; band order is
  /// 125/250/500/1000/2000/4000 Hz throughout.
  static MaterialDb builtin() {
    MaterialDb db;
    auto mat = [](const char* name, std::array<double, 6> a) {
      Material m;
      m.name = name;
      m.alpha.v = a;
      return m;
    };
    auto mat_tl = [](const char* name, std::array<double, 6> a,
                     std::array<double, 6> tl) {
      Material m;
      m.name = name;
      m.alpha.v = a;
      m.tl_db = BandSpectrum{tl};
      return m;
    };

    // Interior finishes and outdoor terrain.
    db.add(mat("linoleum_concrete", {0.02, 0.03, 0.03, 0.03, 0.03, 0.02}));
    db.add(mat("wooden_bench_person", {0.57, 0.61, 0.75, 0.86, 0.91, 0.86}));
    db.add(mat("chipboard_mineral_wool", {0.12, 0.04, 0.06, 0.05, 0.05, 0.05}));
    db.add(mat("soil_vegetation", {0.39, 0.68, 0.78, 0.94, 0.95, 0.83}));

    // Wall/ceiling linings.
    db.add(mat("unperforated_wood", {0.28, 0.22, 0.17, 0.09, 0.10, 0.11}));
    db.add(mat("perforated_wood", {0.67, 1.09, 0.98, 0.93, 0.98, 0.96}));

    // Glazing and doors: absorptive on both faces and transmitting.
    db.add(mat_tl("ordinary_glass", {0.35, 0.25, 0.18, 0.12, 0.07, 0.04},
                  {20.0, 21.0, 25.0, 26.0, 31.0, 30.0}));
    db.add(mat_tl("heavy_glass", {0.18, 0.06, 0.04, 0.03, 0.02, 0.02},
                  {29.0, 34.0, 35.0, 35.0, 34.0, 45.0}));
    db.add(mat_tl("hollow_core_door", {0.30, 0.25, 0.20, 0.17, 0.15, 0.10},
                  {14.0, 15.0, 17.0, 18.0, 22.0, 29.0}));
    db.add(mat_tl("solid_timber_door", {0.14, 0.10, 0.06, 0.08, 0.10, 0.10},
                  {29.0, 29.0, 31.0, 29.0, 30.0, 40.0}));

    // Wall core constructions: referenced for their transmission loss; the
    // face absorption comes from the linings/cladding, so alpha stays 0 here.
    db.add(mat_tl("hardboard", {0, 0, 0, 0, 0, 0},
                  {7.0, 12.5, 19.0, 23.5, 29.0, 36.5}));
    db.add(mat_tl("single_stud_resilient_channel_wall", {0, 0, 0, 0, 0, 0},
                  {30.0, 43.0, 49.0, 49.0, 52.0, 56.0}));
    return db;
  }

  /// JSON document shape: { "<name>": {"alpha": [6], "tl_db": [6] | null} }
  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, m] : by_name_) {
      nlohmann::json e;
      e["alpha"] = m.alpha.v;
      if (m.tl_db)
        e["tl_db"] = m.tl_db->v;
      else
        e["tl_db"] = nullptr;
      j[name] = e;
    }
    return j;
  }

  static MaterialDb from_json(const nlohmann::json& j) {
    MaterialDb db;
    if (!j.is_object()) throw input_error("materials: expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      Material m;
      m.name = it.key();
      const auto& e = it.value();
      if (!e.contains("alpha"))
        throw input_error("material '" + m.name + "': missing alpha");
      m.alpha.v = e.at("alpha").get<std::array<double, kNumBands>>();
      if (e.contains("tl_db") && !e.at("tl_db").is_null()) {
        BandSpectrum tl;
        tl.v = e.at("tl_db").get<std::array<double, kNumBands>>();
        m.tl_db = tl;
      }
      db.add(std::move(m));
    }
    return db;
  }

 private:
  std::map<std::string, Material> by_name_;
  std::vector<std::string> warnings_;
};

}  // namespace blindsim
