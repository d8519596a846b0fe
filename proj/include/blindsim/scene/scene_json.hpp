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

#include <json.hpp>

#include "blindsim/scene/scene.hpp"

namespace blindsim {

namespace detail {

inline nlohmann::json vec3_json(const Vec3& v) {
  return nlohmann::json::array({v.x, v.y, v.z});
}

inline Vec3 vec3_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3)
    throw input_error("expected [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline nlohmann::json box_json(const AxisBox& b) {
  return {{"lo", vec3_json(b.lo)}, {"hi", vec3_json(b.hi)}};
}

inline AxisBox box_from(const nlohmann::json& j) {
  return {vec3_from(j.at("lo")), vec3_from(j.at("hi"))};
}

inline BandSpectrum bands_from(const nlohmann::json& j) {
  BandSpectrum s;
  s.v = j.get<std::array<double, kNumBands>>();
  return s;
}

}  // namespace detail

inline nlohmann::json scene_to_json(const SceneSpec& s) {
  using nlohmann::json;
  json j;
  j["name"] = s.name;
  j["domain"] = detail::box_json(s.domain);
  j["mesh_h"] = s.mesh_h;
  j["ground_material"] = s.ground_material;
  j["outer_boundary_alpha"] = s.outer_boundary_alpha;
  j["air"] = {{"speed_of_sound", s.air.speed_of_sound},
              {"density", s.air.density},
              {"attenuation", s.air.attenuation.v}};
  j["radiation"] =
      s.radiation == Radiation::spherical ? "spherical" : "hemispherical";
  if (s.blind) {
    const BlindSpec& b = *s.blind;
    json jb;
    jb["interior"] = detail::box_json(b.interior);
    jb["wall_material"] = b.wall_material;
    jb["lining_material"] = b.lining_material;
    jb["exterior_material"] = b.exterior_material;
    jb["floor_material"] = b.floor_material;
    jb["furnishing_material"] = b.furnishing_material;
    jb["furnishings"] = json::array();
    for (const auto& f : b.furnishings)
      jb["furnishings"].push_back(detail::box_json(f));
    jb["openings"] = json::array();
    for (const auto& o : b.openings) {
      jb["openings"].push_back({{"kind", o.kind},
                                {"side", wall_side_name(o.side)},
                                {"a", {o.a0, o.a1}},
                                {"b", {o.b0, o.b1}},
                                {"open", o.open},
                                {"material", o.material}});
    }
    j["blind"] = jb;
  } else {
    j["blind"] = nullptr;
  }
  j["sources"] = json::array();
  for (const auto& src : s.sources)
    j["sources"].push_back({{"position", detail::vec3_json(src.position)},
                            {"level_at_1m_db", src.level_at_1m_db.v}});
  j["bnl_db"] = s.bnl_db.v;
  j["receiver"] = {{"start", detail::vec3_json(s.receiver.start)},
                   {"direction", detail::vec3_json(s.receiver.direction)},
                   {"length", s.receiver.length},
                   {"step", s.receiver.step}};
  j["materials"] = s.materials.to_json();
  return j;
}

inline SceneSpec scene_from_json(const nlohmann::json& j) {
  try {
    SceneSpec s;
    s.name = j.value("name", std::string("scene"));
    s.domain = detail::box_from(j.at("domain"));
    s.mesh_h = j.at("mesh_h").get<double>();
    s.ground_material = j.at("ground_material").get<std::string>();
    s.outer_boundary_alpha = j.at("outer_boundary_alpha").get<double>();
    if (j.contains("air")) {
      const auto& ja = j.at("air");
      s.air.speed_of_sound = ja.value("speed_of_sound", 343.0);
      s.air.density = ja.value("density", 1.21);
      if (ja.contains("attenuation"))
        s.air.attenuation = detail::bands_from(ja.at("attenuation"));
    }
    if (j.contains("radiation")) {
      const std::string r = j.at("radiation").get<std::string>();
      if (r == "spherical")
        s.radiation = Radiation::spherical;
      else if (r == "hemispherical")
        s.radiation = Radiation::hemispherical;
      else
        throw input_error("radiation must be spherical or hemispherical");
    }
    if (j.contains("blind") && !j.at("blind").is_null()) {
      const auto& jb = j.at("blind");
      BlindSpec b;
      b.interior = detail::box_from(jb.at("interior"));
      b.wall_material = jb.at("wall_material").get<std::string>();
      b.lining_material = jb.at("lining_material").get<std::string>();
      b.exterior_material = jb.at("exterior_material").get<std::string>();
      b.floor_material = jb.at("floor_material").get<std::string>();
      b.furnishing_material = jb.value("furnishing_material", std::string());
      if (jb.contains("furnishings"))
        for (const auto& jf : jb.at("furnishings"))
          b.furnishings.push_back(detail::box_from(jf));
      if (jb.contains("openings")) {
        for (const auto& jo : jb.at("openings")) {
          Opening o;
          o.kind = jo.value("kind", std::string("window"));
          o.side = wall_side_from_name(jo.at("side").get<std::string>());
          o.a0 = jo.at("a")[0].get<double>();
          o.a1 = jo.at("a")[1].get<double>();
          o.b0 = jo.at("b")[0].get<double>();
          o.b1 = jo.at("b")[1].get<double>();
          o.open = jo.value("open", false);
          o.material = jo.value("material", std::string());
          b.openings.push_back(o);
        }
      }
      s.blind = b;
    }
    for (const auto& js : j.at("sources")) {
      SourceSpec src;
      src.position = detail::vec3_from(js.at("position"));
      src.level_at_1m_db = detail::bands_from(js.at("level_at_1m_db"));
      s.sources.push_back(src);
    }
    s.bnl_db = detail::bands_from(j.at("bnl_db"));
    if (j.contains("receiver")) {
      const auto& jr = j.at("receiver");
      s.receiver.start = detail::vec3_from(jr.at("start"));
      s.receiver.direction = detail::vec3_from(jr.at("direction"));
      s.receiver.length = jr.at("length").get<double>();
      s.receiver.step = jr.at("step").get<double>();
    }
    if (j.contains("materials"))
      s.materials = MaterialDb::from_json(j.at("materials"));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("scene json: ") + e.what());
  }
}

}  // namespace blindsim
