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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "blindsim/core/air.hpp"
#include "blindsim/core/bands.hpp"
#include "blindsim/core/decibel.hpp"
#include "blindsim/core/errors.hpp"
#include "blindsim/core/material.hpp"
#include "blindsim/core/source.hpp"
#include "blindsim/geom/geometry.hpp"

using namespace blindsim;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("band layout") {
  CHECK(kNumBands == 6);
  CHECK(kBandCenterHz[0] == 125.0);
  CHECK(kBandCenterHz[5] == 4000.0);
  CHECK(band_label(2) == "500");
}

TEST_CASE("band spectrum arithmetic") {
  BandSpectrum a = BandSpectrum::uniform(2.0);
  BandSpectrum b{{1, 2, 3, 4, 5, 6}};
  CHECK((a + b)[5] == 8.0);
  CHECK((b - a)[0] == -1.0);
  CHECK((0.5 * b)[3] == 2.0);
  CHECK(min_value(b) == 1.0);
  CHECK(max_value(b) == 6.0);
  CHECK(all_finite(b));
  b[1] = kInf;
  CHECK_FALSE(all_finite(b));
}

TEST_CASE("transmission coefficient") {
  CHECK(transmission_coefficient(0.0) == doctest::Approx(1.0));
  CHECK(transmission_coefficient(10.0) == doctest::Approx(0.1));
  CHECK(transmission_coefficient(29.0) == doctest::Approx(1.2589e-3).epsilon(1e-4));
  CHECK_THROWS_AS(transmission_coefficient(-1.0), input_error);
  CHECK_THROWS_AS(transmission_coefficient(std::nan("")), input_error);
}

TEST_CASE("band level summation") {
  BandSpectrum one = BandSpectrum::uniform(-kInf);
  one[0] = 60.0;
  CHECK(band_sum_db(one) == doctest::Approx(60.0));

  BandSpectrum two = one;
  two[1] = 60.0;
  CHECK(band_sum_db(two) == doctest::Approx(63.0103).epsilon(1e-5));

  CHECK(band_sum_db(BandSpectrum::uniform(60.0)) ==
        doctest::Approx(67.7815).epsilon(1e-5));

  CHECK(band_sum_db(BandSpectrum::uniform(-kInf)) == -kInf);
}

TEST_CASE("spl from energy density") {
  AirProperties air;
  const double c2 = air.speed_of_sound * air.speed_of_sound;
  const double w0 = kRefPressureSq / (air.density * c2);

  CHECK(spl_from_energy_density(w0, air) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(spl_from_energy_density(2.0 * w0, air) ==
        doctest::Approx(3.0103).epsilon(1e-5));
  CHECK(spl_from_energy_density(1e-6, air) ==
        doctest::Approx(85.51).epsilon(1e-3));

  // Zero energy clamps to the floor instead of -inf.
  CHECK(spl_from_energy_density(0.0, air) ==
        spl_from_energy_density(kEnergyDensityFloor, air));
  CHECK(std::isfinite(spl_from_energy_density(0.0, air)));

  // Round trip above the floor.
  CHECK(energy_density_from_spl(spl_from_energy_density(1e-6, air), air) ==
        doctest::Approx(1e-6).epsilon(1e-12));
}

TEST_CASE("source power from spl at 1 m") {
  AirProperties air;
  CHECK(source_power_from_spl1m(73.8, air) ==
        doctest::Approx(2.905e-4).epsilon(1e-3));
  CHECK(source_power_from_spl1m(0.0, air) ==
        doctest::Approx(1.211e-11).epsilon(1e-3));
  CHECK(source_power_from_spl1m(70.0, air) ==
        doctest::Approx(10.0 * source_power_from_spl1m(60.0, air)));
  CHECK(source_power_from_spl1m(60.0, air, Radiation::hemispherical) ==
        doctest::Approx(0.5 * source_power_from_spl1m(60.0, air)));

  SourceSpec s;
  s.position = {2.5, 6.45, 1.0};
  s.level_at_1m_db = BandSpectrum::uniform(60.0);
  const BandSpectrum w = s.power_w(air);
  for (std::size_t b = 0; b < kNumBands; ++b)
    CHECK(w[b] == doctest::Approx(source_power_from_spl1m(60.0, air)));
}

TEST_CASE("air validation") {
  AirProperties air;
  CHECK_NOTHROW(air.validate());
  air.density = 0.0;
  CHECK_THROWS_AS(air.validate(), input_error);
  air.density = 1.21;
  air.attenuation[3] = -1e-3;
  CHECK_THROWS_AS(air.validate(), input_error);
}

TEST_CASE("builtin material database") {
  MaterialDb db = MaterialDb::builtin();
  CHECK(db.size() == 12);

  const Material& soil = db.get("soil_vegetation");
  CHECK(soil.alpha[0] == doctest::Approx(0.39));
  CHECK(soil.alpha[3] == doctest::Approx(0.94));
  CHECK_FALSE(soil.has_tl());
  CHECK(soil.tau(0) == 0.0);

  const Material& door = db.get("hollow_core_door");
  REQUIRE(door.has_tl());
  CHECK((*door.tl_db)[0] == doctest::Approx(14.0));
  CHECK(door.tau(0) == doctest::Approx(std::pow(10.0, -1.4)));
  CHECK(door.alpha[0] + door.tau(0) <= 1.0);

  const Material& wall = db.get("single_stud_resilient_channel_wall");
  CHECK((*wall.tl_db)[1] == doctest::Approx(43.0));
  CHECK(wall.alpha[1] == 0.0);

  // Published absorption above 1 is clamped on load and recorded.
  const Material& perf = db.get("perforated_wood");
  CHECK(perf.alpha[1] == 1.0);
  REQUIRE(db.warnings().size() == 1);
  CHECK(db.warnings()[0].find("perforated_wood") != std::string::npos);

  CHECK_THROWS_AS(db.get("granite"), input_error);
  try {
    db.get("granite");
  } catch (const input_error& e) {
    CHECK(std::string(e.what()).find("available:") != std::string::npos);
    CHECK(std::string(e.what()).find("heavy_glass") != std::string::npos);
  }
}

TEST_CASE("material validation") {
  MaterialDb db;
  Material bad;
  bad.name = "leaky";
  bad.alpha = BandSpectrum::uniform(0.95);
  bad.tl_db = BandSpectrum::uniform(10.0);  // tau 0.1, alpha + tau > 1
  CHECK_THROWS_AS(db.add(bad), input_error);

  Material neg;
  neg.name = "neg";
  neg.alpha = BandSpectrum::uniform(-0.1);
  CHECK_THROWS_AS(db.add(neg), input_error);

  Material ok = bad;
  ok.name = "ok";
  ok.alpha = BandSpectrum::uniform(0.85);
  CHECK_NOTHROW(db.add(ok));
  CHECK(db.contains("ok"));
}

TEST_CASE("material json round trip") {
  MaterialDb db = MaterialDb::builtin();
  nlohmann::json j = db.to_json();
  CHECK(j.at("hardboard").at("alpha")[0] == 0.0);
  CHECK(j.at("hardboard").at("tl_db")[1] == 12.5);
  CHECK(j.at("linoleum_concrete").at("tl_db").is_null());

  MaterialDb back = MaterialDb::from_json(j);
  CHECK(back.size() == db.size());
  for (const auto& name : db.names()) {
    CHECK(back.get(name).alpha == db.get(name).alpha);
    CHECK(back.get(name).tl_db == db.get(name).tl_db);
  }

  CHECK_THROWS_AS(MaterialDb::from_json(nlohmann::json::array()), input_error);
}

TEST_CASE("axis box") {
  AxisBox box{{0.5, 6.0, 0.0}, {3.0, 9.0, 2.7}};
  CHECK(box.valid());
  CHECK(box.volume() == doctest::Approx(20.25));
  CHECK(box.surface_area() == doctest::Approx(44.7));
  CHECK(box.contains({1.0, 7.0, 1.0}));
  CHECK_FALSE(box.contains({3.0, 7.0, 1.0}));  // hi edge is exclusive

  AxisBox unit{{0, 0, 0}, {1, 1, 1}};
  CHECK(unit.surface_area() == doctest::Approx(6.0));
  CHECK(4.0 * unit.volume() / unit.surface_area() ==
        doctest::Approx(2.0 / 3.0));

  AxisBox degenerate{{0, 0, 0}, {1, 0, 1}};
  CHECK_FALSE(degenerate.valid());
}
