// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <cmath>
#include <limits>

#include "fixtures.hpp"
#include "tornado/core.hpp"
#include "tornado/errors.hpp"

using namespace tornado;

namespace {

GridSnapshot constant_snapshot() {
    GridSnapshot s;
    s.region_id = "r35_-100";
    s.date = make_date(2010, 5, 1);
    for (const auto& d : variable_schema()) {
        s.layer(d.id) = Layer::grid(0.0);
    }
    s.layer(Variable::temperature) = Layer::grid(288.0);
    return s;
}

} // namespace

TEST_CASE("schema order and lookup") {
    const auto schema = variable_schema();
    REQUIRE(schema.size() == 7);
    CHECK(schema[0].key == "temperature");
    CHECK(schema[6].key == "cloud_cover");
    CHECK(describe(Variable::cloud_cover).upper == 1.0);
    CHECK(describe(Variable::wind_u).signed_component);
    CHECK(variable_from_key("column_rain_water") == Variable::column_rain_water);
    CHECK_FALSE(variable_from_key("humidity").has_value());
}

TEST_CASE("dates parse strictly and round-trip") {
    CHECK(parse_date("2017-03-01") == make_date(2017, 3, 1));
    CHECK_FALSE(parse_date("2017-02-30").has_value());
    CHECK_FALSE(parse_date("2017-3-01").has_value());
    CHECK_FALSE(parse_date("2017-03-01 ").has_value());
    CHECK_FALSE(parse_date("+017-03-01").has_value());
    CHECK(format_date(make_date(1990, 1, 9)) == "1990-01-09");
    CHECK(year_of(make_date(2016, 12, 31)) == 2016);
    CHECK(format_date(make_date(2016, 2, 28) + std::chrono::days(1)) == "2016-02-29");
}

TEST_CASE("labels") {
    CHECK(to_string(Label::tornado) == "tornado");
    CHECK(label_from_string("null_event") == Label::null_event);
    CHECK_FALSE(label_from_string("Tornado").has_value());
}

TEST_CASE("layer constructor checks size") {
    CHECK_THROWS_AS(Layer(19, 19, std::vector<double>(360)), ShapeError);
    const Layer l(2, 3, std::vector<double>{0, 1, 2, 3, 4, 5});
    CHECK(l(1, 2) == 5.0);
}

TEST_CASE("validate_snapshot accepts in-range constants unchanged") {
    const GridSnapshot s = constant_snapshot();
    const GridSnapshot copy = s;
    CHECK(&validate_snapshot(s) == &s);
    CHECK(s == copy);
}

TEST_CASE("validate_snapshot reports the offending cell") {
    GridSnapshot s = constant_snapshot();
    s.layer(Variable::cloud_cover)(0, 0) = 1.5;
    try {
        validate_snapshot(s);
        FAIL("expected RangeError");
    } catch (const RangeError& e) {
        REQUIRE(e.cell.has_value());
        CHECK(e.cell->variable == "cloud_cover");
        CHECK(e.cell->row == 0);
        CHECK(e.cell->col == 0);
        CHECK(e.cell->value == 1.5);
        CHECK(std::string(e.what()).find("cloud_cover") != std::string::npos);
    }
}

TEST_CASE("validate_snapshot shape, missing and non-finite") {
    GridSnapshot s = constant_snapshot();
    s.layer(Variable::temperature) = Layer(18, 19, 288.0);
    CHECK_THROWS_AS(validate_snapshot(s), ShapeError);

    s = constant_snapshot();
    s.layer(Variable::precipitation) = Layer();
    try {
        validate_snapshot(s);
        FAIL("expected MissingVariableError");
    } catch (const MissingVariableError& e) {
        CHECK(e.variable == "precipitation");
    }

    s = constant_snapshot();
    s.layer(Variable::wind_v)(3, 4) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate_snapshot(s), NonFiniteError);

    s = constant_snapshot();
    s.layer(Variable::wind_u)(3, 4) = -80.0;
    CHECK_NOTHROW(validate_snapshot(s));
    s.layer(Variable::precipitation)(0, 1) = -1e-9;
    CHECK_THROWS_AS(validate_snapshot(s), RangeError);
}

TEST_CASE("validate_window checks consecutive dates and one grid") {
    Rng rng(3);
    EventWindow w = testing::random_window(rng, "e1", Label::tornado, make_date(2012, 4, 10), 5);
    CHECK_NOTHROW(validate_window(w));
    CHECK(w.snapshots.front().date == make_date(2012, 4, 5));
    CHECK(w.snapshots.back().date == make_date(2012, 4, 9));

    EventWindow gap = w;
    gap.snapshots[2].date += std::chrono::days(1);
    CHECK_THROWS_AS(validate_window(gap), WindowError);

    EventWindow mixed = w;
    mixed.snapshots[1].lat0 = 40.0;
    CHECK_THROWS_AS(validate_window(mixed), WindowError);

    EventWindow empty = w;
    empty.snapshots.clear();
    CHECK_THROWS_AS(validate_window(empty), WindowError);

    EventWindow late = w;
    late.target_date += std::chrono::days(1);
    CHECK_THROWS_AS(validate_window(late), WindowError);
}
