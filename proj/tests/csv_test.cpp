// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "dpdkit/csv.hpp"
#include "dpdkit/types.hpp"
#include "test_util.hpp"

using namespace dpdkit;

TEST_CASE("split handles empty cells and separators") {
    CHECK(csv::split("a,b,c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(csv::split(",x,") == std::vector<std::string>{"", "x", ""});
    CHECK(csv::split("") == std::vector<std::string>{""});
}

TEST_CASE("format_double emits the shortest exact round-trip representation") {
    CHECK(csv::format_double(2.0) == "2");
    CHECK(csv::format_double(0.5) == "0.5");
    CHECK(csv::format_double(0.1) == "0.1");
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        double v = u(rng);
        CHECK(csv::parse_double(csv::format_double(v), "test") == v);
    }
}

TEST_CASE("parse_double rejects garbage and non-finite values naming the context") {
    CHECK(csv::parse_double("-1.25e3", "c") == -1250.0);
    CHECK_THROWS_AS(csv::parse_double("abc", "c"), InputError);
    CHECK_THROWS_AS(csv::parse_double("", "c"), InputError);
    CHECK_THROWS_AS(csv::parse_double("nan", "c"), InputError);
    CHECK_THROWS_AS(csv::parse_double("inf", "c"), InputError);
    CHECK_THROWS_AS(csv::parse_double("1.5x", "c"), InputError);
    try {
        csv::parse_double("?", "column rw_y");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("column rw_y") != std::string::npos);
    }
}

TEST_CASE("parse_long rejects fractions and trailing junk") {
    CHECK(csv::parse_long("42", "c") == 42);
    CHECK(csv::parse_long("-7", "c") == -7);
    CHECK_THROWS_AS(csv::parse_long("4.2", "c"), InputError);
    CHECK_THROWS_AS(csv::parse_long("", "c"), InputError);
}

TEST_CASE("key/value files round-trip and ignore comments") {
    testutil::TempDir dir("kv");
    csv::write_kv_file(dir.file("a.cfg"), {{"alpha", "1"}, {"beta", "x=y"}});
    {
        std::ofstream out(dir.file("a.cfg"), std::ios::app);
        out << "# a comment\n\n";
    }
    auto kv = csv::read_kv_file(dir.file("a.cfg"));
    CHECK(kv.at("alpha") == "1");
    CHECK(kv.at("beta") == "x=y");  // only the first '=' separates
    CHECK(kv.size() == 2);
}

TEST_CASE("read_lines fails on missing files") {
    CHECK_THROWS_AS(csv::read_lines("/nonexistent/nowhere.csv"), InputError);
}
