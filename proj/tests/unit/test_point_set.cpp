#include <doctest.h>

#include <sstream>

#include "sep/point_set.hpp"
#include "test_util.hpp"

using sep::parse_point_set;
using sep::PointSet;
using sep::Scalar;
using septest::close_rel;
using septest::pow2;

TEST_CASE("point set validation and window queries") {
    PointSet k({Scalar(0), Scalar(1), Scalar(2)}, {1, 2, 1});
    CHECK(k.total_count() == 4);
    CHECK(k.nodes_in_open(Scalar("0.5"), Scalar("2.5")) == 2);
    CHECK(k.count_in_open(Scalar("0.5"), Scalar("2.5")) == 3);
    CHECK(k.count_in_open(Scalar(0), Scalar(1)) == 0);  // open interval excludes endpoints
    CHECK_THROWS_AS(PointSet({Scalar(1), Scalar(1)}, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(PointSet({Scalar(0)}, {0}), std::invalid_argument);
}

TEST_CASE("point set parser: plain nodes and multiplicities") {
    std::istringstream in("0\n1 2\n");
    const PointSet k = parse_point_set(in);
    REQUIRE(k.size() == 2);
    CHECK(k.node(0) == Scalar(0));
    CHECK(k.node(1) == Scalar(1));
    CHECK(k.multiplicity(0) == 1);
    CHECK(k.multiplicity(1) == 2);
}

TEST_CASE("point set parser: log-scale input avoids underflow") {
    std::istringstream in("# tail node\nlog:-720\n0.5\n");
    const PointSet k = parse_point_set(in);
    REQUIRE(k.size() == 2);
    CHECK(!k.node(0).is_zero());
    CHECK(close_rel(log(k.node(0)), Scalar(-720), pow2(-200)));
}

TEST_CASE("point set parser: errors carry line numbers") {
    std::istringstream dup("1\n1\n");
    CHECK_THROWS_WITH_AS(parse_point_set(dup), doctest::Contains("line 2"), std::runtime_error);
    std::istringstream unsorted("2\n1\n");
    CHECK_THROWS_WITH_AS(parse_point_set(unsorted), doctest::Contains("not increasing"), std::runtime_error);
    std::istringstream bad("0\nx17\n");
    CHECK_THROWS_WITH_AS(parse_point_set(bad), doctest::Contains("line 2"), std::runtime_error);
    std::istringstream badmult("0 1 junk\n");
    CHECK_THROWS_AS(parse_point_set(badmult), std::runtime_error);
}
