#include <doctest.h>

#include <trfds/errors.hpp>
#include <trfds/subprocess_oracle.hpp>

#include <string>

using namespace trfds;

namespace {

std::string fixture(const std::string& mode) { return std::string(ORACLE_FIXTURE_PATH) + " " + mode; }

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

} // namespace

TEST_CASE("constant oracle answers 3.5 for any point") {
  SubprocessOracle oracle(fixture("const35"));
  CHECK(oracle(v2(0, 0)) == 3.5);
  CHECK(oracle(v2(7, -1)) == 3.5);
}

TEST_CASE("sphere oracle computes sum of squares") {
  SubprocessOracle oracle(fixture("sphere"));
  CHECK(oracle(v2(1, 2)) == 5.0);
}

TEST_CASE("nan reply is a protocol error") {
  SubprocessOracle oracle(fixture("nan"));
  CHECK_THROWS_AS(oracle(v2(0, 0)), OracleProtocolError);
}

TEST_CASE("non-numeric reply is a protocol error") {
  SubprocessOracle oracle(fixture("garbage"));
  CHECK_THROWS_AS(oracle(v2(0, 0)), OracleProtocolError);
}

TEST_CASE("child exit surfaces as a protocol error") {
  SubprocessOracle oracle(fixture("exit"));
  CHECK_THROWS_AS(oracle(v2(0, 0)), OracleProtocolError);
}

TEST_CASE("slow oracle hits the configured timeout") {
  SubprocessOracle oracle(fixture("slow"), 0.3);
  CHECK_THROWS_AS(oracle(v2(0, 0)), OracleProtocolError);
}

TEST_CASE("subprocess problem objective plugs into Problem") {
  Problem p(Problem::Init{
      .dimension = 2,
      .objective = subprocess_oracle(fixture("sphere")),
      .x0 = v2(1, 1),
  });
  CHECK(p.evaluate(v2(1, 2)) == 5.0);
  CHECK(p.eval_count() == 1);
}
