#include "doctest.h"
#include "scwig/errors.hpp"
#include "scwig/experiment.hpp"

using namespace scwig;
using nlohmann::json;

TEST_SUITE("experiment_config") {

TEST_CASE("defaults and explicit conventions") {
  const auto c = parse_config(json::object());
  CHECK(c.system().name() == "harmonic");
  CHECK(c.conventions()["maslov"].get<double>() == doctest::Approx(M_PI / 4));
  CHECK(c.conventions().contains("bracket"));
  CHECK(c.hash.size() == 16);
}

TEST_CASE("shell selection by quantum number") {
  const auto c = parse_config(json::parse(R"({"hbar": 0.1, "shell": {"n": 4}})"));
  CHECK(c.shell_energy() == doctest::Approx(0.45).epsilon(1e-9));
}

TEST_CASE("hash ignores key order and tracks content") {
  const auto a = parse_config(json::parse(R"({"hbar": 0.1, "shell": {"energy": 0.5}})"));
  const auto b = parse_config(json::parse(R"({"shell": {"energy": 0.5}, "hbar": 0.1})"));
  const auto c = parse_config(json::parse(R"({"shell": {"energy": 0.6}, "hbar": 0.1})"));
  CHECK(a.hash == b.hash);
  CHECK(a.hash != c.hash);
}

TEST_CASE("channels from symbols and coefficient tables") {
  const auto c = parse_config(json::parse(
      R"({"channels": [{"symbol": "q", "coupling": 2.0}, {"terms": [[1, 1, 0.5]]}]})"));
  REQUIRE(c.channels.size() == 2);
  CHECK(c.channels[0].real_value({0.3, 0.7}) == doctest::Approx(1.4));
  CHECK(c.channels[1].real_value({0.3, 0.7}) == doctest::Approx(0.5 * 0.3 * 0.7));
}

TEST_CASE("polynomial system from a coefficient table") {
  const auto c = parse_config(json::parse(R"({"system": {"terms": [[2, 0, 0.5], [0, 4, 0.5]]}})"));
  CHECK(c.system().energy({0.2, 0.9}) == doctest::Approx(HamiltonianSystem::quartic().energy({0.2, 0.9})));
}

TEST_CASE("invalid configurations raise ConfigError") {
  for (const char* bad : {R"({"unknown": 1})", R"({"hbar": -1})", R"({"system": "nonsense"})",
                          R"({"channels": [{"symbol": "z"}]})", R"({"grid": {"p": [0, 1]}})",
                          R"({"conventions": {"purity_exponent": "half"}})",
                          R"({"conventions": {"bracket": "{A,B} = dA/dp dB/dq - dA/dq dB/dp"}})",
                          R"({"window": {"shape": "box"}})", R"({"hbar": "big"})"})
    CHECK_THROWS_AS(parse_config(json::parse(bad)), ConfigError);
}

}
