#include <string>

#include <gtest/gtest.h>

#include "lrcert/config.hpp"
#include "lrcert/errors.hpp"

using namespace lrcert;

namespace {

const char* kMinimal = R"(lattice:
  generator: "chain:8"
interaction:
  preset: tfim
quench:
  q: 1
  sites: [0]
  operator: sigma_x
decay:
  mu: [1.0]
)";

std::string config_path(const std::string& name) { return std::string(LRCERT_CONFIG_DIR) + "/" + name; }

void expect_config_error(const std::string& text, const std::string& fragment) {
  try {
    parse_config(text);
    FAIL() << "expected ConfigError for: " << fragment;
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_EQ(msg.rfind("line ", 0), 0u) << msg;
    EXPECT_NE(msg.find(fragment), std::string::npos) << msg;
  }
}

}  // namespace

TEST(Config, MinimalConfigFillsDefaults) {
  const auto c = parse_config(kMinimal);
  EXPECT_EQ(c.lattice.generator, "chain:8");
  EXPECT_EQ(c.interaction.site_dims, std::vector<int>(8, 2));
  EXPECT_EQ(c.quench.q, 1);
  EXPECT_EQ(c.grids.t.size(), 41u);
  EXPECT_DOUBLE_EQ(c.grids.t.front(), 0.0);
  EXPECT_DOUBLE_EQ(c.grids.t.back(), 2.0);
  EXPECT_FALSE(c.grids.x.empty());
  EXPECT_FALSE(c.grids.regions.empty());
  for (const auto& region : c.grids.regions) {
    for (int v : region) EXPECT_NE(v, 0);
  }
  EXPECT_EQ(c.growth.family, "chain");
  EXPECT_EQ(c.lr_check.a.sites, std::vector<int>{0});
  EXPECT_EQ(c.lr_check.b.sites, std::vector<int>{7});
  EXPECT_EQ(c.holevo.letters.size(), 2u);
}

TEST(Config, OutOfRangeSiteNamesLine) {
  std::string text = kMinimal;
  text.replace(text.find("sites: [0]"), 10, "sites: [99]");
  expect_config_error(text, "99");
}

TEST(Config, UnknownKeyIsRejected) { expect_config_error(std::string(kMinimal) + "colour: blue\n", "colour"); }

TEST(Config, MissingLatticeIsRejected) {
  EXPECT_THROW(parse_config("interaction:\n  preset: tfim\n"), ConfigError);
}

TEST(Config, MalformedYamlIsConfigError) { EXPECT_THROW(parse_config("lattice: [\n"), ConfigError); }

TEST(Config, DimensionCap) {
  const std::string big = "lattice:\n  generator: \"chain:14\"\n";
  expect_config_error(big, "dimension cap");
  ParseOptions opts;
  opts.dimension_cap_override = std::size_t{1} << 14;
  EXPECT_NO_THROW(parse_config(big, opts));
  EXPECT_NO_THROW(parse_config(big + "dimension_cap: 16384\n"));
  opts.dimension_cap_override = 64;
  EXPECT_THROW(parse_config(kMinimal, opts), ConfigError);
}

TEST(Config, ProbabilitiesMustSumToOne) {
  const std::string text = std::string(kMinimal) +
                           "holevo:\n  letters:\n    - {p: 0.3, operator: identity}\n    - {p: 0.3, operator: sigma_x}\n";
  expect_config_error(text, "");
}

TEST(Config, RoundTripMinimal) {
  const auto c = parse_config(kMinimal);
  EXPECT_EQ(parse_config(emit_config(c)), c);
}

TEST(Config, RoundTripExampleConfigs) {
  for (const char* name : {"chain8_tfim.yaml", "grid3x3_heisenberg.yaml", "tree2_tfim.yaml"}) {
    const auto c = load_config(config_path(name));
    const auto emitted = emit_config(c);
    EXPECT_EQ(parse_config(emitted), c) << name;
    EXPECT_EQ(emit_config(parse_config(emitted)), emitted) << name;
  }
}

TEST(Config, ExampleChainMatchesItsDescription) {
  const auto c = load_config(config_path("chain8_tfim.yaml"));
  EXPECT_EQ(c.decay.mu, (std::vector<double>{0.5, 1.0}));
  ASSERT_EQ(c.grids.regions.size(), 4u);
  EXPECT_EQ(c.grids.regions.front(), (std::vector<int>{3, 4, 5, 6, 7}));
  EXPECT_EQ(c.grids.regions.back(), (std::vector<int>{6, 7}));
}
