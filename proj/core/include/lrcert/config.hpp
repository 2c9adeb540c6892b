#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lrcert {

using ComplexEntry = std::complex<double>;

/// Either a named single-site operator (`sigma_x`, ...) placed on every support site,
/// or an explicit matrix over the whole support.
struct OperatorSpec {
  std::string name;
  std::vector<std::vector<ComplexEntry>> matrix;

  bool operator==(const OperatorSpec&) const = default;
};

struct TermSpec {
  std::vector<int> sites;
  OperatorSpec op;
  double coefficient = 1.0;

  bool operator==(const TermSpec&) const = default;
};

struct LatticeSpec {
  std::string generator;  ///< chain:L | grid:n:L | tree:n:depth
  std::string edge_list;  ///< path; relative paths are resolved against the config file

  bool operator==(const LatticeSpec&) const = default;
};

struct InteractionSpec {
  std::string preset = "tfim";  ///< tfim | heisenberg | custom
  double J = 1.0;
  double h = 1.0;
  std::vector<int> site_dims;  ///< custom only; empty means all 2
  std::vector<TermSpec> terms;

  bool operator==(const InteractionSpec&) const = default;
};

struct InitialStateSpec {
  std::string preset = "all-down";  ///< all-down | ground | explicit
  std::vector<ComplexEntry> amplitudes;

  bool operator==(const InitialStateSpec&) const = default;
};

struct QuenchSpec {
  int q = 1;
  std::vector<int> sites{0};
  OperatorSpec op{"sigma_x", {}};
  double strength = 1.0;  ///< W = strength * op for q = 1

  bool operator==(const QuenchSpec&) const = default;
};

struct DecaySpec {
  std::string form = "power-law";  ///< power-law | exponential | tabulated
  double exponent = 2.0;
  double rate = 1.0;
  std::vector<double> table;
  std::vector<double> mu{1.0};

  bool operator==(const DecaySpec&) const = default;
};

struct GrowthSpec {
  std::string family;  ///< chain | grid | tree | generic
  std::optional<double> alpha;
  std::optional<double> a;
  std::optional<int> n;

  bool operator==(const GrowthSpec&) const = default;
};

struct GridSpec {
  std::vector<double> t;
  std::vector<int> x;
  std::vector<std::vector<int>> regions;

  bool operator==(const GridSpec&) const = default;
};

struct ObservableSpec {
  std::vector<int> sites;
  OperatorSpec op{"sigma_z", {}};

  bool operator==(const ObservableSpec&) const = default;
};

struct LrCheckSpec {
  ObservableSpec a;
  ObservableSpec b;

  bool operator==(const LrCheckSpec&) const = default;
};

struct HolevoLetterSpec {
  double p = 0.0;
  OperatorSpec op;

  bool operator==(const HolevoLetterSpec&) const = default;
};

struct HolevoSpec {
  std::string encoding = "unitary";  ///< unitary | hamiltonian
  std::vector<HolevoLetterSpec> letters;

  bool operator==(const HolevoSpec&) const = default;
};

struct AreaLawSpec {
  int x0 = 1;
  std::optional<double> c0;  ///< default: max_x E_0(x, 0) over the x grid

  bool operator==(const AreaLawSpec&) const = default;
};

/// Fully resolved run configuration: every default is filled and every region is an
/// explicit site list.
struct RunConfig {
  LatticeSpec lattice;
  InteractionSpec interaction;
  InitialStateSpec initial_state;
  QuenchSpec quench;
  DecaySpec decay;
  GrowthSpec growth;
  GridSpec grids;
  LrCheckSpec lr_check;
  HolevoSpec holevo;
  AreaLawSpec area_law;
  std::string output_dir = "out";
  int workers = 1;
  std::size_t dimension_cap = std::size_t{1} << 12;

  bool operator==(const RunConfig&) const = default;
};

struct ParseOptions {
  std::string base_dir;  ///< directory for relative edge-list paths
  std::optional<std::size_t> dimension_cap_override;
};

/// Parses the YAML config, fills defaults and validates cross references. Errors are
/// ConfigError with a `line N:` prefix pointing at the offending node.
RunConfig parse_config(std::string_view text, const ParseOptions& options = {});
RunConfig load_config(const std::string& path, std::optional<std::size_t> dimension_cap_override = std::nullopt);

/// Emits every field, defaults included; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);

/// LRCERT_DIM_CAP, when set to a positive integer.
std::optional<std::size_t> dimension_cap_from_env();

}  // namespace lrcert
