#include "lrcert/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "lrcert/errors.hpp"
#include "lrcert/interaction.hpp"
#include "lrcert/lattice.hpp"

namespace lrcert {

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line + 1; }

[[noreturn]] void fail(const YAML::Node& at, const std::string& message) {
  throw ConfigError(fmt::format("line {}: {}", line_of(at), message));
}

[[noreturn]] void fail_line(int line, const std::string& message) {
  throw ConfigError(fmt::format("line {}: {}", line, message));
}

void require_map(const YAML::Node& n, std::string_view section) {
  if (!n.IsMap()) fail(n, fmt::format("section '{}' must be a mapping", section));
}

void check_keys(const YAML::Node& n, std::string_view section, std::initializer_list<std::string_view> allowed) {
  require_map(n, section);
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(kv.first, fmt::format("unknown key '{}' in section '{}'", key, section));
    }
  }
}

template <typename T>
T scalar(const YAML::Node& n, std::string_view what) {
  if (!n.IsScalar()) fail(n, fmt::format("'{}' must be a scalar", what));
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    fail(n, fmt::format("'{}' has an invalid value '{}'", what, n.Scalar()));
  }
}

template <typename T>
std::vector<T> scalar_list(const YAML::Node& n, std::string_view what) {
  if (!n.IsSequence()) fail(n, fmt::format("'{}' must be a list", what));
  std::vector<T> out;
  for (const auto& item : n) out.push_back(scalar<T>(item, what));
  return out;
}

template <typename T>
void read_optional(const YAML::Node& parent, const char* key, T& target) {
  if (const auto n = parent[key]) target = scalar<T>(n, key);
}

ComplexEntry complex_entry(const YAML::Node& n) {
  if (n.IsScalar()) return {scalar<double>(n, "matrix entry"), 0.0};
  if (n.IsSequence() && n.size() == 2) return {scalar<double>(n[0], "matrix entry"), scalar<double>(n[1], "matrix entry")};
  fail(n, "matrix entries are numbers or [re, im] pairs");
}

OperatorSpec parse_operator(const YAML::Node& n) {
  OperatorSpec op;
  if (n.IsScalar()) {
    op.name = n.as<std::string>();
    try {
      (void)ops::named(op.name);
    } catch (const Error&) {
      fail(n, fmt::format("unknown operator '{}'", op.name));
    }
    return op;
  }
  if (!n.IsSequence() || n.size() == 0) fail(n, "operator must be a name or a square matrix");
  for (const auto& row : n) {
    if (!row.IsSequence() || row.size() != n.size()) fail(row, "operator matrix must be square");
    std::vector<ComplexEntry> r;
    for (const auto& e : row) r.push_back(complex_entry(e));
    op.matrix.push_back(std::move(r));
  }
  return op;
}

std::vector<int> parse_sites(const YAML::Node& n, std::string_view what, int num_sites) {
  auto sites = scalar_list<int>(n, what);
  if (sites.empty()) fail(n, fmt::format("'{}' must not be empty", what));
  for (int s : sites) {
    if (s < 0 || s >= num_sites) {
      fail(n, fmt::format("{} references site {} but the lattice has {} sites", what, s, num_sites));
    }
  }
  std::set<int> unique(sites.begin(), sites.end());
  if (unique.size() != sites.size()) fail(n, fmt::format("'{}' lists a site twice", what));
  return sites;
}

std::size_t support_dim(const std::vector<int>& site_dims, const std::vector<int>& sites) {
  std::size_t d = 1;
  for (int s : sites) d *= static_cast<std::size_t>(site_dims[static_cast<std::size_t>(s)]);
  return d;
}

void check_operator_shape(const YAML::Node& at, const OperatorSpec& op, const std::vector<int>& site_dims,
                          const std::vector<int>& sites) {
  if (!op.name.empty()) {
    for (int s : sites) {
      if (site_dims[static_cast<std::size_t>(s)] != 2) fail(at, "named operators need local dimension 2");
    }
    return;
  }
  if (op.matrix.size() != support_dim(site_dims, sites)) {
    fail(at, fmt::format("operator matrix has dimension {} but its support has dimension {}", op.matrix.size(),
                         support_dim(site_dims, sites)));
  }
}

LatticeGraph build_lattice(const LatticeSpec& spec) {
  if (!spec.generator.empty()) return LatticeGraph::from_generator(spec.generator);
  std::ifstream in(spec.edge_list);
  if (!in) throw ConfigError(fmt::format("cannot open edge list '{}'", spec.edge_list));
  return LatticeGraph::from_edge_list(in);
}

std::vector<double> parse_t_grid(const YAML::Node& n) {
  if (n.IsSequence()) {
    auto t = scalar_list<double>(n, "t");
    if (t.empty()) fail(n, "t grid must not be empty");
    return t;
  }
  check_keys(n, "grids.t", {"start", "stop", "count"});
  for (const char* key : {"start", "stop", "count"}) {
    if (!n[key]) fail(n, fmt::format("missing key '{}' in section 'grids.t'", key));
  }
  const auto start = scalar<double>(n["start"], "start");
  const auto stop = scalar<double>(n["stop"], "stop");
  const auto count = scalar<int>(n["count"], "count");
  if (count < 1) fail(n["count"], "count must be positive");
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    t[static_cast<std::size_t>(i)] = count == 1 ? start : start + (stop - start) * i / (count - 1);
  }
  return t;
}

std::vector<double> default_t_grid() {
  std::vector<double> t(41);
  for (int i = 0; i < 41; ++i) t[static_cast<std::size_t>(i)] = 2.0 * i / 40;
  return t;
}

std::vector<int> tail_region(const LatticeGraph& g, const VertexSet& X, int d) {
  std::vector<int> out;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.distance(v, X) >= d) out.push_back(v);
  }
  return out;
}

GrowthSpec default_growth(const LatticeSpec& lattice) {
  GrowthSpec g;
  const auto& gen = lattice.generator;
  if (gen.rfind("chain:", 0) == 0) {
    g.family = "chain";
  } else if (gen.rfind("tree:", 0) == 0) {
    g.family = "tree";
    g.n = std::stoi(gen.substr(5, gen.find(':', 5) - 5));
  } else {
    g.family = "generic";
    g.alpha = 0.0;
  }
  return g;
}

void parse_lattice(const YAML::Node& n, RunConfig& c) {
  check_keys(n, "lattice", {"generator", "edges"});
  read_optional(n, "generator", c.lattice.generator);
  read_optional(n, "edges", c.lattice.edge_list);
  if (c.lattice.generator.empty() == c.lattice.edge_list.empty()) {
    fail(n, "lattice needs exactly one of 'generator' or 'edges'");
  }
}

void parse_interaction(const YAML::Node& n, RunConfig& c, int num_sites, int root_line) {
  auto& spec = c.interaction;
  if (!n) {
    spec.site_dims.assign(static_cast<std::size_t>(num_sites), 2);
    return;
  }
  check_keys(n, "interaction", {"preset", "J", "h", "site_dims", "terms"});
  read_optional(n, "preset", spec.preset);
  read_optional(n, "J", spec.J);
  read_optional(n, "h", spec.h);
  if (spec.preset != "tfim" && spec.preset != "heisenberg" && spec.preset != "custom") {
    fail(n["preset"], fmt::format("unknown interaction preset '{}'", spec.preset));
  }
  if (const auto dims = n["site_dims"]) {
    if (spec.preset != "custom") fail(dims, "site_dims is only allowed with the custom preset");
    spec.site_dims = scalar_list<int>(dims, "site_dims");
    if (static_cast<int>(spec.site_dims.size()) != num_sites) {
      fail(dims, fmt::format("site_dims has {} entries but the lattice has {} sites", spec.site_dims.size(), num_sites));
    }
    for (int d : spec.site_dims) {
      if (d < 1) fail(dims, "local dimensions must be positive");
    }
  } else {
    spec.site_dims.assign(static_cast<std::size_t>(num_sites), 2);
  }
  if (const auto terms = n["terms"]) {
    if (spec.preset != "custom") fail(terms, "terms are only allowed with the custom preset");
    if (!terms.IsSequence()) fail(terms, "terms must be a list");
    for (const auto& t : terms) {
      check_keys(t, "interaction.terms", {"sites", "operator", "coefficient"});
      if (!t["sites"] || !t["operator"]) fail(t, "each term needs 'sites' and 'operator'");
      TermSpec term;
      term.sites = parse_sites(t["sites"], "term sites", num_sites);
      term.op = parse_operator(t["operator"]);
      read_optional(t, "coefficient", term.coefficient);
      check_operator_shape(t, term.op, spec.site_dims, term.sites);
      spec.terms.push_back(std::move(term));
    }
  } else if (spec.preset == "custom") {
    fail_line(n ? line_of(n) : root_line, "custom interaction needs a 'terms' list");
  }
}

void parse_initial_state(const YAML::Node& n, RunConfig& c, std::size_t total_dim) {
  if (!n) return;
  auto& spec = c.initial_state;
  if (n.IsScalar()) {
    spec.preset = n.as<std::string>();
  } else {
    check_keys(n, "initial_state", {"preset", "amplitudes"});
    read_optional(n, "preset", spec.preset);
    if (const auto amps = n["amplitudes"]) {
      if (!n["preset"]) spec.preset = "explicit";
      if (!amps.IsSequence()) fail(amps, "amplitudes must be a list");
      for (const auto& a : amps) spec.amplitudes.push_back(complex_entry(a));
    }
  }
  if (spec.preset != "all-down" && spec.preset != "ground" && spec.preset != "explicit") {
    fail(n, fmt::format("unknown initial state '{}'", spec.preset));
  }
  if (spec.preset == "explicit") {
    if (spec.amplitudes.size() != total_dim) {
      fail(n, fmt::format("explicit state has {} amplitudes but the Hilbert space has dimension {}",
                          spec.amplitudes.size(), total_dim));
    }
    double norm2 = 0.0;
    for (const auto& a : spec.amplitudes) norm2 += std::norm(a);
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-10) fail(n, "explicit state is not normalized");
  } else if (!spec.amplitudes.empty()) {
    fail(n, "amplitudes are only allowed with the explicit initial state");
  }
}

void parse_quench(const YAML::Node& n, RunConfig& c, int num_sites) {
  auto& spec = c.quench;
  if (n) {
    check_keys(n, "quench", {"q", "sites", "operator", "strength"});
    read_optional(n, "q", spec.q);
    if (spec.q != 1 && spec.q != 2) fail(n["q"], "q must be 1 or 2");
    if (const auto s = n["sites"]) spec.sites = parse_sites(s, "quench sites", num_sites);
    if (const auto op = n["operator"]) spec.op = parse_operator(op);
    read_optional(n, "strength", spec.strength);
    if (!std::isfinite(spec.strength)) fail(n["strength"], "strength must be finite");
  }
  for (int s : spec.sites) {
    if (s >= num_sites) fail_line(n ? line_of(n) : 1, fmt::format("quench references site {} outside the lattice", s));
  }
  check_operator_shape(n ? n : YAML::Node(), spec.op, c.interaction.site_dims, spec.sites);
}

void parse_decay(const YAML::Node& n, RunConfig& c) {
  auto& spec = c.decay;
  if (!n) return;
  check_keys(n, "decay", {"form", "exponent", "rate", "table", "mu"});
  read_optional(n, "form", spec.form);
  read_optional(n, "exponent", spec.exponent);
  read_optional(n, "rate", spec.rate);
  if (const auto t = n["table"]) spec.table = scalar_list<double>(t, "table");
  if (const auto mu = n["mu"]) {
    spec.mu = mu.IsSequence() ? scalar_list<double>(mu, "mu") : std::vector<double>{scalar<double>(mu, "mu")};
    if (spec.mu.empty()) fail(mu, "mu list must not be empty");
    for (double m : spec.mu) {
      if (!(m > 0.0) || !std::isfinite(m)) fail(mu, "every mu must be positive and finite");
    }
  }
  if (spec.form == "power-law") {
    if (!(spec.exponent > 0.0)) fail(n, "power-law exponent must be positive");
  } else if (spec.form == "exponential") {
    if (!(spec.rate > 0.0)) fail(n, "exponential rate must be positive");
  } else if (spec.form == "tabulated") {
    if (spec.table.empty()) fail(n, "tabulated decay needs a 'table'");
  } else {
    fail(n["form"], fmt::format("unknown decay form '{}'", spec.form));
  }
}

void parse_growth(const YAML::Node& n, RunConfig& c) {
  if (!n) {
    c.growth = default_growth(c.lattice);
    return;
  }
  check_keys(n, "growth", {"family", "alpha", "a", "n"});
  auto& spec = c.growth;
  read_optional(n, "family", spec.family);
  if (spec.family.empty()) spec.family = default_growth(c.lattice).family;
  try {
    (void)parse_growth_family(spec.family);
  } catch (const Error&) {
    fail(n["family"], fmt::format("unknown growth family '{}'", spec.family));
  }
  if (const auto a = n["alpha"]) spec.alpha = scalar<double>(a, "alpha");
  if (const auto a = n["a"]) spec.a = scalar<double>(a, "a");
  if (const auto v = n["n"]) spec.n = scalar<int>(v, "n");
  if ((spec.family == "grid" || spec.family == "generic") && !spec.alpha) {
    fail(n, fmt::format("growth family '{}' needs 'alpha'", spec.family));
  }
  if ((spec.family == "grid" || spec.family == "tree") && !spec.n) {
    const auto d = default_growth(c.lattice);
    if (d.n) {
      spec.n = d.n;
    } else if (c.lattice.generator.rfind("grid:", 0) == 0) {
      spec.n = std::stoi(c.lattice.generator.substr(5, c.lattice.generator.find(':', 5) - 5));
    } else {
      fail(n, fmt::format("growth family '{}' needs 'n'", spec.family));
    }
  }
}

void parse_grids(const YAML::Node& n, RunConfig& c, const LatticeGraph& g) {
  const VertexSet X(std::vector<Vertex>(c.quench.sites.begin(), c.quench.sites.end()));
  const int ecc = g.eccentricity(X);
  auto& spec = c.grids;
  std::vector<int> tails;
  if (n) {
    check_keys(n, "grids", {"t", "x", "regions", "tail_distances"});
    if (const auto t = n["t"]) spec.t = parse_t_grid(t);
    if (const auto x = n["x"]) {
      spec.x = scalar_list<int>(x, "x");
      for (int v : spec.x) {
        if (v < 0 || v >= ecc) fail(x, fmt::format("x = {} must lie in [0, {})", v, ecc));
      }
    }
    if (const auto r = n["regions"]) {
      if (!r.IsSequence()) fail(r, "regions must be a list of site lists");
      for (const auto& region : r) {
        auto sites = parse_sites(region, "region", g.num_vertices());
        std::sort(sites.begin(), sites.end());
        const VertexSet Y(std::vector<Vertex>(sites.begin(), sites.end()));
        if (g.distance(X, Y) <= 0) fail(region, fmt::format("region {} overlaps the quench region", to_string(Y)));
        spec.regions.push_back(std::move(sites));
      }
    }
    if (const auto td = n["tail_distances"]) {
      tails = scalar_list<int>(td, "tail_distances");
      for (int d : tails) {
        if (d < 1 || d > ecc) fail(td, fmt::format("tail distance {} must lie in [1, {}]", d, ecc));
      }
    }
  }
  if (spec.t.empty()) spec.t = default_t_grid();
  if (spec.x.empty()) {
    for (int x = 0; x < ecc; ++x) spec.x.push_back(x);
  }
  if (spec.regions.empty() && tails.empty()) {
    for (int d = 1; d <= ecc; ++d) tails.push_back(d);
  }
  for (int d : tails) spec.regions.push_back(tail_region(g, X, d));
}

ObservableSpec parse_observable(const YAML::Node& n, std::string_view section, ObservableSpec fallback,
                                const RunConfig& c, int num_sites) {
  if (!n || n.IsNull()) return fallback;
  check_keys(n, section, {"sites", "operator"});
  if (const auto s = n["sites"]) fallback.sites = parse_sites(s, "observable sites", num_sites);
  if (const auto op = n["operator"]) fallback.op = parse_operator(op);
  check_operator_shape(n, fallback.op, c.interaction.site_dims, fallback.sites);
  return fallback;
}

void parse_lr_check(const YAML::Node& n, RunConfig& c, const LatticeGraph& g) {
  const VertexSet X(std::vector<Vertex>(c.quench.sites.begin(), c.quench.sites.end()));
  ObservableSpec a;
  a.sites = c.quench.sites;
  ObservableSpec b;
  Vertex far = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.distance(v, X) >= g.distance(far, X)) far = v;
  }
  b.sites = {far};
  if (n) check_keys(n, "lr_check", {"a", "b"});
  c.lr_check.a = parse_observable(n ? n["a"] : YAML::Node(), "lr_check.a", a, c, g.num_vertices());
  c.lr_check.b = parse_observable(n ? n["b"] : YAML::Node(), "lr_check.b", b, c, g.num_vertices());
}

void parse_holevo(const YAML::Node& n, RunConfig& c) {
  auto& spec = c.holevo;
  if (n) {
    check_keys(n, "holevo", {"encoding", "letters"});
    read_optional(n, "encoding", spec.encoding);
    if (spec.encoding != "unitary" && spec.encoding != "hamiltonian") {
      fail(n["encoding"], fmt::format("unknown holevo encoding '{}'", spec.encoding));
    }
    if (const auto letters = n["letters"]) {
      if (!letters.IsSequence() || letters.size() == 0) fail(letters, "letters must be a non-empty list");
      double total = 0.0;
      for (const auto& l : letters) {
        check_keys(l, "holevo.letters", {"p", "operator"});
        if (!l["p"] || !l["operator"]) fail(l, "each letter needs 'p' and 'operator'");
        HolevoLetterSpec letter;
        letter.p = scalar<double>(l["p"], "p");
        if (!(letter.p >= 0.0)) fail(l["p"], "letter probabilities must be non-negative");
        letter.op = parse_operator(l["operator"]);
        check_operator_shape(l, letter.op, c.interaction.site_dims, c.quench.sites);
        total += letter.p;
        spec.letters.push_back(std::move(letter));
      }
      if (std::abs(total - 1.0) > 1e-12) fail(letters, "letter probabilities must sum to 1");
    }
  }
  if (spec.letters.empty()) {
    spec.letters = {{0.5, OperatorSpec{"identity", {}}}, {0.5, OperatorSpec{"sigma_x", {}}}};
  }
}

void parse_area_law(const YAML::Node& n, RunConfig& c) {
  if (!n) return;
  check_keys(n, "area_law", {"x0", "c0"});
  read_optional(n, "x0", c.area_law.x0);
  if (c.area_law.x0 < 0) fail(n["x0"], "x0 must be non-negative");
  if (const auto c0 = n["c0"]) c.area_law.c0 = scalar<double>(c0, "c0");
}

void emit_operator(YAML::Emitter& out, const OperatorSpec& op) {
  if (!op.name.empty()) {
    out << op.name;
    return;
  }
  out << YAML::BeginSeq;
  for (const auto& row : op.matrix) {
    out << YAML::Flow << YAML::BeginSeq;
    for (const auto& e : row) out << YAML::Flow << YAML::BeginSeq << e.real() << e.imag() << YAML::EndSeq;
    out << YAML::EndSeq;
  }
  out << YAML::EndSeq;
}

template <typename T>
void emit_flow_list(YAML::Emitter& out, const std::vector<T>& values) {
  out << YAML::Flow << YAML::BeginSeq;
  for (const auto& v : values) out << v;
  out << YAML::EndSeq;
}

void emit_observable(YAML::Emitter& out, const ObservableSpec& o) {
  out << YAML::BeginMap << YAML::Key << "sites" << YAML::Value;
  emit_flow_list(out, o.sites);
  out << YAML::Key << "operator" << YAML::Value;
  emit_operator(out, o.op);
  out << YAML::EndMap;
}

}  // namespace

RunConfig parse_config(std::string_view text, const ParseOptions& options) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    fail_line(e.mark.line + 1, e.msg);
  }
  if (!root || root.IsNull()) throw ConfigError("line 1: config is empty");
  check_keys(root, "config",
             {"lattice", "interaction", "initial_state", "quench", "decay", "growth", "grids", "lr_check", "holevo",
              "area_law", "output", "workers", "dimension_cap"});
  if (!root["lattice"]) fail(root, "missing required section 'lattice'");

  RunConfig c;
  parse_lattice(root["lattice"], c);
  read_optional(root, "workers", c.workers);
  if (c.workers < 1) fail(root["workers"], "workers must be at least 1");
  if (const auto dc = root["dimension_cap"]) {
    const auto cap = scalar<long long>(dc, "dimension_cap");
    if (cap < 1) fail(dc, "dimension_cap must be positive");
    c.dimension_cap = static_cast<std::size_t>(cap);
  }
  if (options.dimension_cap_override) c.dimension_cap = *options.dimension_cap_override;
  if (const auto out = root["output"]) {
    check_keys(out, "output", {"dir"});
    read_optional(out, "dir", c.output_dir);
  }

  if (!c.lattice.edge_list.empty() && !options.base_dir.empty() &&
      std::filesystem::path(c.lattice.edge_list).is_relative()) {
    c.lattice.edge_list = (std::filesystem::path(options.base_dir) / c.lattice.edge_list).string();
  }
  std::optional<LatticeGraph> graph;
  try {
    graph.emplace(build_lattice(c.lattice));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(root["lattice"], e.what());
  }
  const int n = graph->num_vertices();

  parse_interaction(root["interaction"], c, n, line_of(root));
  std::size_t total_dim = 1;
  for (int d : c.interaction.site_dims) {
    total_dim *= static_cast<std::size_t>(d);
    if (total_dim > c.dimension_cap) {
      fail(root["lattice"], fmt::format("Hilbert-space dimension exceeds the dimension cap {}", c.dimension_cap));
    }
  }
  parse_initial_state(root["initial_state"], c, total_dim);
  parse_quench(root["quench"], c, n);
  parse_decay(root["decay"], c);
  parse_growth(root["growth"], c);
  parse_grids(root["grids"], c, *graph);
  parse_lr_check(root["lr_check"], c, *graph);
  parse_holevo(root["holevo"], c);
  parse_area_law(root["area_law"], c);
  return c;
}

RunConfig load_config(const std::string& path, std::optional<std::size_t> dimension_cap_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  ParseOptions options;
  options.base_dir = std::filesystem::path(path).parent_path().string();
  options.dimension_cap_override = dimension_cap_override;
  return parse_config(buffer.str(), options);
}

std::string emit_config(const RunConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;

  out << YAML::Key << "lattice" << YAML::Value << YAML::BeginMap;
  if (!c.lattice.generator.empty()) out << YAML::Key << "generator" << YAML::Value << c.lattice.generator;
  if (!c.lattice.edge_list.empty()) out << YAML::Key << "edges" << YAML::Value << c.lattice.edge_list;
  out << YAML::EndMap;

  const auto& in = c.interaction;
  out << YAML::Key << "interaction" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "preset" << YAML::Value << in.preset;
  out << YAML::Key << "J" << YAML::Value << in.J << YAML::Key << "h" << YAML::Value << in.h;
  if (in.preset == "custom") {
    out << YAML::Key << "site_dims" << YAML::Value;
    emit_flow_list(out, in.site_dims);
    out << YAML::Key << "terms" << YAML::Value << YAML::BeginSeq;
    for (const auto& t : in.terms) {
      out << YAML::BeginMap << YAML::Key << "sites" << YAML::Value;
      emit_flow_list(out, t.sites);
      out << YAML::Key << "operator" << YAML::Value;
      emit_operator(out, t.op);
      out << YAML::Key << "coefficient" << YAML::Value << t.coefficient << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;

  out << YAML::Key << "initial_state" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "preset" << YAML::Value << c.initial_state.preset;
  if (!c.initial_state.amplitudes.empty()) {
    out << YAML::Key << "amplitudes" << YAML::Value << YAML::BeginSeq;
    for (const auto& a : c.initial_state.amplitudes) out << YAML::Flow << YAML::BeginSeq << a.real() << a.imag() << YAML::EndSeq;
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;

  out << YAML::Key << "quench" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "q" << YAML::Value << c.quench.q << YAML::Key << "sites" << YAML::Value;
  emit_flow_list(out, c.quench.sites);
  out << YAML::Key << "operator" << YAML::Value;
  emit_operator(out, c.quench.op);
  out << YAML::Key << "strength" << YAML::Value << c.quench.strength << YAML::EndMap;

  out << YAML::Key << "decay" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "form" << YAML::Value << c.decay.form;
  out << YAML::Key << "exponent" << YAML::Value << c.decay.exponent;
  out << YAML::Key << "rate" << YAML::Value << c.decay.rate;
  if (!c.decay.table.empty()) {
    out << YAML::Key << "table" << YAML::Value;
    emit_flow_list(out, c.decay.table);
  }
  out << YAML::Key << "mu" << YAML::Value;
  emit_flow_list(out, c.decay.mu);
  out << YAML::EndMap;

  out << YAML::Key << "growth" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "family" << YAML::Value << c.growth.family;
  if (c.growth.alpha) out << YAML::Key << "alpha" << YAML::Value << *c.growth.alpha;
  if (c.growth.a) out << YAML::Key << "a" << YAML::Value << *c.growth.a;
  if (c.growth.n) out << YAML::Key << "n" << YAML::Value << *c.growth.n;
  out << YAML::EndMap;

  out << YAML::Key << "grids" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "t" << YAML::Value;
  emit_flow_list(out, c.grids.t);
  out << YAML::Key << "x" << YAML::Value;
  emit_flow_list(out, c.grids.x);
  out << YAML::Key << "regions" << YAML::Value << YAML::BeginSeq;
  for (const auto& r : c.grids.regions) emit_flow_list(out, r);
  out << YAML::EndSeq << YAML::EndMap;

  out << YAML::Key << "lr_check" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "a" << YAML::Value;
  emit_observable(out, c.lr_check.a);
  out << YAML::Key << "b" << YAML::Value;
  emit_observable(out, c.lr_check.b);
  out << YAML::EndMap;

  out << YAML::Key << "holevo" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "encoding" << YAML::Value << c.holevo.encoding;
  out << YAML::Key << "letters" << YAML::Value << YAML::BeginSeq;
  for (const auto& l : c.holevo.letters) {
    out << YAML::BeginMap << YAML::Key << "p" << YAML::Value << l.p << YAML::Key << "operator" << YAML::Value;
    emit_operator(out, l.op);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;

  out << YAML::Key << "area_law" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "x0" << YAML::Value << c.area_law.x0;
  if (c.area_law.c0) out << YAML::Key << "c0" << YAML::Value << *c.area_law.c0;
  out << YAML::EndMap;

  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap << YAML::Key << "dir" << YAML::Value << c.output_dir
      << YAML::EndMap;
  out << YAML::Key << "workers" << YAML::Value << c.workers;
  out << YAML::Key << "dimension_cap" << YAML::Value << static_cast<unsigned long long>(c.dimension_cap);
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::optional<std::size_t> dimension_cap_from_env() {
  const char* raw = std::getenv("LRCERT_DIM_CAP");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const long long v = std::strtoll(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 1) throw ConfigError(fmt::format("LRCERT_DIM_CAP must be a positive integer, got '{}'", raw));
  return static_cast<std::size_t>(v);
}

}  // namespace lrcert
