#include "lrcert/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <memory>

#include <fmt/format.h>

#include "json_io.hpp"
#include "lrcert/bounds.hpp"
#include "lrcert/errors.hpp"
#include "lrcert/report.hpp"
#include "lrcert/svg.hpp"

namespace lrcert {

namespace {

using Metadata = std::vector<std::pair<std::string, std::string>>;

VertexSet to_set(const std::vector<int>& sites) { return VertexSet(std::vector<Vertex>(sites.begin(), sites.end())); }

Matrix operator_matrix(const OperatorSpec& op, std::size_t num_sites) {
  if (!op.name.empty()) return ops::kron_power(ops::named(op.name), static_cast<int>(num_sites));
  const auto n = static_cast<Eigen::Index>(op.matrix.size());
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = op.matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  return m;
}

LatticeGraph build_graph(const RunConfig& c) {
  if (!c.lattice.generator.empty()) return LatticeGraph::from_generator(c.lattice.generator);
  std::ifstream in(c.lattice.edge_list);
  if (!in) throw ConfigError(fmt::format("cannot open edge list '{}'", c.lattice.edge_list));
  return LatticeGraph::from_edge_list(in);
}

Interaction build_interaction(const RunConfig& c, const LatticeGraph& g) {
  const auto& spec = c.interaction;
  if (spec.preset == "tfim") return Interaction::transverse_field_ising(g, spec.J, spec.h);
  if (spec.preset == "heisenberg") return Interaction::heisenberg(g, spec.J, spec.h);
  Interaction out(spec.site_dims);
  for (const auto& t : spec.terms) out.add_term(to_set(t.sites), t.coefficient * operator_matrix(t.op, t.sites.size()));
  return out;
}

DecayFunction build_decay(const DecaySpec& d) {
  if (d.form == "power-law") return DecayFunction::power_law(d.exponent);
  if (d.form == "exponential") return DecayFunction::exponential(d.rate);
  return DecayFunction::tabulated(d.table);
}

Quench build_quench(const QuenchSpec& q) {
  const VertexSet X = to_set(q.sites);
  const Matrix op = operator_matrix(q.op, q.sites.size());
  if (q.q == 1) return HamiltonianQuench{q.strength * op, X};
  return StateQuench{op, X};
}

/// Everything derived from the config that does not depend on μ.
struct Setup {
  std::vector<double> mus;
  std::vector<VertexSet> regions;
  GrowthConstants growth;
  std::unique_ptr<QuenchScenario> base;
  Metadata metadata;
  int workers = 1;
};

Setup build_setup(const RunConfig& c, std::string_view command, const RunOptions& options) {
  Setup s;
  s.mus = options.mu ? std::vector<double>{*options.mu} : c.decay.mu;
  s.workers = options.workers.value_or(c.workers);
  if (s.workers < 1) throw ConfigError("workers must be at least 1");
  for (const auto& r : c.grids.regions) s.regions.push_back(to_set(r));

  auto graph = build_graph(c);
  auto interaction = build_interaction(c, graph);
  const ProductSpace space(interaction.site_dims(), c.dimension_cap);
  auto propagator = std::make_shared<const Propagator>(build_hamiltonian(interaction, space).matrix());

  std::optional<StateVector> psi0;
  if (c.initial_state.preset == "all-down") {
    psi0 = all_down_state(space);
  } else if (c.initial_state.preset == "ground") {
    psi0 = ground_state(*propagator, space);
  } else {
    Vector amps(static_cast<Eigen::Index>(c.initial_state.amplitudes.size()));
    for (Eigen::Index i = 0; i < amps.size(); ++i) amps(i) = c.initial_state.amplitudes[static_cast<std::size_t>(i)];
    psi0 = StateVector(space, amps);
  }

  GrowthRequest request;
  request.family = parse_growth_family(c.growth.family);
  request.alpha = c.growth.alpha;
  request.a = c.growth.a;
  request.n = c.growth.n;
  s.growth = fit_growth_constants(graph, request);

  const auto F = build_decay(c.decay);
  s.metadata = {{"tool", "lrcert 0.1.0"},
                {"command", std::string(command)},
                {"lattice", c.lattice.generator.empty() ? c.lattice.edge_list : c.lattice.generator},
                {"interaction", c.interaction.preset},
                {"initial_state", c.initial_state.preset},
                {"decay", F.describe()},
                {"q", std::to_string(c.quench.q)},
                {"X", to_string(to_set(c.quench.sites))},
                {"growth_family", c.growth.family}};
  s.base = std::make_unique<QuenchScenario>(std::move(graph), std::move(interaction), std::move(*psi0),
                                            to_set(c.quench.sites), build_quench(c.quench), F, s.mus.front(),
                                            propagator);
  return s;
}

std::vector<ConstantsEntry> constants_scan(const Setup& setup) {
  std::vector<ConstantsEntry> out;
  for (double mu : setup.mus) {
    const auto s = setup.base->with_mu(mu);
    const auto lr = compute_lr_constants(s.graph(), s.interaction(), s.decay(), mu);
    for (std::size_t r = 0; r < setup.regions.size(); ++r) {
      out.push_back({mu, static_cast<int>(r), compute_bound_constants(s, lr, setup.regions[r], setup.growth)});
    }
  }
  return out;
}

LocalObservable observable(const ObservableSpec& o) {
  return {operator_matrix(o.op, o.sites.size()), to_set(o.sites)};
}

HolevoEnsemble build_ensemble(const RunConfig& c, const QuenchScenario& base, double mu) {
  std::vector<HolevoLetter> letters;
  for (const auto& l : c.holevo.letters) {
    const Matrix op = operator_matrix(l.op, base.X().size());
    if (c.holevo.encoding == "unitary") {
      letters.push_back({l.p, StateQuench{op, base.X()}});
    } else {
      letters.push_back({l.p, HamiltonianQuench{op, base.X()}});
    }
  }
  return HolevoEnsemble(base.graph(), base.interaction(), base.psi0(), base.X(), std::move(letters), base.decay(), mu);
}

double default_c0(const QuenchScenario& s, const std::vector<int>& x_grid, int x0) {
  double c0 = 0.0;
  for (int x : x_grid) {
    if (x >= x0) c0 = std::max(c0, entanglement_entropy(s.psi0(), enlargement(s.graph(), s.X(), x)));
  }
  return c0;
}

Eigen::MatrixXd margin_grid(const CertificationReport& report, const std::vector<int>& x_grid,
                            const std::vector<double>& t_grid) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(x_grid.size()),
                                                static_cast<Eigen::Index>(t_grid.size()),
                                                std::numeric_limits<double>::quiet_NaN());
  for (const auto& p : report.points) {
    if (!p.valid) continue;
    const auto xi = std::find(x_grid.begin(), x_grid.end(), p.distance) - x_grid.begin();
    const auto ti = std::find(t_grid.begin(), t_grid.end(), p.t) - t_grid.begin();
    if (xi < m.rows() && ti < m.cols()) m(xi, ti) = p.margin;
  }
  return m;
}

class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  void write(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
    out << content;
    if (!out) throw ConfigError(fmt::format("failed writing '{}'", path.string()));
    written_.push_back(path.string());
  }

  std::vector<std::string> written() const { return written_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> written_;
};

std::string summarize(const std::vector<CertificationReport>& reports) {
  std::string out;
  for (const auto& r : reports) {
    const double mu = r.points.empty() ? 0.0 : r.points.front().mu;
    out += fmt::format("{} mu={:.6g}: {} points, {} valid, {} violations, min margin {:.6g}\n", to_string(r.kind), mu,
                       r.points.size(), r.valid_points(), r.violations(), r.min_margin());
  }
  return out;
}

RunResult execute(const RunConfig& c, std::string_view command, const RunOptions& options) {
  const bool all = command == "all";
  if (std::find(command_names().begin(), command_names().end(), command) == command_names().end()) {
    throw ConfigError(fmt::format("unknown command '{}'", command));
  }
  const Setup setup = build_setup(c, command, options);
  ArtifactWriter writer(options.out_dir.value_or(c.output_dir));
  RunResult result;

  const auto constants = constants_scan(setup);
  const auto constants_json = constants_to_json(constants, setup.regions, setup.metadata);
  writer.write("constants.json", constants_json);
  if (command == "constants") {
    result.stdout_text = constants_json;
    result.artifacts = writer.written();
    return result;
  }

  std::vector<CertificationReport> reports;
  std::optional<LightconeResult> lightcone;
  for (double mu : setup.mus) {
    const auto s = setup.base->with_mu(mu);
    if (all || command == "certify-lemma1") {
      reports.push_back(certify_lemma1(s, setup.regions, c.grids.t, setup.workers));
    }
    if (all || command == "certify-theorem") {
      reports.push_back(certify_theorem(s, setup.regions, c.grids.t, setup.growth, setup.workers));
    }
    if (all || command == "lr-check") {
      reports.push_back(certify_lr(s, observable(c.lr_check.a), observable(c.lr_check.b), c.grids.t));
    }
    if (all || command == "lightcone") {
      auto lc = certify_lightcone(s, c.grids.x, c.grids.t, setup.growth, setup.workers);
      reports.push_back(lc.report);
      if (!lightcone) lightcone = std::move(lc);
    }
    if (all || command == "holevo") {
      reports.push_back(certify_holevo(build_ensemble(c, s, mu), setup.regions, c.grids.t, setup.growth, setup.workers));
    }
    const bool area_law_applicable = c.quench.q == 1 && c.initial_state.preset == "ground";
    if (command == "area-law" || (all && area_law_applicable)) {
      const double c0 = c.area_law.c0.value_or(default_c0(s, c.grids.x, c.area_law.x0));
      reports.push_back(certify_area_law(s, c.area_law.x0, c0, c.grids.x, c.grids.t, setup.growth, setup.workers));
    }
  }

  writer.write("report.csv", to_csv(reports));
  writer.write("report.json", to_json(reports, setup.metadata));
  if (lightcone) {
    const auto& p = lightcone->profiles;
    Eigen::MatrixXd log_diff = p.difference.unaryExpr([](double v) {
      return v > 0.0 ? std::log10(v) : std::numeric_limits<double>::quiet_NaN();
    });
    std::vector<HeatmapPanel> panels{
        {fmt::format("E_{}(x,t)", c.quench.q), p.quenched.values, false},
        {"log10 |E0 - Eq|", log_diff, false},
        {"margin (valid region)", margin_grid(lightcone->report, c.grids.x, c.grids.t), false}};
    writer.write("lightcone.svg", render_lightcone_svg(c.grids.t, c.grids.x, panels, lightcone->v_prime));
  }

  result.artifacts = writer.written();
  result.stdout_text = summarize(reports);
  const bool certified = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.certified(); });
  result.exit_code = certified ? kExitCertified : kExitViolations;
  return result;
}

std::string error_json(std::string_view kind, std::string_view message, std::string_view command) {
  detail::Json j;
  j["error"] = std::string(kind);
  j["message"] = std::string(message);
  j["command"] = std::string(command);
  return j.dump();
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"constants", "certify-lemma1", "certify-theorem", "lightcone",
                                              "holevo",    "lr-check",       "area-law",        "all"};
  return names;
}

RunResult run(const RunConfig& config, std::string_view command, const RunOptions& options) {
  try {
    return execute(config, command, options);
  } catch (const Error& e) {
    RunResult r;
    r.exit_code = kExitError;
    r.error_json = error_json(e.kind(), e.what(), command);
    return r;
  } catch (const std::exception& e) {
    RunResult r;
    r.exit_code = kExitError;
    r.error_json = error_json("io", e.what(), command);
    return r;
  }
}

}  // namespace lrcert
