#include "lrcert/report.hpp"

#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "json_io.hpp"

namespace lrcert {

namespace detail {

Json to_json(const LRConstants& c) {
  Json j;
  j["f_norm"] = number(c.f_norm);
  j["c_mu"] = number(c.c_mu);
  j["phi_norm"] = number(c.phi_norm);
  j["mu"] = number(c.mu);
  j["v_mu"] = number(c.v_mu);
  j["truncation"] = "instance";
  return j;
}

Json to_json(const GrowthConstants& g) {
  Json j;
  j["family"] = std::string(to_string(g.family));
  j["b"] = number(g.b);
  j["alpha"] = number(g.alpha);
  j["a"] = g.a ? number(*g.a) : Json(nullptr);
  j["n"] = g.n ? Json(*g.n) : Json(nullptr);
  return j;
}

Json to_json(const BoundConstants& c) {
  Json j;
  j["lr"] = to_json(c.lr);
  j["c1"] = number(c.c1);
  j["c2"] = number(c.c2);
  j["gamma1"] = c.gamma1 ? number(*c.gamma1) : Json(nullptr);
  j["gamma2"] = c.gamma2 ? number(*c.gamma2) : Json(nullptr);
  j["v_prime"] = c.v_prime ? number(*c.v_prime) : Json(nullptr);
  j["growth"] = to_json(c.growth);
  j["boundary_x"] = c.boundary_x;
  j["phi_boundary_min"] = c.phi_boundary_min;
  j["D"] = c.D;
  j["norm_w"] = number(c.norm_w);
  return j;
}

Json to_json(const PointRecord& p) {
  Json j;
  j["q"] = p.q;
  j["mu"] = number(p.mu);
  j["region"] = p.region;
  j["d"] = p.distance;
  j["t"] = number(p.t);
  j["lhs"] = number(p.lhs);
  j["rhs"] = number(p.rhs);
  j["margin"] = number(p.margin);
  j["valid"] = p.valid;
  if (p.alicki_gate) j["alicki_gate"] = *p.alicki_gate;
  return j;
}

Json to_json(const CertificationReport& r) {
  Json j;
  j["kind"] = std::string(to_string(r.kind));
  Json meta = Json::object();
  for (const auto& [k, v] : r.metadata) meta[k] = v;
  j["metadata"] = meta;
  Json regions = Json::array();
  for (const auto& reg : r.regions) regions.push_back(reg.ids());
  j["regions"] = regions;
  Json constants = Json::array();
  for (const auto& c : r.constants) {
    Json e;
    e["mu"] = number(c.mu);
    e["region"] = c.region;
    e["constants"] = to_json(c.constants);
    constants.push_back(e);
  }
  j["constants"] = constants;
  Json summary;
  summary["points"] = r.points.size();
  summary["valid_points"] = r.valid_points();
  summary["violations"] = r.violations();
  summary["min_margin"] = number(r.min_margin());
  summary["certified"] = r.certified();
  j["summary"] = summary;
  Json points = Json::array();
  for (const auto& p : r.points) points.push_back(to_json(p));
  j["points"] = points;
  return j;
}

}  // namespace detail

void write_csv(std::ostream& out, const std::vector<CertificationReport>& reports) {
  out << kCsvHeader << '\n';
  for (const auto& r : reports) {
    for (const auto& p : r.points) {
      out << fmt::format("{},{:.17g},{},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{}\n", to_string(p.kind), p.mu, p.q, p.region,
                         p.distance, p.t, p.lhs, p.rhs, p.margin, p.valid ? 1 : 0);
    }
  }
}

std::string to_csv(const std::vector<CertificationReport>& reports) {
  std::ostringstream ss;
  write_csv(ss, reports);
  return ss.str();
}

std::string to_json(const std::vector<CertificationReport>& reports,
                    const std::vector<std::pair<std::string, std::string>>& metadata) {
  detail::Json j;
  detail::Json meta = detail::Json::object();
  for (const auto& [k, v] : metadata) meta[k] = v;
  j["metadata"] = meta;
  std::size_t violations = 0;
  std::size_t points = 0;
  detail::Json list = detail::Json::array();
  for (const auto& r : reports) {
    violations += r.violations();
    points += r.points.size();
    list.push_back(detail::to_json(r));
  }
  j["summary"] = {{"reports", reports.size()}, {"points", points}, {"violations", violations}, {"certified", violations == 0}};
  j["reports"] = list;
  return j.dump(2) + "\n";
}

std::string constants_to_json(const std::vector<ConstantsEntry>& entries, const std::vector<VertexSet>& regions,
                              const std::vector<std::pair<std::string, std::string>>& metadata) {
  detail::Json j;
  detail::Json meta = detail::Json::object();
  for (const auto& [k, v] : metadata) meta[k] = v;
  j["metadata"] = meta;
  detail::Json list = detail::Json::array();
  for (const auto& e : entries) {
    detail::Json item;
    item["mu"] = detail::number(e.mu);
    item["region"] = e.region < static_cast<int>(regions.size()) ? detail::Json(regions[static_cast<std::size_t>(e.region)].ids())
                                                                 : detail::Json(nullptr);
    item["constants"] = detail::to_json(e.constants);
    list.push_back(item);
  }
  j["constants"] = list;
  return j.dump(2) + "\n";
}

}  // namespace lrcert
