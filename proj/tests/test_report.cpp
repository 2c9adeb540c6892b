#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "lrcert/bounds.hpp"
#include "lrcert/report.hpp"
#include "lrcert/svg.hpp"

using namespace lrcert;

namespace {

CertificationReport sample_report() {
  CertificationReport r;
  r.kind = ReportKind::Lemma1;
  r.regions = {VertexSet{3, 4}, VertexSet{5}};
  const double lhs[] = {0.0, 1.0 / 3.0, 2.0 / 7.0, 1e-17, 0.123456789012345678};
  const double rhs[] = {0.5, std::exp(-1.0), std::sqrt(2.0) / 3.0, 1e-16, 0.123456789012345679};
  for (int i = 0; i < 5; ++i) {
    PointRecord p;
    p.mu = 0.5;
    p.q = 1 + i % 2;
    p.region = i % 2;
    p.distance = 3 + i % 2;
    p.t = 0.05 * i;
    p.lhs = lhs[i];
    p.rhs = rhs[i];
    p.margin = p.rhs - p.lhs;
    r.points.push_back(p);
  }
  BoundConstants bc;
  bc.c1 = 1.25;
  bc.c2 = 2.5;
  r.constants.push_back({0.5, 0, bc});
  return r;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  return out;
}

}  // namespace

TEST(Csv, HeaderAndRowCount) {
  const std::string csv = to_csv({sample_report()});
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, kCsvHeader);
  int rows = 0;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) ++rows;
  }
  EXPECT_EQ(rows, 5);
}

TEST(Csv, ParsedValuesReproduceMargin) {
  const auto report = sample_report();
  std::istringstream in(to_csv({report}));
  std::string line;
  std::getline(in, line);
  const auto cols = split(line, ',');
  const auto col = [&](const std::string& name) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (cols[i] == name) return i;
    }
    ADD_FAILURE() << "missing column " << name;
    return std::size_t{0};
  };
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    const double lhs = std::stod(cells[col("lhs")]);
    const double rhs = std::stod(cells[col("rhs")]);
    const double margin = std::stod(cells[col("margin")]);
    EXPECT_EQ(lhs, report.points[row].lhs);
    EXPECT_EQ(rhs, report.points[row].rhs);
    EXPECT_EQ(rhs - lhs, margin);
    ++row;
  }
  EXPECT_EQ(row, report.points.size());
}

TEST(Json, DeterministicAndParseable) {
  const std::vector<std::pair<std::string, std::string>> meta{{"tool", "lrcert"}, {"lattice", "chain:8"}};
  const auto a = to_json({sample_report()}, meta);
  const auto b = to_json({sample_report()}, meta);
  EXPECT_EQ(a, b);
  const auto doc = nlohmann::json::parse(a);
  EXPECT_FALSE(doc.empty());
  const auto c = constants_to_json(sample_report().constants, sample_report().regions, meta);
  EXPECT_EQ(c, constants_to_json(sample_report().constants, sample_report().regions, meta));
  EXPECT_TRUE(nlohmann::json::accept(c));
}

TEST(Svg, DeterministicWithGreyNonFiniteCells) {
  Eigen::MatrixXd v(3, 4);
  v << 0.0, 0.1, 0.2, 0.3, 0.5, std::nan(""), 0.7, 0.8, 1.0, 1.1, 1.2, 1.3;
  const std::vector<HeatmapPanel> panels{{"E", v, false}, {"log", v.cwiseAbs(), true}};
  const auto a = render_lightcone_svg({0.0, 0.5, 1.0, 1.5}, {0, 1, 2}, panels, 1.5);
  const auto b = render_lightcone_svg({0.0, 0.5, 1.0, 1.5}, {0, 1, 2}, panels, 1.5);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("<svg"), std::string::npos);
  EXPECT_NE(a.find("</svg>"), std::string::npos);
}
