#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lrcert/bounds.hpp"

namespace lrcert {

/// Column order of report.csv.
inline constexpr const char* kCsvHeader = "kind,mu,q,region,d,t,lhs,rhs,margin,valid";

/// One row per grid point, ordered as stored. Numbers use 17 significant digits, so
/// rhs - lhs of a parsed row reproduces the margin column.
void write_csv(std::ostream& out, const std::vector<CertificationReport>& reports);
std::string to_csv(const std::vector<CertificationReport>& reports);

/// Reports with constants, regions, per-point records and a summary block.
std::string to_json(const std::vector<CertificationReport>& reports,
                    const std::vector<std::pair<std::string, std::string>>& metadata);

/// Constants-only document: one entry per (μ, region).
std::string constants_to_json(const std::vector<ConstantsEntry>& entries, const std::vector<VertexSet>& regions,
                              const std::vector<std::pair<std::string, std::string>>& metadata);

}  // namespace lrcert
