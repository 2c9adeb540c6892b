#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lrcert {

/// One heatmap: rows follow the x grid, columns the t grid. Non-finite cells are drawn grey.
struct HeatmapPanel {
  std::string title;
  Eigen::MatrixXd values;
  bool log10_scale = false;
};

/// Side-by-side heatmaps over (t, x) with the line x = v' t drawn on each panel.
/// Output depends only on the inputs (fixed number formatting, no timestamps).
std::string render_lightcone_svg(const std::vector<double>& t_grid, const std::vector<int>& x_grid,
                                 const std::vector<HeatmapPanel>& panels, double v_prime);

}  // namespace lrcert
