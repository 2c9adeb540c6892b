#include "lrcert/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "lrcert/errors.hpp"

namespace lrcert {

namespace {

constexpr double kPanelSize = 320.0;
constexpr double kMarginLeft = 60.0;
constexpr double kMarginTop = 40.0;
constexpr double kGap = 90.0;
constexpr double kMarginBottom = 60.0;

struct Rgb {
  double r, g, b;
};

// Piecewise-linear approximation of the viridis map.
std::string color(double u) {
  static constexpr std::array<Rgb, 5> stops{{{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  u = std::clamp(u, 0.0, 1.0) * (stops.size() - 1);
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(u), stops.size() - 2);
  const double f = u - static_cast<double>(i);
  const auto mix = [&](double a, double b) { return static_cast<int>(std::lround(a + f * (b - a))); };
  return fmt::format("#{:02x}{:02x}{:02x}", mix(stops[i].r, stops[i + 1].r), mix(stops[i].g, stops[i + 1].g),
                     mix(stops[i].b, stops[i + 1].b));
}

double transform(double v, bool log_scale) {
  if (!std::isfinite(v)) return std::numeric_limits<double>::quiet_NaN();
  return log_scale ? std::log10(std::max(v, 1e-16)) : v;
}

}  // namespace

std::string render_lightcone_svg(const std::vector<double>& t_grid, const std::vector<int>& x_grid,
                                 const std::vector<HeatmapPanel>& panels, double v_prime) {
  if (t_grid.empty() || x_grid.empty()) throw DomainError("heatmap needs non-empty grids");
  const auto nt = static_cast<Eigen::Index>(t_grid.size());
  const auto nx = static_cast<Eigen::Index>(x_grid.size());
  const double width = kMarginLeft + static_cast<double>(panels.size()) * (kPanelSize + kGap);
  const double height = kMarginTop + kPanelSize + kMarginBottom;
  const double cw = kPanelSize / static_cast<double>(nt);
  const double ch = kPanelSize / static_cast<double>(nx);

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\" "
      "font-family=\"sans-serif\" font-size=\"11\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      width, height, width, height);

  const double t_lo = t_grid.front();
  const double t_hi = t_grid.back();
  const double x_lo = x_grid.front();
  const double x_hi = x_grid.back();
  const auto px = [&](double left, double t) {
    return nt == 1 ? left + cw / 2 : left + cw / 2 + (t - t_lo) / (t_hi - t_lo) * (kPanelSize - cw);
  };
  const auto py = [&](double x) {
    const double bottom = kMarginTop + kPanelSize;
    return nx == 1 ? bottom - ch / 2 : bottom - ch / 2 - (x - x_lo) / (x_hi - x_lo) * (kPanelSize - ch);
  };

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const auto& panel = panels[p];
    if (panel.values.rows() != nx || panel.values.cols() != nt) throw DimensionError("heatmap values do not match the grids");
    const double left = kMarginLeft + static_cast<double>(p) * (kPanelSize + kGap);

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < nx; ++i) {
      for (Eigen::Index j = 0; j < nt; ++j) {
        const double v = transform(panel.values(i, j), panel.log10_scale);
        if (std::isnan(v)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    const double span = hi > lo ? hi - lo : 1.0;

    svg += fmt::format("<g>\n<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"13\">{}</text>\n", left, kMarginTop - 12, panel.title);
    for (Eigen::Index i = 0; i < nx; ++i) {
      for (Eigen::Index j = 0; j < nt; ++j) {
        const double v = transform(panel.values(i, j), panel.log10_scale);
        const std::string fill = std::isnan(v) ? std::string("#bbbbbb") : color((v - lo) / span);
        svg += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n",
                           left + static_cast<double>(j) * cw, kMarginTop + static_cast<double>(nx - 1 - i) * ch, cw + 0.05,
                           ch + 0.05, fill);
      }
    }
    svg += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"black\"/>\n",
                       left, kMarginTop, kPanelSize, kPanelSize);

    // x = v' t, clipped to the panel.
    if (v_prime > 0.0 && std::isfinite(v_prime)) {
      const double t_end = std::min(t_hi, nx == 1 ? t_hi : x_hi / v_prime);
      const double t_start = std::max(t_lo, x_lo / v_prime);
      if (t_end >= t_start) {
        svg += fmt::format(
            "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"red\" stroke-width=\"2\" "
            "stroke-dasharray=\"6,3\"/>\n",
            px(left, t_start), py(v_prime * t_start), px(left, t_end), py(v_prime * t_end));
      }
    }

    // Axes labels and scale.
    const double bottom = kMarginTop + kPanelSize;
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">t = {:.3g}</text>\n", left, bottom + 16, t_lo);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">t = {:.3g}</text>\n", left + kPanelSize, bottom + 16, t_hi);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">time t</text>\n", left + kPanelSize / 2, bottom + 32);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">x={}</text>\n", left - 4, bottom - ch / 2 + 4, x_grid.front());
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">x={}</text>\n", left - 4, kMarginTop + ch / 2 + 4, x_grid.back());
    if (std::isfinite(lo)) {
      svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}range [{:.3g}, {:.3g}]</text>\n", left, bottom + 48,
                         panel.log10_scale ? "log10 " : "", lo, hi);
    }
    svg += "</g>\n";
  }
  svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" fill=\"red\">dashed: x = v' t, v' = {:.6g}</text>\n", kMarginLeft,
                     height - 4, v_prime);
  svg += "</svg>\n";
  return svg;
}

}  // namespace lrcert
