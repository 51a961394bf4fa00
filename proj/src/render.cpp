#include "finadapt/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "finadapt/solvers.hpp"

namespace finadapt {

namespace {

std::string fmt(double v) {
  char buf[64];
  if (std::abs(v) < 5e-7) v = 0.0;  // avoid "-0.000000"
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::vector<Eigen::Vector2d> polygon_cycle(const Polytope& polytope) {
  if (polytope.ambient_dimension() != 2)
    throw NotTwoDimensional("polygon_cycle: Omega must live in the plane");
  std::vector<Eigen::Vector2d> pts;
  Eigen::Vector2d centroid(0, 0);
  for (const auto& v : polytope.vertices()) {
    pts.push_back(Eigen::Vector2d(v[0], v[1]));
    centroid += pts.back();
  }
  centroid /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    const double aa = std::atan2(a.y() - centroid.y(), a.x() - centroid.x());
    const double ab = std::atan2(b.y() - centroid.y(), b.x() - centroid.x());
    if (aa != ab) return aa < ab;
    return (a - centroid).squaredNorm() < (b - centroid).squaredNorm();
  });
  return pts;
}

std::vector<Eigen::Vector2d> clip_polygon(const std::vector<Eigen::Vector2d>& polygon,
                                          const std::vector<HalfspaceRow>& halfplanes) {
  std::vector<Eigen::Vector2d> current = polygon;
  for (const auto& hp : halfplanes) {
    if (current.empty()) break;
    const Eigen::Vector2d n(hp.normal[0], hp.normal[1]);
    if (n.norm() <= 1e-12) {
      if (hp.offset < -1e-9) return {};  // 0 <= offset fails: empty piece
      continue;
    }
    std::vector<Eigen::Vector2d> next;
    const std::size_t count = current.size();
    for (std::size_t i = 0; i < count; ++i) {
      const Eigen::Vector2d& a = current[i];
      const Eigen::Vector2d& b = current[(i + 1) % count];
      const double da = n.dot(a) - hp.offset;
      const double db = n.dot(b) - hp.offset;
      const bool a_in = da <= 1e-9;
      const bool b_in = db <= 1e-9;
      if (a_in) next.push_back(a);
      if (a_in != b_in) {
        const double t = da / (da - db);
        next.push_back(a + t * (b - a));
      }
    }
    current = std::move(next);
  }
  // Deduplicate consecutive points.
  std::vector<Eigen::Vector2d> cleaned;
  for (const auto& p : current) {
    if (cleaned.empty() || (cleaned.back() - p).norm() > 1e-9) cleaned.push_back(p);
  }
  while (cleaned.size() > 1 && (cleaned.front() - cleaned.back()).norm() <= 1e-9)
    cleaned.pop_back();
  if (cleaned.size() < 3) return {};
  return cleaned;
}

std::vector<std::vector<Eigen::Vector2d>> cover_piece_polygons(const Instance& inst,
                                                               const Solution& sol) {
  if (inst.uncertainty_dim() != 2)
    throw NotTwoDimensional("cover_piece_polygons: Omega must be two-dimensional");
  const std::vector<Eigen::Vector2d> omega = polygon_cycle(inst.omega);
  const std::vector<PiecePolyhedron> pieces =
      sol.pieces ? *sol.pieces : recover_cover(inst, sol);
  std::vector<std::vector<Eigen::Vector2d>> out;
  for (const auto& piece : pieces) out.push_back(clip_polygon(omega, piece));
  return out;
}

std::string render_cover_svg(const Instance& inst, const Solution& sol) {
  const std::vector<Eigen::Vector2d> omega = polygon_cycle(inst.omega);
  const std::vector<std::vector<Eigen::Vector2d>> pieces = cover_piece_polygons(inst, sol);

  double min_x = kInf, max_x = -kInf, min_y = kInf, max_y = -kInf;
  for (const auto& p : omega) {
    min_x = std::min(min_x, p.x());
    max_x = std::max(max_x, p.x());
    min_y = std::min(min_y, p.y());
    max_y = std::max(max_y, p.y());
  }
  const double margin = 0.05 * std::max(max_x - min_x, max_y - min_y);
  const double vx = min_x - margin;
  const double vw = (max_x - min_x) + 2 * margin;
  const double vy = -(max_y + margin);  // y axis flipped so the figure is y-up
  const double vh = (max_y - min_y) + 2 * margin;

  static const char* kFills[] = {"#d55e00", "#0072b2", "#009e73", "#cc79a7", "#e69f00"};
  const double stroke = vw / 300.0;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"" +
         fmt(vx) + " " + fmt(vy) + " " + fmt(vw) + " " + fmt(vh) + "\">\n";
  auto polygon_points = [](const std::vector<Eigen::Vector2d>& poly) {
    std::string pts;
    for (const auto& p : poly) {
      if (!pts.empty()) pts += " ";
      pts += fmt(p.x()) + "," + fmt(-p.y());
    }
    return pts;
  };
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].empty()) continue;
    svg += "  <polygon points=\"" + polygon_points(pieces[i]) + "\" fill=\"" +
           kFills[i % 5] + "\" fill-opacity=\"0.4\" stroke=\"" + kFills[i % 5] +
           "\" stroke-width=\"" + fmt(stroke) + "\"/>\n";
  }
  svg += "  <polygon points=\"" + polygon_points(omega) +
         "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" + fmt(stroke * 1.5) + "\"/>\n";
  const double font = vh * 0.045;
  for (std::size_t i = 0; i < sol.ys.size(); ++i) {
    std::string label = "y" + std::to_string(i + 1) + " = (";
    for (int j = 0; j < sol.ys[i].size(); ++j) {
      if (j > 0) label += ", ";
      label += fmt(sol.ys[i][j]);
    }
    label += ")";
    svg += "  <text x=\"" + fmt(vx + 0.03 * vw) + "\" y=\"" +
           fmt(vy + (0.06 + 0.06 * static_cast<double>(i)) * vh) + "\" font-size=\"" + fmt(font) +
           "\" font-family=\"monospace\" fill=\"" + kFills[i % 5] + "\">" + label + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace finadapt
