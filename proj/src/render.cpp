#include "engel/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace engel {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

// Front position at parameter s by linear interpolation of the samples.
std::pair<double, double> at(const FrontDiagram& front, double s) {
  const auto& p = front.points;
  const double n = static_cast<double>(p.size());
  const double u = (s - std::floor(s)) * n;
  const std::size_t i = static_cast<std::size_t>(u) % p.size();
  const std::size_t j = (i + 1) % p.size();
  const double f = u - std::floor(u);
  return {p[i].x + f * (p[j].x - p[i].x), p[i].z + f * (p[j].z - p[i].z)};
}

}  // namespace

std::string front_svg(const FrontDiagram& front) {
  double x0 = 0.0, x1 = 1.0, z0 = 0.0, z1 = 1.0;
  if (!front.points.empty()) {
    x0 = x1 = front.points[0].x;
    z0 = z1 = front.points[0].z;
    for (const auto& p : front.points) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      z0 = std::min(z0, p.z);
      z1 = std::max(z1, p.z);
    }
  }
  const double w = std::max(x1 - x0, 1e-9), h = std::max(z1 - z0, 1e-9);
  const double vx = x0 - 0.05 * w, vy = -z1 - 0.05 * h, vw = 1.1 * w, vh = 1.1 * h;
  const double r = 0.012 * std::max(w, h);
  const double stroke = 0.004 * std::max(w, h);

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(vx) + " " + num(vy) + " " +
         num(vw) + " " + num(vh) + "\" width=\"800\" height=\"" +
         num(800.0 * vh / vw) + "\">\n";
  out += "<path class=\"front\" fill=\"none\" stroke=\"black\" stroke-width=\"" + num(stroke) + "\" d=\"";
  for (std::size_t k = 0; k < front.points.size(); ++k) {
    out += (k == 0 ? "M" : " L") + num(front.points[k].x) + "," + num(-front.points[k].z);
  }
  if (!front.points.empty()) out += " Z";
  out += "\"/>\n";

  for (const auto& c : front.cusps) {
    const bool up = c.orientation == CuspOrientation::Up;
    const double tip = up ? -r : r;
    const double x = c.x, y = -c.z;
    out += std::string("<path class=\"cusp ") + (up ? "up" : "down") + "\" fill=\"" +
           (up ? "#c0392b" : "#2471a3") + "\" d=\"M" + num(x) + "," + num(y + tip) + " L" +
           num(x - r) + "," + num(y - tip) + " L" + num(x + r) + "," + num(y - tip) + " Z\"/>\n";
  }
  for (const auto& d : front.double_points) {
    const auto [x, z] = at(front, d.s0);
    out += "<circle class=\"double-point\" fill=\"none\" stroke=\"#7d3c98\" stroke-width=\"" +
           num(stroke) + "\" cx=\"" + num(x) + "\" cy=\"" + num(-z) + "\" r=\"" + num(r) + "\"/>\n";
  }
  for (const auto& t : front.self_tangencies) {
    const auto [x, z] = at(front, t.s0);
    out += "<rect class=\"self-tangency\" fill=\"#f39c12\" x=\"" + num(x - r) + "\" y=\"" +
           num(-z - r) + "\" width=\"" + num(2 * r) + "\" height=\"" + num(2 * r) + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

void render_svg(const FrontDiagram& front, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  f << front_svg(front);
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace engel
