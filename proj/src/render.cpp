#include "t5/render.hpp"

#include <algorithm>
#include <cstdio>

namespace t5 {

namespace {

Vec8 node_vec(const Json& e) {
  if (e.contains("matrix")) {
    const RatMatrix m = matrix_from_json(e.at("matrix"));
    if (m.rows() != 4 || m.cols() != 2) throw ParseError("render: matrix entries must be 4x2");
    return to_float_vec(m);
  }
  if (e.contains("x")) {
    const auto& x = e.at("x");
    if (!x.is_array() || x.size() != 8) throw ParseError("render: 'x' must hold 8 numbers");
    Vec8 v;
    for (int k = 0; k < 8; ++k) v(k) = x[k].get<double>();
    return v;
  }
  throw ParseError("render: entry needs 'matrix' or 'x'");
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v == 0 ? 0.0 : v);  // no "-0.00"
  std::string s(buf);
  return s == "-0.00" ? "0.00" : s;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

RenderInput render_input_from_json(const Json& j) {
  RenderInput in;
  std::size_t npoints = 0, nvertices = 0;
  const auto add = [&](const char* key, bool vertex, const char* prefix, std::size_t& count) {
    if (!j.contains(key)) return;
    for (const auto& e : j.at(key)) {
      ++count;
      std::string label = e.contains("label") ? e.at("label").get<std::string>() : prefix + std::to_string(count);
      in.nodes.push_back({std::move(label), node_vec(e), vertex});
    }
  };
  add("points", false, "X", npoints);
  add("vertices", true, "P", nvertices);
  if (npoints > 0 && npoints == nvertices) {
    for (std::size_t k = 0; k < npoints; ++k) in.segments.emplace_back(k, npoints + k);
    for (std::size_t k = 0; k < nvertices; ++k) in.segments.emplace_back(npoints + k, npoints + (k + 1) % nvertices);
  }
  return in;
}

Projection fit_projection(const std::vector<RenderNode>& nodes) {
  Projection p;
  p.center = Vec8::Zero();
  for (const auto& n : nodes) p.center += n.x;
  if (!nodes.empty()) p.center /= static_cast<double>(nodes.size());

  Mat8 cov = Mat8::Zero();
  for (const auto& n : nodes) cov += (n.x - p.center) * (n.x - p.center).transpose();
  const Eigen::SelfAdjointEigenSolver<Mat8> es(cov);
  const auto& ev = es.eigenvalues();  // ascending
  if (nodes.size() >= 3 && ev(7) > 0 && ev(6) > 1e-12 * ev(7)) {
    for (int r = 0; r < 2; ++r) {
      Vec8 b = es.eigenvectors().col(7 - r);
      // Fix the sign so the largest component is positive.
      Eigen::Index k = 0;
      b.cwiseAbs().maxCoeff(&k);
      if (b(k) < 0) b = -b;
      p.basis.row(r) = b.transpose();
    }
    return p;
  }
  p.principal = false;
  p.basis.setZero();
  p.basis(0, 0) = p.basis(1, 1) = 1;
  return p;
}

std::string render_svg(const RenderInput& in) {
  constexpr double size = 640, margin = 48;
  const Projection proj = fit_projection(in.nodes);
  std::vector<Eigen::Vector2d> xy;
  for (const auto& n : in.nodes) xy.push_back(proj.basis * (n.x - proj.center));

  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  if (!xy.empty()) {
    lo_x = hi_x = xy[0].x();
    lo_y = hi_y = xy[0].y();
    for (const auto& v : xy) {
      lo_x = std::min(lo_x, v.x());
      hi_x = std::max(hi_x, v.x());
      lo_y = std::min(lo_y, v.y());
      hi_y = std::max(hi_y, v.y());
    }
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double scale = (size - 2 * margin) / span;
  const double cx = (lo_x + hi_x) / 2, cy = (lo_y + hi_y) / 2;
  const auto px = [&](const Eigen::Vector2d& v) { return size / 2 + (v.x() - cx) * scale; };
  const auto py = [&](const Eigen::Vector2d& v) { return size / 2 - (v.y() - cy) * scale; };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n";
  s += std::string("<!-- projection: ") + (proj.principal ? "principal plane" : "coordinates 1 and 2") + " -->\n";
  s += "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
  for (const auto& [a, b] : in.segments) {
    const bool polygon = in.nodes[a].vertex && in.nodes[b].vertex;
    s += "<line x1=\"" + num(px(xy[a])) + "\" y1=\"" + num(py(xy[a])) + "\" x2=\"" + num(px(xy[b])) + "\" y2=\"" +
         num(py(xy[b])) + "\" stroke=\"" + (polygon ? "#555555" : "black") + "\" stroke-width=\"" +
         (polygon ? "1" : "2") + "\"/>\n";
  }
  for (std::size_t k = 0; k < in.nodes.size(); ++k) {
    const auto& n = in.nodes[k];
    s += "<circle cx=\"" + num(px(xy[k])) + "\" cy=\"" + num(py(xy[k])) + "\" r=\"4\" fill=\"" +
         (n.vertex ? "white" : "black") + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(px(xy[k]) + 6) + "\" y=\"" + num(py(xy[k]) - 6) +
         "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(n.label) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace t5
