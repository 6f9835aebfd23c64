#pragma once

// Schematic SVG of points in M^{4x2} = R^8, projected to a plane.

#include <string>
#include <utility>
#include <vector>

#include "t5/implicit.hpp"
#include "t5/report.hpp"

namespace t5 {

struct RenderNode {
  std::string label;
  Vec8 x;
  bool vertex = false;
};

struct RenderInput {
  std::vector<RenderNode> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> segments;
};

/// Accepts {"points": [...], "vertices": [...]} where each entry carries an
/// exact "matrix" (4x2) or a float vec "x" (8 numbers) and an optional "label".
/// With equally many points and vertices, X_j - P_j segments and the polygon
/// through the vertices are added.
RenderInput render_input_from_json(const Json& j);

struct Projection {
  Eigen::Matrix<double, 2, 8> basis;
  Vec8 center;
  bool principal = true;  // false: fallback to coordinates 1 and 2
};

/// Least-squares principal plane of the nodes; falls back to coordinates
/// (1, 2) when the nodes do not span two dimensions.
Projection fit_projection(const std::vector<RenderNode>& nodes);

std::string render_svg(const RenderInput& in);

}  // namespace t5
