#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tseek/geom.hpp"
#include "tseek/oracle1d.hpp"
#include "tseek/terrain1d.hpp"
#include "tseek/terrain25d.hpp"

namespace tseek {

enum class SvgRole { Guide, Path, Geodesic };

// Either a 1.5D side view (terrain1d, 2D lines, rays) or a 2.5D top view
// (terrain25d, 3D lines projected onto the plane). Mixing throws
// MixedDimensionality.
struct SvgScene {
  std::optional<Terrain1D> terrain1d;
  const Terrain25D* terrain25d = nullptr;
  std::vector<std::pair<SvgRole, Polyline2>> lines2;
  std::vector<std::pair<SvgRole, Polyline3>> lines3;
  std::vector<VisRay> rays;
  std::vector<Point2> markers;
  std::string title;
};

std::string export_svg(const SvgScene& scene);

}  // namespace tseek
