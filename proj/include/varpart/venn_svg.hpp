#pragma once

#include <string>

#include "varpart/decomposition.hpp"

namespace varpart {

struct SvgCircle {
  double cx = 0.0;
  double cy = 0.0;
  double r = 0.0;
};

/// Geometry of the two-predictor diagram. Every region's drawn area equals
/// its sum of squares times `px_per_ss`: each circle covers the predictor's
/// unique SS plus the common SS, the lens covers the common SS, and a
/// separate square covers the residual SS. Under suppression (negative common
/// SS) the circles cover only the unique SS and are drawn apart.
struct VennLayout {
  double px_per_ss = 0.0;
  SvgCircle first;
  SvgCircle second;
  double lens_area = 0.0;
  double residual_x = 0.0;
  double residual_y = 0.0;
  double residual_side = 0.0;
  double width = 0.0;
  double height = 0.0;
};

/// Area of the intersection of two circles whose centers are `d` apart.
double lens_area(double r1, double r2, double d);

/// Requires exactly two unique regions.
VennLayout two_set_layout(const VennRegions& v);

/// SVG 1.1 document. Two predictors get the proportional diagram; any other
/// count gets proportional bars, one per region.
std::string venn_svg(const VennRegions& v, const std::string& response);

}  // namespace varpart
