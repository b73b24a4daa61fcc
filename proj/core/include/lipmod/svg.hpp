#pragma once

#include <string>

#include "lipmod/newton.hpp"

namespace lipmod::svg {

struct View {
  double x_min = -3.0, x_max = 3.0;
  double y_min = -3.0, y_max = 3.0;
};

/// Real points of x³y² − s x²y − x = c on the 800×600 canvas: one polyline
/// per run of each root branch, `samples` abscissae on each side of x = 0,
/// and the axis x = 0 itself when c = 0.
std::string level_plot(double s, double c, const View& view = {}, int samples = 1024);

/// Support points, the compact faces and the region under them.
std::string newton_plot(const NewtonDiagram& d, const VarNames& names = {"x", "z"});

}  // namespace lipmod::svg
