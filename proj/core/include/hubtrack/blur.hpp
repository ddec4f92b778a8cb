#pragma once

#include <vector>

#include "hubtrack/image.hpp"

namespace hubtrack {

/// Normalized 1-D Gaussian taps of radius ceil(3 sigma).
std::vector<double> gaussian_kernel(double sigma);

/// Separable Gaussian blur of a Gray8 image with replicated borders.
/// Intermediate sums stay in double precision; output is rounded once.
Image gaussian_blur(const Image& gray, double sigma);

}  // namespace hubtrack
