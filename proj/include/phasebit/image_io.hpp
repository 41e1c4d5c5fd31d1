#pragma once

#include <string>

#include "phasebit/types.hpp"

namespace phasebit {

/// 8-bit binary PGM (P5, one band) / PPM (P6, three bands), pixels mapped
/// linearly [0,255] <-> [0,1]. Bands are stored as planes, row-major.
struct Image {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<Vec> bands;

    std::size_t pixels() const { return width * height; }
};

Image read_image(const std::string& path);
void write_image(const Image& img, const std::string& path);

/// PSNR against a [0,1] reference: -20 log10(rms(a-b)), i.e. the usual
/// 255-scaled definition.
double psnr(const Vec& a, const Vec& b);

}  // namespace phasebit
