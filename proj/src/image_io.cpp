#include "phasebit/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace phasebit {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& is) {
    std::string tok;
    int c;
    while ((c = is.get()) != EOF) {
        if (c == '#') {
            while ((c = is.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (!std::isspace(c)) {
            tok.push_back(static_cast<char>(c));
            break;
        }
    }
    while ((c = is.get()) != EOF && !std::isspace(c))
        tok.push_back(static_cast<char>(c));
    if (tok.empty()) throw std::runtime_error("image header: unexpected EOF");
    return tok;
}

}  // namespace

Image read_image(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_image: cannot open " + path);
    const std::string magic = next_token(is);
    std::size_t channels;
    if (magic == "P5")
        channels = 1;
    else if (magic == "P6")
        channels = 3;
    else
        throw std::runtime_error("read_image: expected P5 or P6, got " + magic);
    const std::size_t w = std::stoul(next_token(is));
    const std::size_t h = std::stoul(next_token(is));
    const std::size_t maxval = std::stoul(next_token(is));
    if (maxval != 255)
        throw std::runtime_error("read_image: only 8-bit images supported");
    std::vector<std::uint8_t> raw(w * h * channels);
    is.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
    if (!is) throw std::runtime_error("read_image: truncated pixel data");
    Image img;
    img.width = w;
    img.height = h;
    img.bands.assign(channels, Vec(w * h));
    for (std::size_t p = 0; p < w * h; ++p)
        for (std::size_t b = 0; b < channels; ++b)
            img.bands[b][p] = static_cast<double>(raw[p * channels + b]) / 255.0;
    return img;
}

void write_image(const Image& img, const std::string& path) {
    const std::size_t channels = img.bands.size();
    if (channels != 1 && channels != 3)
        throw std::runtime_error("write_image: need 1 or 3 bands");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_image: cannot open " + path);
    os << (channels == 1 ? "P5" : "P6") << "\n"
       << img.width << " " << img.height << "\n255\n";
    std::vector<std::uint8_t> raw(img.pixels() * channels);
    for (std::size_t p = 0; p < img.pixels(); ++p)
        for (std::size_t b = 0; b < channels; ++b) {
            const double v = std::clamp(img.bands[b][p], 0.0, 1.0);
            raw[p * channels + b] =
                static_cast<std::uint8_t>(std::lround(v * 255.0));
        }
    os.write(reinterpret_cast<const char*>(raw.data()),
             static_cast<std::streamsize>(raw.size()));
}

double psnr(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionError("psnr: size mismatch");
    double mse = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        mse += (a[i] - b[i]) * (a[i] - b[i]);
    mse /= static_cast<double>(a.size());
    if (mse == 0.0) return HUGE_VAL;
    return -10.0 * std::log10(mse);
}

}  // namespace phasebit
