#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <variant>

#include "bdiff/image.hpp"

namespace bdiff {

class ImageIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using AnyImage = std::variant<GreyImage, ColourImage>;

// Binary PNM, maxval 255 only. Header tokens are separated by whitespace and
// may be interleaved with '#' comment lines; exactly one whitespace byte
// separates maxval from the payload.
GreyImage read_pgm(std::istream& in);
ColourImage read_ppm(std::istream& in);
AnyImage read_pnm(std::istream& in);
void write_pgm(std::ostream& out, const GreyImage& img);
void write_ppm(std::ostream& out, const ColourImage& img);

/// 8-bit grey or RGB; palettes are expanded and alpha is dropped.
AnyImage read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const GreyImage& img);
void write_png(const std::filesystem::path& path, const ColourImage& img);

/// Chooses the decoder from the file's magic bytes.
AnyImage read_image(const std::filesystem::path& path);

/// Chooses the encoder from the extension: .pgm or .png for grey, .ppm or
/// .png for colour. Throws ImageIoError for anything else.
void write_image(const std::filesystem::path& path, const GreyImage& img);
void write_image(const std::filesystem::path& path, const ColourImage& img);

}  // namespace bdiff
