#include "bdiff/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace bdiff {

namespace {

constexpr std::size_t kMaxDimension = std::size_t{1} << 16;

void skip_space_and_comments(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == std::char_traits<char>::eof()) return;
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

std::size_t read_header_number(std::istream& in, const char* what) {
  skip_space_and_comments(in);
  std::size_t value = 0;
  int digits = 0;
  while (std::isdigit(in.peek())) {
    value = value * 10 + static_cast<std::size_t>(in.get() - '0');
    if (++digits > 9) throw ImageIoError(std::string("PNM ") + what + " too large");
  }
  if (digits == 0) throw ImageIoError(std::string("PNM header: missing ") + what);
  return value;
}

struct PnmHeader {
  int channels;
  std::size_t width;
  std::size_t height;
};

PnmHeader read_pnm_header(std::istream& in) {
  char magic[2] = {0, 0};
  if (!in.read(magic, 2) || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6'))
    throw ImageIoError("not a binary PGM/PPM file (expected P5 or P6)");
  PnmHeader h{magic[1] == '5' ? 1 : 3, 0, 0};
  h.width = read_header_number(in, "width");
  h.height = read_header_number(in, "height");
  const std::size_t maxval = read_header_number(in, "maxval");
  if (h.width == 0 || h.height == 0 || h.width > kMaxDimension || h.height > kMaxDimension)
    throw ImageIoError("PNM dimensions out of range");
  if (maxval != 255)
    throw ImageIoError("only maxval 255 is supported, got " + std::to_string(maxval));
  if (!std::isspace(in.get())) throw ImageIoError("PNM header: no separator before payload");
  return h;
}

std::vector<std::uint8_t> read_payload(std::istream& in, std::size_t n) {
  std::vector<std::uint8_t> data(n);
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n)
    throw ImageIoError("PNM payload truncated: expected " + std::to_string(n) +
                       " bytes, got " + std::to_string(in.gcount()));
  return data;
}

void write_pnm(std::ostream& out, char kind, std::size_t w, std::size_t h,
               std::span<const std::uint8_t> data) {
  out << 'P' << kind << '\n' << w << ' ' << h << "\n255\n";
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw ImageIoError("failed to write PNM data");
}

std::string lower_extension(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageIoError("cannot open " + path.string() + " for writing");
  return out;
}

void write_png_raw(const std::filesystem::path& path, std::size_t w, std::size_t h,
                   png_uint_32 format, const std::uint8_t* data) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(w);
  image.height = static_cast<png_uint_32>(h);
  image.format = format;
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, data, 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw ImageIoError("cannot write PNG " + path.string() + ": " + msg);
  }
}

}  // namespace

GreyImage read_pgm(std::istream& in) {
  const PnmHeader h = read_pnm_header(in);
  if (h.channels != 1) throw ImageIoError("expected a PGM (P5) file, got PPM");
  return GreyImage(h.width, h.height, read_payload(in, h.width * h.height));
}

ColourImage read_ppm(std::istream& in) {
  const PnmHeader h = read_pnm_header(in);
  if (h.channels != 3) throw ImageIoError("expected a PPM (P6) file, got PGM");
  return ColourImage(h.width, h.height, read_payload(in, 3 * h.width * h.height));
}

AnyImage read_pnm(std::istream& in) {
  const PnmHeader h = read_pnm_header(in);
  auto data = read_payload(in, h.width * h.height * static_cast<std::size_t>(h.channels));
  if (h.channels == 1) return GreyImage(h.width, h.height, std::move(data));
  return ColourImage(h.width, h.height, std::move(data));
}

void write_pgm(std::ostream& out, const GreyImage& img) {
  write_pnm(out, '5', img.width(), img.height(), img.samples());
}

void write_ppm(std::ostream& out, const ColourImage& img) {
  write_pnm(out, '6', img.width(), img.height(), img.samples());
}

AnyImage read_png(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str()))
    throw ImageIoError("cannot read PNG " + path.string() + ": " + image.message);
  const bool colour = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = colour ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const std::size_t w = image.width;
  const std::size_t h = image.height;
  if (w == 0 || h == 0 || w > kMaxDimension || h > kMaxDimension) {
    png_image_free(&image);
    throw ImageIoError("PNG dimensions out of range");
  }
  std::vector<std::uint8_t> data(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, data.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw ImageIoError("cannot decode PNG " + path.string() + ": " + msg);
  }
  if (colour) return ColourImage(w, h, std::move(data));
  return GreyImage(w, h, std::move(data));
}

void write_png(const std::filesystem::path& path, const GreyImage& img) {
  write_png_raw(path, img.width(), img.height(), PNG_FORMAT_GRAY, img.samples().data());
}

void write_png(const std::filesystem::path& path, const ColourImage& img) {
  write_png_raw(path, img.width(), img.height(), PNG_FORMAT_RGB, img.samples().data());
}

AnyImage read_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError("cannot open " + path.string());
  std::array<unsigned char, 8> sig{};
  in.read(reinterpret_cast<char*>(sig.data()), sig.size());
  const auto got = static_cast<std::size_t>(in.gcount());
  if (got == sig.size() && png_sig_cmp(sig.data(), 0, sig.size()) == 0) {
    in.close();
    return read_png(path);
  }
  if (got >= 2 && sig[0] == 'P') {
    in.clear();
    in.seekg(0);
    return read_pnm(in);
  }
  throw ImageIoError(path.string() + ": unrecognised image format");
}

void write_image(const std::filesystem::path& path, const GreyImage& img) {
  const std::string ext = lower_extension(path);
  if (ext == ".png") return write_png(path, img);
  if (ext == ".pgm") {
    auto out = open_out(path);
    return write_pgm(out, img);
  }
  throw ImageIoError("greyscale output needs a .pgm or .png extension: " + path.string());
}

void write_image(const std::filesystem::path& path, const ColourImage& img) {
  const std::string ext = lower_extension(path);
  if (ext == ".png") return write_png(path, img);
  if (ext == ".ppm") {
    auto out = open_out(path);
    return write_ppm(out, img);
  }
  throw ImageIoError("colour output needs a .ppm or .png extension: " + path.string());
}

}  // namespace bdiff
