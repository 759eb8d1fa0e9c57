#pragma once

// Binary greyscale PGM ("P5", maxval 255), one byte per pixel, row-major.

#include <cctype>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "phasemag/detail/atomic_file.hpp"
#include "phasemag/detail/text.hpp"
#include "phasemag/error.hpp"
#include "phasemag/grid.hpp"

namespace phasemag {

inline constexpr std::size_t kMaxPgmSide = 16384;

[[nodiscard]] inline std::string encode_pgm(const Frame& frame) {
  detail::require_nonempty(frame.height(), frame.width(), "write_frame");
  detail::require(frame.height() <= kMaxPgmSide && frame.width() <= kMaxPgmSide,
                  ErrorKind::invalid_argument, "write_frame: frame exceeds 16384 per side");
  std::string out = "P5\n" + std::to_string(frame.width()) + " " +
                    std::to_string(frame.height()) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const double v = frame.data()[i];
    if (!(v >= 0.0 && v <= kMaxIntensity)) {
      detail::fail(ErrorKind::invalid_argument,
                   "write_frame: intensity " + detail::format_number(v) + " outside [0,255]");
    }
    out[header + i] = static_cast<char>(static_cast<unsigned char>(std::round(v)));
  }
  return out;
}

namespace detail {

class PgmHeaderReader {
 public:
  explicit PgmHeaderReader(std::string_view bytes) : bytes_(bytes) {}

  std::size_t next_number(const char* field) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
    std::size_t value = 0;
    if (start == pos_ || pos_ - start > 9 || !parse_unsigned(bytes_.substr(start, pos_ - start), value)) {
      fail(ErrorKind::format, std::string("PGM header: malformed ") + field);
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      fail(ErrorKind::format, "PGM header: missing separator before raster");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = static_cast<unsigned char>(bytes_[pos_]);
      if (std::isspace(c)) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 2;
};

}  // namespace detail

[[nodiscard]] inline Frame decode_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    detail::fail(ErrorKind::format, "not a binary PGM: magic must be P5");
  }
  detail::PgmHeaderReader reader(bytes);
  const std::size_t width = reader.next_number("width");
  const std::size_t height = reader.next_number("height");
  const std::size_t maxval = reader.next_number("maxval");
  if (width < 1 || height < 1 || width > kMaxPgmSide || height > kMaxPgmSide) {
    detail::fail(ErrorKind::format, "PGM dimensions " + std::to_string(width) + "x" +
                                        std::to_string(height) + " outside [1, 16384]");
  }
  if (maxval != 255) {
    detail::fail(ErrorKind::format, "PGM maxval must be 255, got " + std::to_string(maxval));
  }
  const std::size_t offset = reader.raster_offset();
  const std::size_t need = width * height;
  if (bytes.size() < offset + need) {
    detail::fail(ErrorKind::format, "PGM raster truncated: expected " + std::to_string(need) +
                                        " bytes, found " + std::to_string(bytes.size() - offset));
  }
  Frame frame(height, width);
  for (std::size_t i = 0; i < need; ++i) {
    frame.data()[i] = static_cast<double>(static_cast<unsigned char>(bytes[offset + i]));
  }
  return frame;
}

[[nodiscard]] inline Frame read_frame(const std::filesystem::path& path) {
  try {
    return decode_pgm(detail::read_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::format) {
      detail::fail(ErrorKind::format, path.string() + ": " + e.what());
    }
    throw;
  }
}

/// Values must lie in [0, 255]; non-integers are rounded half away from zero.
inline void write_frame(const Frame& frame, const std::filesystem::path& path) {
  detail::write_file_atomically(path, encode_pgm(frame));
}

}  // namespace phasemag
