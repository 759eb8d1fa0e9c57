#pragma once

// Frame sequences on disk: frame_NNNNNN.pgm files plus a key=value manifest.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "phasemag/detail/atomic_file.hpp"
#include "phasemag/detail/text.hpp"
#include "phasemag/error.hpp"
#include "phasemag/grid.hpp"
#include "phasemag/pgm.hpp"

namespace phasemag {

inline constexpr std::string_view kManifestFileName = "manifest.txt";
inline constexpr std::size_t kMaxSequenceFrames = 1'000'000;

[[nodiscard]] inline std::string frame_file_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06zu.pgm", index);
  return buf;
}

struct SequenceManifest {
  std::filesystem::path directory;
  std::size_t frame_count = 0;
  double fps = 0.0;
  std::size_t height = 0;
  std::size_t width = 0;

  [[nodiscard]] std::filesystem::path frame_path(std::size_t index) const {
    return directory / frame_file_name(index);
  }
  [[nodiscard]] std::filesystem::path manifest_path() const {
    return directory / kManifestFileName;
  }
};

[[nodiscard]] inline std::string encode_manifest(const SequenceManifest& m) {
  return "frame_count=" + std::to_string(m.frame_count) + "\n" +
         "fps=" + detail::format_number(m.fps) + "\n" +
         "height=" + std::to_string(m.height) + "\n" +
         "width=" + std::to_string(m.width) + "\n";
}

[[nodiscard]] inline SequenceManifest parse_manifest(std::string_view text,
                                                     const std::filesystem::path& directory) {
  std::map<std::string, std::string, std::less<>> fields;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      detail::fail(ErrorKind::format, "manifest: line without '=': " + std::string(line));
    }
    auto [it, inserted] = fields.emplace(std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)));
    if (!inserted) detail::fail(ErrorKind::format, "manifest: duplicate key " + it->first);
  }

  auto field = [&](const char* key) -> const std::string& {
    auto it = fields.find(key);
    if (it == fields.end()) detail::fail(ErrorKind::format, std::string("manifest: missing key ") + key);
    return it->second;
  };
  SequenceManifest m;
  m.directory = directory;
  if (!detail::parse_unsigned(field("frame_count"), m.frame_count) ||
      !detail::parse_unsigned(field("height"), m.height) ||
      !detail::parse_unsigned(field("width"), m.width) || !detail::parse_number(field("fps"), m.fps)) {
    detail::fail(ErrorKind::format, "manifest: malformed numeric value");
  }
  if (fields.size() != 4) detail::fail(ErrorKind::format, "manifest: unexpected keys");
  if (m.frame_count < 1 || m.frame_count > kMaxSequenceFrames) {
    detail::fail(ErrorKind::format, "manifest: frame_count out of range");
  }
  if (!(m.fps > 0.0)) detail::fail(ErrorKind::format, "manifest: fps must be > 0");
  if (m.height < 1 || m.width < 1 || m.height > kMaxPgmSide || m.width > kMaxPgmSide) {
    detail::fail(ErrorKind::format, "manifest: dimensions out of range");
  }
  return m;
}

/// Parses `directory/manifest.txt` and checks that exactly frame_count frame
/// files are present. Throws ErrorKind::io naming the first missing index.
[[nodiscard]] inline SequenceManifest read_manifest(const std::filesystem::path& directory) {
  const std::filesystem::path path = directory / kManifestFileName;
  SequenceManifest m = parse_manifest(detail::read_file(path), directory);
  std::error_code ec;
  for (std::size_t i = 0; i < m.frame_count; ++i) {
    if (!std::filesystem::is_regular_file(m.frame_path(i), ec)) {
      detail::fail(ErrorKind::io, "missing frame " + std::to_string(i) + " (" +
                                      m.frame_path(i).string() + ")");
    }
  }
  if (std::filesystem::exists(m.frame_path(m.frame_count), ec)) {
    detail::fail(ErrorKind::format, "manifest lists " + std::to_string(m.frame_count) +
                                        " frames but " + frame_file_name(m.frame_count) +
                                        " also exists");
  }
  return m;
}

/// Reads one frame and checks it against the manifest dimensions.
[[nodiscard]] inline Frame read_sequence_frame(const SequenceManifest& m, std::size_t index) {
  if (index >= m.frame_count) {
    detail::fail(ErrorKind::invalid_argument, "frame index " + std::to_string(index) + " out of range");
  }
  std::error_code ec;
  if (!std::filesystem::is_regular_file(m.frame_path(index), ec)) {
    detail::fail(ErrorKind::io, "missing frame " + std::to_string(index) + " (" +
                                    m.frame_path(index).string() + ")");
  }
  Frame f = read_frame(m.frame_path(index));
  if (f.height() != m.height || f.width() != m.width) {
    detail::fail(ErrorKind::format, "frame " + std::to_string(index) + " is " +
                                        std::to_string(f.height()) + "x" + std::to_string(f.width()) +
                                        ", manifest says " + std::to_string(m.height) + "x" +
                                        std::to_string(m.width));
  }
  return f;
}

[[nodiscard]] inline std::vector<Frame> read_sequence(const SequenceManifest& m) {
  std::vector<Frame> frames;
  frames.reserve(m.frame_count);
  for (std::size_t i = 0; i < m.frame_count; ++i) frames.push_back(read_sequence_frame(m, i));
  return frames;
}

/// Streams frames into a directory; the manifest is written by finish().
class SequenceWriter {
 public:
  SequenceWriter(std::filesystem::path directory, double fps) {
    detail::require(fps > 0.0 && std::isfinite(fps), ErrorKind::invalid_argument, "fps must be > 0");
    manifest_.directory = std::move(directory);
    manifest_.fps = fps;
    std::error_code ec;
    std::filesystem::create_directories(manifest_.directory, ec);
    if (ec || !std::filesystem::is_directory(manifest_.directory)) {
      detail::fail(ErrorKind::io, "cannot create directory " + manifest_.directory.string());
    }
  }

  void append(const Frame& frame) {
    if (manifest_.frame_count == 0) {
      manifest_.height = frame.height();
      manifest_.width = frame.width();
    } else if (frame.height() != manifest_.height || frame.width() != manifest_.width) {
      detail::fail(ErrorKind::size_mismatch, "sequence frame " + std::to_string(manifest_.frame_count) +
                                                 " differs in size from frame 0");
    }
    detail::require(manifest_.frame_count < kMaxSequenceFrames, ErrorKind::invalid_argument,
                    "sequence too long");
    write_frame(frame, manifest_.frame_path(manifest_.frame_count));
    ++manifest_.frame_count;
  }

  SequenceManifest finish() {
    detail::require(manifest_.frame_count >= 1, ErrorKind::invalid_argument,
                    "sequence must contain at least one frame");
    detail::write_file_atomically(manifest_.manifest_path(), encode_manifest(manifest_));
    return manifest_;
  }

 private:
  SequenceManifest manifest_;
};

inline SequenceManifest write_sequence(std::span<const Frame> frames, double fps,
                                       const std::filesystem::path& directory) {
  detail::require(!frames.empty(), ErrorKind::invalid_argument, "write_sequence: no frames");
  for (const Frame& f : frames) detail::require_same_shape(frames[0], f, "write_sequence");
  SequenceWriter writer(directory, fps);
  for (const Frame& f : frames) writer.append(f);
  return writer.finish();
}

}  // namespace phasemag
