#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "apsof/core_model.hpp"

namespace apsof {

/// 8-bit RGB raster, row-major, three bytes per pixel.
struct RawImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> rgb8;

  friend bool operator==(const RawImage&, const RawImage&) = default;
};

/// Parses binary PPM (P6, maxval 255). Header tokens may be separated by any
/// whitespace and interleaved with `#` comments. Trailing bytes after the
/// payload are ignored.
RawImage load_ppm(std::span<const std::uint8_t> bytes);

/// Emits "P6\n<w> <h>\n255\n" followed by the raw triples.
std::vector<std::uint8_t> write_ppm(const RawImage& image);

RawImage read_ppm_file(const std::filesystem::path& path);
void write_ppm_file(const std::filesystem::path& path, const RawImage& image);

/// Converts bytes to reals. When max_side is given and the longer side
/// exceeds it, shrinks by the smallest integer factor f that brings the
/// longer side within max_side, averaging each f x f block (edge blocks
/// average the pixels they contain).
PixelDataset to_dataset(const RawImage& image, std::optional<std::size_t> max_side = {});

/// Paints every pixel with its cluster's prototype, rounded half-up and
/// clamped to [0, 255].
RawImage reconstruct_quantized(const PixelDataset& dataset, const Labeling& labels,
                               const CenterSet& centers);

}  // namespace apsof
