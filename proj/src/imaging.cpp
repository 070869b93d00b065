#include "apsof/imaging.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

namespace apsof {

namespace {

bool is_space(std::uint8_t c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and comments, then reads a run of decimal digits.
  std::size_t read_number(const char* what) {
    skip_separators();
    if (pos_ >= bytes_.size()) {
      throw Error(ErrorCode::malformed_header, std::string("missing ") + what);
    }
    if (bytes_[pos_] == '-') {
      throw Error(ErrorCode::bad_dimensions, std::string("negative ") + what);
    }
    if (!std::isdigit(bytes_[pos_])) {
      throw Error(ErrorCode::malformed_header, std::string("expected digits for ") + what);
    }
    std::size_t value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > (std::size_t{1} << 32)) {
        throw Error(ErrorCode::malformed_header, std::string(what) + " too large");
      }
      ++pos_;
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the payload.
  void consume_single_space() {
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
      throw Error(ErrorCode::malformed_header, "missing whitespace before payload");
    }
    ++pos_;
  }

  std::size_t position() const noexcept { return pos_; }

 private:
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

RawImage load_ppm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') {
    throw Error(ErrorCode::bad_magic, "not a binary PPM (expected P6)");
  }
  HeaderReader header(bytes);
  const std::size_t width = header.read_number("width");
  const std::size_t height = header.read_number("height");
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::bad_dimensions, "image dimensions must be positive");
  }
  const std::size_t maxval = header.read_number("maxval");
  if (maxval != 255) {
    throw Error(ErrorCode::bad_maxval, "only maxval 255 is supported, got " + std::to_string(maxval));
  }
  header.consume_single_space();

  const std::size_t start = header.position();
  if (height > bytes.size() / 3 / width) {
    throw Error(ErrorCode::truncated_payload, "payload shorter than declared dimensions");
  }
  const std::size_t payload = width * height * 3;
  if (bytes.size() - start < payload) {
    throw Error(ErrorCode::truncated_payload,
                "expected " + std::to_string(payload) + " payload bytes, found " +
                    std::to_string(bytes.size() - start));
  }
  RawImage image{width, height, {}};
  image.rgb8.assign(bytes.begin() + static_cast<std::ptrdiff_t>(start),
                    bytes.begin() + static_cast<std::ptrdiff_t>(start + payload));
  return image;
}

std::vector<std::uint8_t> write_ppm(const RawImage& image) {
  if (image.width == 0 || image.height == 0 ||
      image.rgb8.size() != image.width * image.height * 3) {
    throw Error(ErrorCode::invalid_argument, "image byte count does not match dimensions");
  }
  const std::string header =
      "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.rgb8.begin(), image.rgb8.end());
  return out;
}

RawImage read_ppm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return load_ppm(bytes);
}

void write_ppm_file(const std::filesystem::path& path, const RawImage& image) {
  const auto bytes = write_ppm(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::io_error, "short write to " + path.string());
}

PixelDataset to_dataset(const RawImage& image, std::optional<std::size_t> max_side) {
  if (image.width == 0 || image.height == 0 ||
      image.rgb8.size() != image.width * image.height * 3) {
    throw Error(ErrorCode::invalid_argument, "image byte count does not match dimensions");
  }
  if (max_side && *max_side == 0) throw Error(ErrorCode::invalid_argument, "max_side must be positive");

  const std::size_t longer = std::max(image.width, image.height);
  if (!max_side || longer <= *max_side) {
    std::vector<double> values(image.rgb8.begin(), image.rgb8.end());
    return PixelDataset(std::move(values), 3, image.width, image.height);
  }

  const std::size_t factor = (longer + *max_side - 1) / *max_side;
  const std::size_t out_w = (image.width + factor - 1) / factor;
  const std::size_t out_h = (image.height + factor - 1) / factor;
  std::vector<double> values(out_w * out_h * 3, 0.0);
  for (std::size_t by = 0; by < out_h; ++by) {
    for (std::size_t bx = 0; bx < out_w; ++bx) {
      double sum[3] = {0.0, 0.0, 0.0};
      std::size_t count = 0;
      for (std::size_t y = by * factor; y < std::min(image.height, (by + 1) * factor); ++y) {
        for (std::size_t x = bx * factor; x < std::min(image.width, (bx + 1) * factor); ++x) {
          const std::size_t src = (y * image.width + x) * 3;
          for (int c = 0; c < 3; ++c) sum[c] += image.rgb8[src + c];
          ++count;
        }
      }
      double* dst = &values[(by * out_w + bx) * 3];
      for (int c = 0; c < 3; ++c) dst[c] = sum[c] / static_cast<double>(count);
    }
  }
  return PixelDataset(std::move(values), 3, out_w, out_h);
}

RawImage reconstruct_quantized(const PixelDataset& dataset, const Labeling& labels,
                               const CenterSet& centers) {
  if (dataset.dim() != 3 || centers.dim() != 3) {
    throw Error(ErrorCode::invalid_argument, "quantized output requires 3-channel colors");
  }
  if (labels.size() != dataset.size()) {
    throw Error(ErrorCode::invalid_argument, "label count differs from pixel count");
  }
  RawImage image{dataset.width(), dataset.height(), std::vector<std::uint8_t>(dataset.size() * 3)};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= centers.size()) {
      throw Error(ErrorCode::invalid_argument, "label refers to a missing center");
    }
    const auto c = centers.center(labels[i]);
    for (std::size_t k = 0; k < 3; ++k) {
      image.rgb8[i * 3 + k] =
          static_cast<std::uint8_t>(std::clamp(std::floor(c[k] + 0.5), 0.0, kMaxComponent));
    }
  }
  return image;
}

}  // namespace apsof
