#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <opencv2/core.hpp>

#include <pchain/qr/symbol.hpp>

namespace pchain::qr {

/// 8-bit grayscale raster, `scale` pixels per module, `border` modules of
/// light quiet zone on each side.
cv::Mat render(const QrSymbol& symbol, int scale = 8, int border = 4);

/// Throws std::runtime_error when the file cannot be written.
void write_png(const QrSymbol& symbol, const std::filesystem::path& path, int scale = 8);

/// Text of the first QR code found in the image, if any.
std::optional<std::string> detect_text(const cv::Mat& image);
/// Throws std::runtime_error when the file cannot be read.
std::optional<std::string> read_png(const std::filesystem::path& path);

}  // namespace pchain::qr
