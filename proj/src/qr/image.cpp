#include <pchain/qr/image.hpp>

#include <stdexcept>

#include <ReadBarcode.h>
#include <opencv2/imgcodecs.hpp>

namespace pchain::qr {

cv::Mat render(const QrSymbol& symbol, int scale, int border)
{
    const int side = (symbol.size() + 2 * border) * scale;
    cv::Mat img(side, side, CV_8UC1, cv::Scalar(255));
    for (int y = 0; y < symbol.size(); ++y) {
        for (int x = 0; x < symbol.size(); ++x) {
            if (!symbol.module(x, y)) continue;
            img(cv::Rect((x + border) * scale, (y + border) * scale, scale, scale)).setTo(cv::Scalar(0));
        }
    }
    return img;
}

void write_png(const QrSymbol& symbol, const std::filesystem::path& path, int scale)
{
    if (!cv::imwrite(path.string(), render(symbol, scale))) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

std::optional<std::string> detect_text(const cv::Mat& image)
{
    cv::Mat gray = image;
    if (gray.channels() != 1 || gray.depth() != CV_8U || !gray.isContinuous()) {
        throw std::invalid_argument("detect_text expects a continuous 8-bit grayscale image");
    }
    ZXing::ImageView view(gray.data, gray.cols, gray.rows, ZXing::ImageFormat::Lum);
    ZXing::ReaderOptions options;
    options.setFormats(ZXing::BarcodeFormat::QRCode);
    options.setTextMode(ZXing::TextMode::Plain);
    const auto result = ZXing::ReadBarcode(view, options);
    if (!result.isValid()) return std::nullopt;
    return result.text();
}

std::optional<std::string> read_png(const std::filesystem::path& path)
{
    cv::Mat img = cv::imread(path.string(), cv::IMREAD_GRAYSCALE);
    if (img.empty()) throw std::runtime_error("cannot read " + path.string());
    return detect_text(img);
}

}  // namespace pchain::qr
