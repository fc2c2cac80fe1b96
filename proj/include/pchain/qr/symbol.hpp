#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pchain::qr {

enum class Ecc : std::uint8_t { Low, Medium, Quartile, High };

/// A QR Code Model 2 symbol holding one byte-mode segment. Rendering to an
/// image is left to the caller.
class QrSymbol {
public:
    /// Picks the smallest version (1..40) that fits. Throws
    /// std::length_error when the data exceeds version 40 capacity.
    static QrSymbol encode_bytes(std::span<const std::uint8_t> data, Ecc ecc = Ecc::Medium);
    static QrSymbol encode_text(std::string_view text, Ecc ecc = Ecc::Medium);

    int version() const { return version_; }
    int size() const { return size_; }
    Ecc ecc() const { return ecc_; }
    int mask() const { return mask_; }
    /// True for a dark module. x is the column, y the row.
    bool module(int x, int y) const { return modules_[static_cast<std::size_t>(y * size_ + x)]; }

private:
    QrSymbol(int version, Ecc ecc);

    void set_function(int x, int y, bool dark);
    void draw_function_patterns();
    void draw_finder(int cx, int cy);
    void draw_alignment(int cx, int cy);
    void draw_format_bits(int mask);
    void draw_version();
    void draw_codewords(const std::vector<std::uint8_t>& codewords);
    void apply_mask(int mask);
    long penalty() const;

    int version_;
    int size_;
    Ecc ecc_;
    int mask_ = 0;
    std::vector<bool> modules_;
    std::vector<bool> is_function_;
};

}  // namespace pchain::qr
