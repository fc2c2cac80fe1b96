#include <pchain/qr/symbol.hpp>

#include <algorithm>
#include <array>
#include <climits>
#include <cstdlib>
#include <stdexcept>

namespace pchain::qr {

namespace {

// Indexed by [ecc][version]; entry 0 unused.
constexpr std::array<std::array<std::int8_t, 41>, 4> kEccCodewordsPerBlock{{
    {-1, 7,  10, 15, 20, 26, 18, 20, 24, 30, 18, 20, 24, 26, 30, 22, 24, 28, 30, 28, 28,
     28, 28, 30, 30, 26, 28, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30},
    {-1, 10, 16, 26, 18, 24, 16, 18, 22, 22, 26, 30, 22, 22, 24, 24, 28, 28, 26, 26, 26,
     26, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28},
    {-1, 13, 22, 18, 26, 18, 24, 18, 22, 20, 24, 28, 26, 24, 20, 30, 24, 28, 28, 26, 30,
     28, 30, 30, 30, 30, 28, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30},
    {-1, 17, 28, 22, 16, 22, 28, 26, 26, 24, 28, 24, 28, 22, 24, 24, 30, 28, 28, 26, 28,
     30, 24, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30},
}};

constexpr std::array<std::array<std::int8_t, 41>, 4> kErrorCorrectionBlocks{{
    {-1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 4, 4, 4, 4, 4, 6, 6, 6, 6, 7, 8,
     8, 9, 9, 10, 12, 12, 12, 13, 14, 15, 16, 17, 18, 19, 19, 20, 21, 22, 24, 25},
    {-1, 1, 1, 1, 2, 2, 4, 4, 4, 5, 5, 5, 8, 9, 9, 10, 10, 11, 13, 14, 16,
     17, 17, 18, 20, 21, 23, 25, 26, 28, 29, 31, 33, 35, 37, 38, 40, 43, 45, 47, 49},
    {-1, 1, 1, 2, 2, 4, 4, 6, 6, 8, 8, 8, 10, 12, 16, 12, 17, 16, 18, 21, 20,
     23, 23, 25, 27, 29, 34, 34, 35, 38, 40, 43, 45, 48, 51, 53, 56, 59, 62, 65, 68},
    {-1, 1, 1, 2, 4, 4, 4, 5, 6, 8, 8, 11, 11, 16, 16, 18, 16, 19, 21, 25, 25,
     25, 34, 30, 32, 35, 37, 40, 42, 45, 48, 51, 54, 57, 60, 63, 66, 70, 74, 77, 81},
}};

// Format-information bits for each level.
constexpr std::array<int, 4> kEccFormatBits{1, 0, 3, 2};

int ecc_index(Ecc e)
{
    return static_cast<int>(e);
}

int raw_data_modules(int ver)
{
    int result = (16 * ver + 128) * ver + 64;
    if (ver >= 2) {
        const int num_align = ver / 7 + 2;
        result -= (25 * num_align - 10) * num_align - 55;
        if (ver >= 7) result -= 36;
    }
    return result;
}

int data_codewords(int ver, Ecc ecc)
{
    return raw_data_modules(ver) / 8 -
           kEccCodewordsPerBlock[ecc_index(ecc)][ver] * kErrorCorrectionBlocks[ecc_index(ecc)][ver];
}

std::vector<int> alignment_positions(int ver)
{
    if (ver == 1) return {};
    const int num_align = ver / 7 + 2;
    const int step = ver == 32 ? 26 : (ver * 4 + num_align * 2 + 1) / (num_align * 2 - 2) * 2;
    std::vector<int> result;
    for (int i = 0, pos = ver * 4 + 10; i < num_align - 1; ++i, pos -= step) result.insert(result.begin(), pos);
    result.insert(result.begin(), 6);
    return result;
}

std::uint8_t gf_multiply(std::uint8_t x, std::uint8_t y)
{
    int z = 0;
    for (int i = 7; i >= 0; --i) {
        z = (z << 1) ^ ((z >> 7) * 0x11d);
        z ^= ((y >> i) & 1) * x;
    }
    return static_cast<std::uint8_t>(z);
}

std::vector<std::uint8_t> rs_divisor(int degree)
{
    std::vector<std::uint8_t> result(static_cast<std::size_t>(degree), 0);
    result.back() = 1;
    std::uint8_t root = 1;
    for (int i = 0; i < degree; ++i) {
        for (std::size_t j = 0; j < result.size(); ++j) {
            result[j] = gf_multiply(result[j], root);
            if (j + 1 < result.size()) result[j] ^= result[j + 1];
        }
        root = gf_multiply(root, 0x02);
    }
    return result;
}

std::vector<std::uint8_t> rs_remainder(std::span<const std::uint8_t> data, const std::vector<std::uint8_t>& divisor)
{
    std::vector<std::uint8_t> result(divisor.size(), 0);
    for (auto b : data) {
        const auto factor = static_cast<std::uint8_t>(b ^ result.front());
        result.erase(result.begin());
        result.push_back(0);
        for (std::size_t i = 0; i < result.size(); ++i) result[i] ^= gf_multiply(divisor[i], factor);
    }
    return result;
}

std::vector<std::uint8_t> add_ecc_and_interleave(const std::vector<std::uint8_t>& data, int ver, Ecc ecc)
{
    const int num_blocks = kErrorCorrectionBlocks[ecc_index(ecc)][ver];
    const int block_ecc_len = kEccCodewordsPerBlock[ecc_index(ecc)][ver];
    const int raw_codewords = raw_data_modules(ver) / 8;
    const int num_short_blocks = num_blocks - raw_codewords % num_blocks;
    const int short_block_len = raw_codewords / num_blocks;

    const auto divisor = rs_divisor(block_ecc_len);
    std::vector<std::vector<std::uint8_t>> blocks;
    std::size_t k = 0;
    for (int i = 0; i < num_blocks; ++i) {
        const std::size_t len = static_cast<std::size_t>(short_block_len - block_ecc_len + (i < num_short_blocks ? 0 : 1));
        std::vector<std::uint8_t> block(data.begin() + static_cast<std::ptrdiff_t>(k),
                                        data.begin() + static_cast<std::ptrdiff_t>(k + len));
        k += len;
        const auto ecc_bytes = rs_remainder(block, divisor);
        if (i < num_short_blocks) block.push_back(0);
        block.insert(block.end(), ecc_bytes.begin(), ecc_bytes.end());
        blocks.push_back(std::move(block));
    }

    std::vector<std::uint8_t> result;
    for (std::size_t i = 0; i < blocks.front().size(); ++i) {
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            // Skip the placeholder in short blocks.
            if (i != static_cast<std::size_t>(short_block_len - block_ecc_len) ||
                j >= static_cast<std::size_t>(num_short_blocks)) {
                result.push_back(blocks[j][i]);
            }
        }
    }
    return result;
}

bool mask_bit(int mask, int x, int y)
{
    switch (mask) {
    case 0: return (x + y) % 2 == 0;
    case 1: return y % 2 == 0;
    case 2: return x % 3 == 0;
    case 3: return (x + y) % 3 == 0;
    case 4: return (x / 3 + y / 2) % 2 == 0;
    case 5: return x * y % 2 + x * y % 3 == 0;
    case 6: return (x * y % 2 + x * y % 3) % 2 == 0;
    case 7: return ((x + y) % 2 + x * y % 3) % 2 == 0;
    default: throw std::invalid_argument("mask out of range");
    }
}

class BitBuffer {
public:
    void append(std::uint32_t value, int bits)
    {
        for (int i = bits - 1; i >= 0; --i) bits_.push_back(((value >> i) & 1) != 0);
    }
    std::size_t size() const { return bits_.size(); }
    std::vector<std::uint8_t> to_bytes() const
    {
        std::vector<std::uint8_t> out(bits_.size() / 8, 0);
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            if (bits_[i]) out[i >> 3] |= static_cast<std::uint8_t>(1 << (7 - (i & 7)));
        }
        return out;
    }

private:
    std::vector<bool> bits_;
};

}  // namespace

QrSymbol::QrSymbol(int version, Ecc ecc)
    : version_(version), size_(version * 4 + 17), ecc_(ecc),
      modules_(static_cast<std::size_t>(size_ * size_), false),
      is_function_(static_cast<std::size_t>(size_ * size_), false)
{
}

QrSymbol QrSymbol::encode_text(std::string_view text, Ecc ecc)
{
    return encode_bytes(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()), ecc);
}

QrSymbol QrSymbol::encode_bytes(std::span<const std::uint8_t> data, Ecc ecc)
{
    int version = 1;
    for (;; ++version) {
        if (version > 40) throw std::length_error("data too long for a QR symbol");
        const int count_bits = version <= 9 ? 8 : 16;
        const std::size_t needed = 4 + static_cast<std::size_t>(count_bits) + data.size() * 8;
        if (data.size() < (1u << count_bits) && needed <= static_cast<std::size_t>(data_codewords(version, ecc)) * 8) {
            break;
        }
    }

    const std::size_t capacity_bits = static_cast<std::size_t>(data_codewords(version, ecc)) * 8;
    BitBuffer bb;
    bb.append(0x4, 4);  // byte mode
    bb.append(static_cast<std::uint32_t>(data.size()), version <= 9 ? 8 : 16);
    for (auto b : data) bb.append(b, 8);
    bb.append(0, static_cast<int>(std::min<std::size_t>(4, capacity_bits - bb.size())));
    bb.append(0, static_cast<int>((8 - bb.size() % 8) % 8));
    for (std::uint8_t pad = 0xec; bb.size() < capacity_bits; pad ^= 0xec ^ 0x11) bb.append(pad, 8);

    QrSymbol qr(version, ecc);
    qr.draw_function_patterns();
    qr.draw_codewords(add_ecc_and_interleave(bb.to_bytes(), version, ecc));

    long best = LONG_MAX;
    int best_mask = 0;
    for (int m = 0; m < 8; ++m) {
        qr.apply_mask(m);
        qr.draw_format_bits(m);
        const long p = qr.penalty();
        if (p < best) {
            best = p;
            best_mask = m;
        }
        qr.apply_mask(m);  // XOR undoes it
    }
    qr.mask_ = best_mask;
    qr.apply_mask(best_mask);
    qr.draw_format_bits(best_mask);
    return qr;
}

void QrSymbol::set_function(int x, int y, bool dark)
{
    const auto idx = static_cast<std::size_t>(y * size_ + x);
    modules_[idx] = dark;
    is_function_[idx] = true;
}

void QrSymbol::draw_function_patterns()
{
    for (int i = 0; i < size_; ++i) {
        set_function(6, i, i % 2 == 0);
        set_function(i, 6, i % 2 == 0);
    }
    draw_finder(3, 3);
    draw_finder(size_ - 4, 3);
    draw_finder(3, size_ - 4);

    const auto pos = alignment_positions(version_);
    const auto n = pos.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if ((i == 0 && j == 0) || (i == 0 && j == n - 1) || (i == n - 1 && j == 0)) continue;
            draw_alignment(pos[i], pos[j]);
        }
    }
    // Reserve format areas; real bits are written once the mask is chosen.
    draw_format_bits(0);
    draw_version();
}

void QrSymbol::draw_finder(int cx, int cy)
{
    for (int dy = -4; dy <= 4; ++dy) {
        for (int dx = -4; dx <= 4; ++dx) {
            const int dist = std::max(std::abs(dx), std::abs(dy));
            const int x = cx + dx;
            const int y = cy + dy;
            if (x >= 0 && x < size_ && y >= 0 && y < size_) set_function(x, y, dist != 2 && dist != 4);
        }
    }
}

void QrSymbol::draw_alignment(int cx, int cy)
{
    for (int dy = -2; dy <= 2; ++dy) {
        for (int dx = -2; dx <= 2; ++dx) set_function(cx + dx, cy + dy, std::max(std::abs(dx), std::abs(dy)) != 1);
    }
}

void QrSymbol::draw_format_bits(int mask)
{
    const int data = kEccFormatBits[ecc_index(ecc_)] << 3 | mask;
    int rem = data;
    for (int i = 0; i < 10; ++i) rem = (rem << 1) ^ ((rem >> 9) * 0x537);
    const int bits = (data << 10 | rem) ^ 0x5412;
    auto bit = [bits](int i) { return ((bits >> i) & 1) != 0; };

    for (int i = 0; i <= 5; ++i) set_function(8, i, bit(i));
    set_function(8, 7, bit(6));
    set_function(8, 8, bit(7));
    set_function(7, 8, bit(8));
    for (int i = 9; i < 15; ++i) set_function(14 - i, 8, bit(i));

    for (int i = 0; i < 8; ++i) set_function(size_ - 1 - i, 8, bit(i));
    for (int i = 8; i < 15; ++i) set_function(8, size_ - 15 + i, bit(i));
    set_function(8, size_ - 8, true);  // dark module
}

void QrSymbol::draw_version()
{
    if (version_ < 7) return;
    int rem = version_;
    for (int i = 0; i < 12; ++i) rem = (rem << 1) ^ ((rem >> 11) * 0x1f25);
    const long bits = static_cast<long>(version_) << 12 | rem;
    for (int i = 0; i < 18; ++i) {
        const bool dark = ((bits >> i) & 1) != 0;
        const int a = size_ - 11 + i % 3;
        const int b = i / 3;
        set_function(a, b, dark);
        set_function(b, a, dark);
    }
}

void QrSymbol::draw_codewords(const std::vector<std::uint8_t>& codewords)
{
    std::size_t i = 0;
    const std::size_t total_bits = codewords.size() * 8;
    for (int right = size_ - 1; right >= 1; right -= 2) {
        if (right == 6) right = 5;
        for (int vert = 0; vert < size_; ++vert) {
            for (int j = 0; j < 2; ++j) {
                const int x = right - j;
                const bool upward = ((right + 1) & 2) == 0;
                const int y = upward ? size_ - 1 - vert : vert;
                const auto idx = static_cast<std::size_t>(y * size_ + x);
                if (!is_function_[idx] && i < total_bits) {
                    modules_[idx] = ((codewords[i >> 3] >> (7 - (i & 7))) & 1) != 0;
                    ++i;
                }
            }
        }
    }
}

void QrSymbol::apply_mask(int mask)
{
    for (int y = 0; y < size_; ++y) {
        for (int x = 0; x < size_; ++x) {
            const auto idx = static_cast<std::size_t>(y * size_ + x);
            if (!is_function_[idx] && mask_bit(mask, x, y)) modules_[idx] = !modules_[idx];
        }
    }
}

long QrSymbol::penalty() const
{
    long result = 0;
    auto at = [this](int x, int y) { return module(x, y); };

    // Runs of five or more in rows and columns.
    for (int pass = 0; pass < 2; ++pass) {
        for (int a = 0; a < size_; ++a) {
            int run = 0;
            bool color = false;
            for (int b = 0; b < size_; ++b) {
                const bool c = pass == 0 ? at(b, a) : at(a, b);
                if (b > 0 && c == color) {
                    ++run;
                } else {
                    if (run >= 5) result += 3 + (run - 5);
                    color = c;
                    run = 1;
                }
            }
            if (run >= 5) result += 3 + (run - 5);
        }
    }

    // 2x2 blocks.
    for (int y = 0; y < size_ - 1; ++y) {
        for (int x = 0; x < size_ - 1; ++x) {
            const bool c = at(x, y);
            if (c == at(x + 1, y) && c == at(x, y + 1) && c == at(x + 1, y + 1)) result += 3;
        }
    }

    // Finder-like 1:1:3:1:1 patterns with four light modules on one side.
    static constexpr std::array<bool, 11> kPatternA{true, false, true, true, true, false, true, false, false, false, false};
    static constexpr std::array<bool, 11> kPatternB{false, false, false, false, true, false, true, true, true, false, true};
    for (int pass = 0; pass < 2; ++pass) {
        for (int a = 0; a < size_; ++a) {
            for (int b = 0; b + 11 <= size_; ++b) {
                bool match_a = true;
                bool match_b = true;
                for (int k = 0; k < 11; ++k) {
                    const bool c = pass == 0 ? at(b + k, a) : at(a, b + k);
                    match_a = match_a && c == kPatternA[static_cast<std::size_t>(k)];
                    match_b = match_b && c == kPatternB[static_cast<std::size_t>(k)];
                }
                if (match_a) result += 40;
                if (match_b) result += 40;
            }
        }
    }

    // Dark/light balance.
    long dark = 0;
    for (bool m : modules_) dark += m ? 1 : 0;
    const long total = static_cast<long>(size_) * size_;
    const long k = (std::labs(dark * 20 - total * 10) + total - 1) / total - 1;
    result += std::max(0L, k) * 10;
    return result;
}

}  // namespace pchain::qr
