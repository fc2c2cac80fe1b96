#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <pchain/chain/block_log.hpp>

#include "support/harness.hpp"

using namespace pchain;
using namespace pchain::chain;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir()
    {
        path_ = fs::temp_directory_path() / ("pchain-log-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

void build_chain(test::Harness& h, std::uint64_t seed, int blocks, int txs_per_block)
{
    test::ScenarioGenerator gen(seed);
    gen.fund_all(h);
    for (int b = 0; b < blocks; ++b) {
        for (int i = 0; i < txs_per_block; ++i) gen.step(h);
        h.produce();
    }
}

// Height of the record containing byte `offset`; magic bytes map to 0.
std::uint64_t height_at(const Bytes& log, std::size_t offset)
{
    std::size_t pos = kLogMagic.size();
    std::uint64_t height = 0;
    while (pos < log.size()) {
        const std::uint32_t len = (std::uint32_t(log[pos]) << 24) | (std::uint32_t(log[pos + 1]) << 16) |
                                  (std::uint32_t(log[pos + 2]) << 8) | log[pos + 3];
        if (offset < pos + 4 + len) return height;
        pos += 4 + len;
        ++height;
    }
    return height;
}

}  // namespace

TEST(BlockLog, EncodeDecodeRoundTrip)
{
    test::Harness h;
    build_chain(h, 1, 3, 5);
    const auto bytes = encode_log(h.store());
    ASSERT_TRUE(std::equal(kLogMagic.begin(), kLogMagic.end(), bytes.begin()));
    const auto restored = decode_log(bytes, h.params());
    EXPECT_EQ(restored.tip().block_hash, h.store().tip().block_hash);
    EXPECT_EQ(restored.state(), h.state());
    EXPECT_EQ(restored.blocks(), h.store().blocks());
}

TEST(BlockLog, HundredBlocksPersistAndReload)
{
    TempDir dir;
    test::Harness h;
    build_chain(h, 2, 100, 1);
    persist(h.store(), dir / "chain.log");
    const auto restored = load(dir / "chain.log", h.params());
    EXPECT_EQ(restored.height(), h.store().height());
    EXPECT_EQ(restored.tip().block_hash, h.store().tip().block_hash);
    EXPECT_EQ(restored.state().balances, h.state().balances);
    EXPECT_EQ(restored.state().nonces, h.state().nonces);
}

TEST(BlockLog, TruncationIsCorrupt)
{
    test::Harness h;
    build_chain(h, 3, 2, 3);
    const auto bytes = encode_log(h.store());
    for (std::size_t cut : {bytes.size() - 1, bytes.size() - 40, std::size_t(7), std::size_t(3)}) {
        Bytes truncated(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(cut));
        try {
            decode_log(truncated, h.params());
            ADD_FAILURE() << "truncated log at " << cut << " accepted";
        } catch (const CorruptLogError& e) {
            EXPECT_EQ(e.code(), Errc::CorruptLog);
            EXPECT_LE(e.height(), height_at(bytes, cut));
        }
    }
}

TEST(BlockLog, BadMagicIsCorrupt)
{
    test::Harness h;
    auto bytes = encode_log(h.store());
    bytes[4] = 0x02;
    EXPECT_THROW(decode_log(bytes, h.params()), CorruptLogError);
    EXPECT_THROW(decode_log(Bytes{}, h.params()), CorruptLogError);
}

TEST(BlockLog, ForeignGenesisIsCorrupt)
{
    test::Harness h;
    const auto bytes = encode_log(h.store());
    auto other = h.params();
    other.gas.gas_price_wei *= 2;
    try {
        decode_log(bytes, other);
        ADD_FAILURE() << "foreign genesis accepted";
    } catch (const CorruptLogError& e) {
        EXPECT_EQ(e.height(), 0u);
    }
}

TEST(BlockLog, EverySingleByteFlipIsDetected)
{
    test::Harness h;
    build_chain(h, 4, 2, 2);
    const auto bytes = encode_log(h.store());
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        Bytes mutated = bytes;
        mutated[i] ^= 0x01;
        try {
            decode_log(mutated, h.params());
            ADD_FAILURE() << "flip at " << i << " not detected";
        } catch (const CorruptLogError& e) {
            EXPECT_LE(e.height(), height_at(bytes, i)) << "flip at " << i;
        }
    }
}

TEST(BlockLog, AppendWriterSurvivesReopen)
{
    TempDir dir;
    const auto path = dir / "node.log";
    test::Harness h;
    {
        ChainStore store(h.params());
        BlockLog log(path, store);
        EXPECT_TRUE(fs::exists(path));
    }
    build_chain(h, 5, 3, 3);
    {
        ChainStore store(h.params());
        BlockLog log(path, store);
        for (std::size_t i = 1; i < h.store().blocks().size(); ++i) {
            ASSERT_TRUE(store.apply_block(h.store().blocks()[i]).ok());
            log.append(h.store().blocks()[i]);
        }
    }
    ChainStore reopened(h.params());
    BlockLog log(path, reopened);
    EXPECT_EQ(reopened.tip().block_hash, h.store().tip().block_hash);
    EXPECT_EQ(reopened.state(), h.state());
}
