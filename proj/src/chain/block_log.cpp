#include <pchain/chain/block_log.hpp>

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <iterator>
#include <system_error>

#include <pchain/common/errors.hpp>

namespace pchain::chain {

namespace {

void append_record(ByteWriter& out, const Block& block)
{
    const auto bytes = serialize_block(block);
    out.u32(static_cast<std::uint32_t>(bytes.size()));
    out.raw(bytes);
}

Bytes read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::system_error(errno, std::generic_category(), "open " + path.string());
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

Bytes encode_log(const ChainStore& store)
{
    ByteWriter out;
    out.raw(kLogMagic);
    for (const auto& b : store.blocks()) append_record(out, b);
    return std::move(out).take();
}

ChainStore decode_log(std::span<const std::uint8_t> bytes, const ChainParams& params)
{
    if (bytes.size() < kLogMagic.size() || !std::equal(kLogMagic.begin(), kLogMagic.end(), bytes.begin())) {
        throw CorruptLogError(0, "bad magic or version");
    }
    ChainStore store(params);
    ByteReader in(bytes.subspan(kLogMagic.size()));
    std::uint64_t expected = 0;
    while (!in.done()) {
        if (in.remaining() < 4) throw CorruptLogError(expected, "truncated record length");
        const auto len = in.u32();
        if (in.remaining() < len) throw CorruptLogError(expected, "truncated record");
        Block block;
        try {
            block = deserialize_block(in.raw(len));
        } catch (const Error& e) {
            throw CorruptLogError(expected, e.what());
        }
        if (expected == 0) {
            if (block != store.tip()) throw CorruptLogError(0, "genesis mismatch");
        } else {
            const auto r = store.apply_block(block);
            if (!r.ok()) throw CorruptLogError(std::min(expected, r.height), std::string(to_string(r.failure)));
        }
        ++expected;
    }
    if (expected == 0) throw CorruptLogError(0, "missing genesis");
    return store;
}

void persist(const ChainStore& store, const std::filesystem::path& path)
{
    const auto bytes = encode_log(store);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::system_error(errno, std::generic_category(), "open " + tmp.string());
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) throw std::system_error(errno, std::generic_category(), "write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

ChainStore load(const std::filesystem::path& path, const ChainParams& params)
{
    const auto bytes = read_file(path);
    return decode_log(bytes, params);
}

BlockLog::BlockLog(std::filesystem::path path, ChainStore& store) : path_(std::move(path))
{
    const bool exists = std::filesystem::exists(path_);
    if (exists) {
        store = load(path_, store.params());
    }
    fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd_ < 0) throw std::system_error(errno, std::generic_category(), "open " + path_.string());
    if (!exists) {
        ByteWriter out;
        out.raw(kLogMagic);
        append_record(out, store.tip());
        write_all(out.bytes());
    }
}

BlockLog::~BlockLog()
{
    if (fd_ >= 0) {
        ::fsync(fd_);
        ::close(fd_);
    }
}

void BlockLog::append(const Block& block)
{
    ByteWriter out;
    append_record(out, block);
    write_all(out.bytes());
}

void BlockLog::write_all(std::span<const std::uint8_t> bytes)
{
    while (!bytes.empty()) {
        const auto n = ::write(fd_, bytes.data(), bytes.size());
        if (n < 0) {
            if (errno == EINTR) continue;
            throw std::system_error(errno, std::generic_category(), "write " + path_.string());
        }
        bytes = bytes.subspan(static_cast<std::size_t>(n));
    }
    if (::fsync(fd_) != 0) throw std::system_error(errno, std::generic_category(), "fsync " + path_.string());
}

}  // namespace pchain::chain
