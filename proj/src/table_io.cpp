#include "lmt/table_io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <new>
#include <ostream>
#include <string>
#include <vector>

#include "lmt/errors.hpp"

namespace lmt {

namespace {

void put_u32(std::uint8_t* out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

void put_u64(std::uint8_t* out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint32_t get_u32(const std::uint8_t* in) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[i]) << (8 * i);
    return v;
}

std::uint64_t get_u64(const std::uint8_t* in) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[i]) << (8 * i);
    return v;
}

} // namespace

std::uint64_t save(const FactorSignTable& table, std::ostream& out) {
    table.validate();

    std::array<std::uint8_t, kHeaderBytes> header{};
    std::memcpy(header.data(), kMagic, 4);
    put_u32(header.data() + 4, kFormatVersion);
    put_u64(header.data() + 8, table.start());
    put_u64(header.data() + 16, table.count());
    put_u64(header.data() + 24, table.has_omega() ? kOmegaFlag : 0);
    out.write(reinterpret_cast<const char*>(header.data()), header.size());

    // Each 64-record word pair interleaves into 16 payload bytes; the final
    // group is trimmed to the declared ⌈count/4⌉ bytes.
    const std::uint64_t payload_bytes = (table.count() + 3) / 4;
    auto sign = table.sign_words();
    auto sf = table.sf_words();
    std::vector<std::uint8_t> buf;
    buf.reserve(1 << 20);
    std::uint64_t emitted = 0;
    for (std::uint64_t w = 0; w < table.word_count(); ++w) {
        std::uint8_t group[16];
        put_u64(group, bits::interleave(sign[w] & 0xFFFFFFFFull, sf[w] & 0xFFFFFFFFull));
        put_u64(group + 8, bits::interleave(sign[w] >> 32, sf[w] >> 32));
        std::uint64_t take = std::min<std::uint64_t>(16, payload_bytes - emitted);
        buf.insert(buf.end(), group, group + take);
        emitted += take;
        if (buf.size() >= (1 << 20)) {
            out.write(reinterpret_cast<const char*>(buf.data()), buf.size());
            buf.clear();
        }
    }
    if (!buf.empty()) out.write(reinterpret_cast<const char*>(buf.data()), buf.size());
    if (table.has_omega()) {
        auto omega = table.omega_bytes();
        out.write(reinterpret_cast<const char*>(omega.data()), omega.size());
    }
    if (!out)
        throw IoError("write failure after " + std::to_string(kHeaderBytes + emitted) +
                      " bytes");
    return file_size_for(table.count(), table.has_omega());
}

std::uint64_t save_file(const FactorSignTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    std::uint64_t n = save(table, out);
    out.close();
    if (!out) throw IoError("error closing '" + path.string() + "'");
    return n;
}

FactorSignTable load(std::istream& in) {
    std::array<std::uint8_t, kHeaderBytes> header{};
    in.read(reinterpret_cast<char*>(header.data()), header.size());
    if (in.gcount() != static_cast<std::streamsize>(header.size()))
        throw FormatError("truncated header: expected 32 bytes, got " +
                          std::to_string(in.gcount()));
    if (std::memcmp(header.data(), kMagic, 4) != 0)
        throw FormatError("bad magic: not an LMT table");
    std::uint32_t version = get_u32(header.data() + 4);
    if (version != kFormatVersion)
        throw FormatError("unsupported format version " + std::to_string(version));
    std::uint64_t start = get_u64(header.data() + 8);
    std::uint64_t count = get_u64(header.data() + 16);
    std::uint64_t flags = get_u64(header.data() + 24);
    if (count == 0) throw FormatError("declared count must be >= 1");
    if (flags & ~kOmegaFlag)
        throw FormatError("unknown flag bits set: " + std::to_string(flags));
    bool with_omega = (flags & kOmegaFlag) != 0;

    const std::uint64_t payload_bytes = (count + 3) / 4;
    FactorSignTable table;
    std::vector<std::uint8_t> packed;
    try {
        table = FactorSignTable(start, count, with_omega);
        packed.assign(bits::word_count(count) * 16, 0);
    } catch (const std::bad_alloc&) {
        throw FormatError("declared count " + std::to_string(count) +
                          " cannot be allocated");
    }
    in.read(reinterpret_cast<char*>(packed.data()), payload_bytes);
    if (in.gcount() != static_cast<std::streamsize>(payload_bytes))
        throw FormatError("corrupt payload: expected " + std::to_string(payload_bytes) +
                          " record bytes, got " + std::to_string(in.gcount()));

    auto sign = table.mutable_sign_words();
    auto sf = table.mutable_sf_words();
    for (std::uint64_t w = 0; w < table.word_count(); ++w) {
        std::uint64_t lo = get_u64(packed.data() + 16 * w);
        std::uint64_t hi = get_u64(packed.data() + 16 * w + 8);
        sign[w] = bits::gather_even(lo) | (bits::gather_even(hi) << 32);
        sf[w] = bits::gather_even(lo >> 1) | (bits::gather_even(hi >> 1) << 32);
    }
    // Unused slots of the final record byte must decode to zero bits.
    unsigned used = static_cast<unsigned>(count - (table.word_count() - 1) * 64);
    sign[table.word_count() - 1] &= bits::low_mask(used);
    sf[table.word_count() - 1] &= bits::low_mask(used);

    if (with_omega) {
        auto omega = table.mutable_omega_bytes();
        in.read(reinterpret_cast<char*>(omega.data()), omega.size());
        if (in.gcount() != static_cast<std::streamsize>(omega.size()))
            throw FormatError("corrupt omega channel: expected " + std::to_string(omega.size()) +
                              " bytes, got " + std::to_string(in.gcount()));
    }
    if (in.peek() != std::char_traits<char>::eof())
        throw FormatError("trailing bytes after declared payload");
    return table;
}

FactorSignTable load_file(const std::filesystem::path& path) {
    std::error_code ec;
    std::uint64_t actual = std::filesystem::file_size(path, ec);
    if (ec) throw IoError("cannot stat '" + path.string() + "': " + ec.message());
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");

    // Cross-check the declared lengths against the real file size before
    // reading the payload.
    std::array<std::uint8_t, kHeaderBytes> header{};
    in.read(reinterpret_cast<char*>(header.data()), header.size());
    if (in.gcount() == static_cast<std::streamsize>(header.size()) &&
        std::memcmp(header.data(), kMagic, 4) == 0 &&
        get_u32(header.data() + 4) == kFormatVersion) {
        std::uint64_t count = get_u64(header.data() + 16);
        std::uint64_t flags = get_u64(header.data() + 24);
        if (count > 0 && (flags & ~kOmegaFlag) == 0) {
            std::uint64_t expected = file_size_for(count, flags & kOmegaFlag);
            if (actual != expected)
                throw FormatError("'" + path.string() + "': expected " +
                                  std::to_string(expected) + " bytes for declared count " +
                                  std::to_string(count) + ", file has " +
                                  std::to_string(actual));
        }
    }
    in.seekg(0);
    return load(in);
}

} // namespace lmt
