#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "lmt/table.hpp"

namespace lmt {

// .lmt file layout, little-endian throughout:
//   bytes  0..3   magic "LMT1"
//   bytes  4..7   format version (u32, currently 1)
//   bytes  8..15  start (u64)
//   bytes 16..23  count (u64)
//   bytes 24..31  flags (u64; bit 0: Ω channel present, other bits zero)
// followed by ⌈count/4⌉ bytes of 2-bit records in ascending n, four records
// per byte, low bits first (record bit 0: λ sign, 0 ↦ +1, 1 ↦ −1; record
// bit 1: square-free flag, 1 ↦ square-free), then count bytes of Ω values
// when the flag is set. Unused record slots in the final byte are zero.

inline constexpr char kMagic[4] = {'L', 'M', 'T', '1'};
inline constexpr std::uint32_t kFormatVersion = 1;
inline constexpr std::uint64_t kHeaderBytes = 32;
inline constexpr std::uint64_t kOmegaFlag = 1;

/// Exact serialized size: 32 + ⌈count/4⌉ + (count if Ω channel present).
constexpr std::uint64_t file_size_for(std::uint64_t count, bool with_omega) {
    return kHeaderBytes + (count + 3) / 4 + (with_omega ? count : 0);
}

/// Writes `table` to `out`; returns the number of bytes written.
/// Throws InvalidArgumentError for an empty table, IoError on sink failure.
std::uint64_t save(const FactorSignTable& table, std::ostream& out);
std::uint64_t save_file(const FactorSignTable& table, const std::filesystem::path& path);

/// Reads a table back. Throws FormatError on bad magic/version or when the
/// payload is shorter or longer than the header declares, IoError on stream
/// failure.
FactorSignTable load(std::istream& in);
FactorSignTable load_file(const std::filesystem::path& path);

} // namespace lmt
