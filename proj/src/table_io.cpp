#include "mulab/table_io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace mulab {

namespace {

constexpr char kMagic[4] = {'M', 'L', 'T', 'B'};
constexpr uint8_t kVersion = 0x01;

void put_u64_le(std::ostream& os, uint64_t v) {
    std::array<char, 8> b;
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b.data(), 8);
}

uint64_t get_u64_le(std::istream& is) {
    std::array<unsigned char, 8> b{};
    is.read(reinterpret_cast<char*>(b.data()), 8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
    return v;
}

}  // namespace

void write_table(const ArithmeticTable& table, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::invalid_argument("write_table: cannot open '" + path + "' for writing");
    os.write(kMagic, 4);
    os.put(static_cast<char>(kVersion));
    os.put(static_cast<char>(static_cast<uint8_t>(table.fn)));
    put_u64_le(os, table.start);
    put_u64_le(os, table.size());
    os.write(reinterpret_cast<const char*>(table.values.data()),
             static_cast<std::streamsize>(table.size()));
    if (!os) throw std::runtime_error("write_table: write failed for '" + path + "'");
}

ArithmeticTable read_table(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::invalid_argument("read_table: cannot open '" + path + "'");

    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::invalid_argument("read_table: '" + path + "' is not an MLTB table (bad magic)");
    const int version = is.get();
    if (version != kVersion)
        throw std::invalid_argument("read_table: unsupported MLTB version " + std::to_string(version));
    const int fn_byte = is.get();
    if (fn_byte < 0 || fn_byte > 2)
        throw std::invalid_argument("read_table: invalid function byte " + std::to_string(fn_byte));

    ArithmeticTable table;
    table.fn = static_cast<FunctionId>(fn_byte);
    table.start = get_u64_le(is);
    const uint64_t length = get_u64_le(is);
    if (!is || table.start == 0 || length == 0)
        throw std::invalid_argument("read_table: corrupt MLTB header in '" + path + "'");

    table.values.resize(length);
    is.read(reinterpret_cast<char*>(table.values.data()), static_cast<std::streamsize>(length));
    if (static_cast<uint64_t>(is.gcount()) != length)
        throw std::invalid_argument("read_table: truncated MLTB payload in '" + path + "'");

    const bool liouville = table.fn == FunctionId::Liouville;
    const bool squared = table.fn == FunctionId::MobiusSquared;
    for (uint64_t i = 0; i < length; ++i) {
        const int8_t v = table.values[i];
        const bool ok = squared ? (v == 0 || v == 1)
                     : liouville ? (v == -1 || v == 1)
                                 : (v >= -1 && v <= 1);
        if (!ok)
            throw std::invalid_argument("read_table: value " + std::to_string(int(v)) + " at n=" +
                                        std::to_string(table.start + i) + " outside the allowed range");
    }
    return table;
}

}  // namespace mulab
