#include "mdfb/tvq_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace mdfb {

namespace {

void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(char((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(char((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const std::string& buf, std::size_t off) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(std::uint8_t(buf[off + i])) << (8 * i);
    return v;
}

std::uint64_t get_u64(const std::string& buf, std::size_t off) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(std::uint8_t(buf[off + i])) << (8 * i);
    return v;
}

std::string read_whole_file(const std::string& path, const char* where) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument(std::string(where) + ": cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return buf;
}

void write_whole_file(const std::string& path, const std::string& buf, const char* where) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument(std::string(where) + ": cannot open " + path);
    out.write(buf.data(), std::streamsize(buf.size()));
    if (!out) throw std::runtime_error(std::string(where) + ": short write to " + path);
}

}  // namespace

void write_sample_matrix(const std::string& path, const SampleMatrix& m) {
    const char* where = "tvq_io.write_sample_matrix";
    std::uint64_t expected = std::uint64_t(m.rows) * m.cols;
    if (m.data.size() != expected)
        throw std::invalid_argument(std::string(where) + ": data size does not match rows*cols");
    std::string buf;
    buf.reserve(16 + 8 * m.data.size());
    buf.append("TVQM", 4);
    put_u32(buf, m.rows);
    put_u32(buf, m.cols);
    put_u32(buf, 0);
    for (double x : m.data) put_u64(buf, std::bit_cast<std::uint64_t>(x));
    write_whole_file(path, buf, where);
}

SampleMatrix read_sample_matrix(const std::string& path) {
    const char* where = "tvq_io.read_sample_matrix";
    std::string buf = read_whole_file(path, where);
    if (buf.size() < 16 || buf.compare(0, 4, "TVQM") != 0)
        throw std::invalid_argument(std::string(where) + ": not a TVQM file: " + path);
    SampleMatrix m;
    m.rows = get_u32(buf, 4);
    m.cols = get_u32(buf, 8);
    std::uint64_t count = std::uint64_t(m.rows) * m.cols;
    if (buf.size() != 16 + 8 * count)
        throw std::invalid_argument(std::string(where) + ": size mismatch in " + path);
    m.data.resize(count);
    for (std::uint64_t i = 0; i < count; ++i)
        m.data[i] = std::bit_cast<double>(get_u64(buf, 16 + 8 * i));
    return m;
}

void write_description_bits(const std::string& path,
                            const std::vector<std::vector<std::uint8_t>>& axes) {
    const char* where = "tvq_io.write_description_bits";
    std::uint64_t bits = axes.empty() ? 0 : axes.front().size();
    for (const auto& ax : axes) {
        if (ax.size() != bits)
            throw std::invalid_argument(std::string(where) + ": axes differ in length");
        for (std::uint8_t b : ax)
            if (b > 1) throw std::invalid_argument(std::string(where) + ": bits must be 0 or 1");
    }
    std::string buf;
    std::uint64_t bytes_per_axis = (bits + 7) / 8;
    buf.reserve(20 + axes.size() * bytes_per_axis);
    buf.append("TVQB", 4);
    put_u32(buf, std::uint32_t(axes.size()));
    put_u32(buf, 0);
    put_u64(buf, bits);
    for (const auto& ax : axes) {
        for (std::uint64_t byte = 0; byte < bytes_per_axis; ++byte) {
            std::uint8_t packed = 0;
            for (int k = 0; k < 8; ++k) {
                std::uint64_t i = byte * 8 + std::uint64_t(k);
                if (i < bits && ax[i]) packed |= std::uint8_t(1u << k);
            }
            buf.push_back(char(packed));
        }
    }
    write_whole_file(path, buf, where);
}

std::vector<std::vector<std::uint8_t>> read_description_bits(const std::string& path) {
    const char* where = "tvq_io.read_description_bits";
    std::string buf = read_whole_file(path, where);
    if (buf.size() < 20 || buf.compare(0, 4, "TVQB") != 0)
        throw std::invalid_argument(std::string(where) + ": not a TVQB file: " + path);
    std::uint32_t n_axes = get_u32(buf, 4);
    std::uint64_t bits = get_u64(buf, 12);
    std::uint64_t bytes_per_axis = (bits + 7) / 8;
    if (buf.size() != 20 + std::uint64_t(n_axes) * bytes_per_axis)
        throw std::invalid_argument(std::string(where) + ": size mismatch in " + path);
    std::vector<std::vector<std::uint8_t>> axes(n_axes);
    for (std::uint32_t a = 0; a < n_axes; ++a) {
        axes[a].resize(bits);
        std::size_t base = 20 + std::size_t(a) * bytes_per_axis;
        for (std::uint64_t i = 0; i < bits; ++i) {
            std::uint8_t byte = std::uint8_t(buf[base + i / 8]);
            axes[a][i] = (byte >> (i % 8)) & 1u;
        }
    }
    return axes;
}

}  // namespace mdfb
