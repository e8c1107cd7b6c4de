#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mdfb {

// Column-major sample matrix, one source block per column.
struct SampleMatrix {
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    std::vector<double> data;
};

// File layout: magic "TVQM", u32 rows, u32 cols, u32 reserved (zero), then
// rows*cols little-endian f64 values in column-major order.
void write_sample_matrix(const std::string& path, const SampleMatrix& m);
SampleMatrix read_sample_matrix(const std::string& path);

// File layout: magic "TVQB", u32 axes, u32 reserved (zero), u64 bits per
// axis, then ceil(bits/8) bytes per axis, LSB first within each byte.
void write_description_bits(const std::string& path,
                            const std::vector<std::vector<std::uint8_t>>& axes);
std::vector<std::vector<std::uint8_t>> read_description_bits(const std::string& path);

}  // namespace mdfb
