#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mdfb {

enum class ExecMode { Serial, Parallel };

// Work is split into fixed-size chunks; each chunk gets its own RNG substream,
// and partial results are folded in chunk-index order. Output is therefore
// bit-identical for a fixed seed regardless of mode or thread count.
inline constexpr std::size_t kChunk = std::size_t{1} << 16;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t chunk_index);

// Thread count for parallel regions: MDFB_THREADS if set, otherwise the
// OpenMP default (1 without OpenMP).
int worker_count();

inline double uniform01(std::mt19937_64& g) {
    return double(g() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline double uniform_open(std::mt19937_64& g) {
    return (double(g() >> 11) + 0.5) * 0x1.0p-53;  // (0, 1)
}

inline double box_muller(std::mt19937_64& g) {
    double u1 = uniform_open(g);
    double u2 = uniform01(g);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

template <class Acc, class ChunkFn, class FoldFn>
Acc chunked_reduce(std::size_t n, ExecMode mode, Acc init, ChunkFn chunk_fn, FoldFn fold) {
    const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
    std::vector<Acc> parts(n_chunks);
    if (mode == ExecMode::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
#endif
        for (long long c = 0; c < (long long)n_chunks; ++c) {
            std::size_t b = std::size_t(c) * kChunk;
            std::size_t e = b + kChunk < n ? b + kChunk : n;
            parts[c] = chunk_fn(std::uint64_t(c), b, e);
        }
    } else {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            std::size_t b = c * kChunk;
            std::size_t e = b + kChunk < n ? b + kChunk : n;
            parts[c] = chunk_fn(std::uint64_t(c), b, e);
        }
    }
    Acc acc = init;
    for (std::size_t c = 0; c < n_chunks; ++c) acc = fold(acc, parts[c]);
    return acc;
}

// Same chunking for element-wise generation into a caller-owned buffer.
template <class ChunkFn>
void chunked_for(std::size_t n, ExecMode mode, ChunkFn chunk_fn) {
    const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
    if (mode == ExecMode::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
#endif
        for (long long c = 0; c < (long long)n_chunks; ++c) {
            std::size_t b = std::size_t(c) * kChunk;
            std::size_t e = b + kChunk < n ? b + kChunk : n;
            chunk_fn(std::uint64_t(c), b, e);
        }
    } else {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            std::size_t b = c * kChunk;
            std::size_t e = b + kChunk < n ? b + kChunk : n;
            chunk_fn(std::uint64_t(c), b, e);
        }
    }
}

}  // namespace mdfb
