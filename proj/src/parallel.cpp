#include "mdfb/parallel.hpp"

#include <cstdlib>
#include <string>

namespace mdfb {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed;
    std::uint64_t a = splitmix64(state);
    state = a ^ stream;
    std::uint64_t b = splitmix64(state);
    return b;
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t chunk_index) {
    return std::mt19937_64(mix_seed(seed, chunk_index));
}

int worker_count() {
    static int cached = [] {
        if (const char* env = std::getenv("MDFB_THREADS")) {
            int v = std::atoi(env);
            if (v >= 1) return v;
        }
#ifdef _OPENMP
        return omp_get_max_threads();
#else
        return 1;
#endif
    }();
    return cached;
}

}  // namespace mdfb
