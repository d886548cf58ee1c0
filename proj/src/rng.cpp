#include "jamsurv/rng.hpp"

namespace jamsurv {

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL))) {}

}  // namespace jamsurv
