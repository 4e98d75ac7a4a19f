// parallel.cpp — worker count from the environment

#include "flr4/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace flr4 {

std::size_t worker_count()
{
    std::size_t hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const char* env = std::getenv("FLR4_THREADS");
    if (env == nullptr || *env == '\0') return hw;
    std::size_t requested = 0;
    const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), requested);
    if (ec != std::errc{} || *ptr != '\0' || requested == 0) return hw;
    return requested;
}

} // namespace flr4
