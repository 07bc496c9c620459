#pragma once

#include <cstdlib>
#include <string>
#include <thread>

namespace torusloops {

/// Name of the environment variable holding the default worker count.
inline constexpr const char* kWorkersEnv = "TORUSLOOPS_WORKERS";

/// requested if positive, else the environment default, else the hardware thread count.
inline int resolve_workers(int requested)
{
    if (requested > 0) return requested;
    if (const char* env = std::getenv(kWorkersEnv)) {
        try {
            int n = std::stoi(env);
            if (n > 0) return n;
        } catch (...) {
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace torusloops
