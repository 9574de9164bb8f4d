#pragma once

#include <cstdlib>
#include <thread>

namespace hbern {

/// Worker count cap, overridable through HBERN_THREADS.
inline int worker_cap() {
    if (const char* s = std::getenv("HBERN_THREADS")) {
        const int v = std::atoi(s);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

}  // namespace hbern
