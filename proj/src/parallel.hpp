#pragma once

#include <atomic>
#include <cstdlib>
#include <future>
#include <thread>

namespace sumsetkit::detail {

/// Worker budget for optional data parallelism. SUMSETKIT_THREADS caps it;
/// 0 or unset means the hardware default. Outputs never depend on schedule.
inline std::atomic<int>& thread_tokens() {
    static std::atomic<int> tokens = [] {
        unsigned n = std::thread::hardware_concurrency();
        if (const char* env = std::getenv("SUMSETKIT_THREADS")) {
            const long v = std::atol(env);
            if (v > 0) n = static_cast<unsigned>(v);
        }
        return static_cast<int>(n > 0 ? n - 1 : 0); // tokens = extra workers
    }();
    return tokens;
}

/// Run f and g, concurrently when a worker token is free.
template <class F, class G>
void invoke_pair(F&& f, G&& g) {
    auto& tokens = thread_tokens();
    int avail = tokens.load(std::memory_order_relaxed);
    while (avail > 0 &&
           !tokens.compare_exchange_weak(avail, avail - 1, std::memory_order_relaxed)) {
    }
    if (avail > 0) {
        auto fut = std::async(std::launch::async, [&] {
            f();
            tokens.fetch_add(1, std::memory_order_relaxed);
        });
        g();
        fut.get();
    } else {
        f();
        g();
    }
}

} // namespace sumsetkit::detail
