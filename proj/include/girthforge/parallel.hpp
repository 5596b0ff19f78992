#pragma once

#include <cstdlib>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace gf {

// Parallelism cap: GIRTHFORGE_THREADS, else hardware concurrency, clamped to [1, 8].
inline int thread_limit() {
    if (const char* env = std::getenv("GIRTHFORGE_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v > 64 ? 64 : v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    if (hc == 0) hc = 1;
    return static_cast<int>(hc > 8 ? 8 : hc);
}

// Runs attempt(k) for k = 0..max_attempts-1 in waves of thread_limit() threads.
// Returns the result of the lowest-index success, so the outcome is independent
// of scheduling.
template <typename R>
std::optional<R> first_success(int max_attempts, const std::function<std::optional<R>(int)>& attempt) {
    int T = thread_limit();
    if (T <= 1) {
        for (int k = 0; k < max_attempts; ++k)
            if (auto r = attempt(k)) return r;
        return std::nullopt;
    }
    for (int base = 0; base < max_attempts; base += T) {
        int wave = std::min(T, max_attempts - base);
        std::vector<std::optional<R>> results(wave);
        std::vector<std::thread> threads;
        threads.reserve(wave);
        for (int i = 0; i < wave; ++i)
            threads.emplace_back([&, i] { results[i] = attempt(base + i); });
        for (auto& t : threads) t.join();
        for (int i = 0; i < wave; ++i)
            if (results[i]) return results[i];
    }
    return std::nullopt;
}

}  // namespace gf
