#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace scatdecay::app {

// SCATDECAY_THREADS caps the worker count; default is the hardware count.
inline unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SCATDECAY_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v >= 1) n = std::min(n, static_cast<unsigned>(v));
        } catch (const std::exception&) {
        }
    }
    return n;
}

// out[i] = fn(in[i]); results land in input order whatever the scheduling.
// The exception of the lowest failing index is rethrown.
template <typename T, typename Fn>
auto parallel_map(const std::vector<T>& in, Fn fn, unsigned threads = worker_count()) {
    using R = decltype(fn(in.front()));
    std::vector<R> out(in.size());
    std::vector<std::exception_ptr> errs(in.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < in.size(); i = next++) {
            try {
                out[i] = fn(in[i]);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(in.size())));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace scatdecay::app
