#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace strata::detail {

/// Exceptions must not escape an OpenMP region; the first one is kept and
/// rethrown on the calling thread.
class ErrorSlot {
public:
    template <class F>
    void run(F&& f) noexcept {
        try {
            f();
        } catch (...) {
            std::lock_guard lock(mu_);
            if (!first_) first_ = std::current_exception();
        }
    }
    void rethrow() {
        if (first_) std::rethrow_exception(first_);
    }

private:
    std::mutex mu_;
    std::exception_ptr first_;
};

/// Runs `kernel(i, out)` for i in [0, count) and concatenates the per-index
/// outputs in index order. The serial loop is the reference; the parallel
/// loop gives each thread its own buffer and merges them in thread order,
/// which together with the static schedule preserves index order.
template <class T, class Kernel>
std::vector<T> collect_indexed(std::uint64_t count, bool parallel, Kernel&& kernel) {
    std::vector<T> out;
#ifdef _OPENMP
    if (parallel && count > 1) {
        const int threads = omp_get_max_threads();
        std::vector<std::vector<T>> parts(static_cast<std::size_t>(threads));
        ErrorSlot error;
#pragma omp parallel num_threads(threads)
        {
            auto& mine = parts[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i)
                error.run([&] { kernel(static_cast<std::uint64_t>(i), mine); });
        }
        error.rethrow();
        for (auto& p : parts)
            for (auto& x : p) out.push_back(std::move(x));
        return out;
    }
#endif
    (void)parallel;
    for (std::uint64_t i = 0; i < count; ++i) kernel(i, out);
    return out;
}

/// Parallel-for over independent slots; each index writes only its own slot.
template <class Body>
void for_each_index(std::size_t count, bool parallel, Body&& body) {
#ifdef _OPENMP
    if (parallel && count > 1) {
        ErrorSlot error;
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i)
            error.run([&] { body(static_cast<std::size_t>(i)); });
        error.rethrow();
        return;
    }
#endif
    (void)parallel;
    for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace strata::detail
