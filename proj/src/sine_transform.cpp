#include "sine_transform.hpp"

#include "radnls/error.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace radnls::detail {

namespace {

// FFTW planning is not thread safe; execution of an existing plan on fresh
// arrays is. Plans are created once per (kind, size) under a lock and then
// executed through the new-array interface on caller-owned buffers.
// FFTW_ESTIMATE keeps the chosen algorithm, and hence the rounding, identical
// from run to run.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(fftw_r2r_kind kind, int length) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_pair(static_cast<int>(kind), length);
        if (auto it = plans_.find(key); it != plans_.end())
            return it->second;
        std::vector<double> scratch(2 * static_cast<std::size_t>(length));
        const int dims[1] = {length};
        // Real and imaginary parts are two interleaved transforms: stride 2, distance 1.
        fftw_plan plan = fftw_plan_many_r2r(1, dims, 2, scratch.data(), nullptr, 2, 1, scratch.data(), nullptr, 2,
                                            1, &kind, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan == nullptr)
            throw ConfigError("FFTW could not create a plan of length " + std::to_string(length));
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache() {
        for (auto& [key, plan] : plans_)
            fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

} // namespace

void sine_series(std::span<cplx> data) {
    const auto n = data.size();
    fftw_plan plan = PlanCache::instance().get(FFTW_RODFT00, static_cast<int>(n - 1));
    auto* d = reinterpret_cast<double*>(data.data());
    fftw_execute_r2r(plan, d, d);
    data[n - 1] = cplx{};
}

void cosine_series(std::span<const cplx> coeffs, std::span<cplx> out) {
    const auto n = coeffs.size();
    thread_local std::vector<cplx> buffer;
    buffer.assign(n + 1, cplx{});
    for (std::size_t k = 0; k + 1 < n; ++k)
        buffer[k + 1] = coeffs[k];
    fftw_plan plan = PlanCache::instance().get(FFTW_REDFT00, static_cast<int>(n + 1));
    auto* d = reinterpret_cast<double*>(buffer.data());
    fftw_execute_r2r(plan, d, d);
    for (std::size_t j = 0; j < n; ++j)
        out[j] = buffer[j + 1];
}

} // namespace radnls::detail
