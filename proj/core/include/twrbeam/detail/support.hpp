// twrbeam - distributed beamforming and achievable rate regions for
// two-way amplify-and-forward relay networks
// Copyright (C) 2026 the twrbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef TWRBEAM_DETAIL_SUPPORT_HPP
#define TWRBEAM_DETAIL_SUPPORT_HPP

#include <atomic>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace twr::detail {

/// CSCG vector with per-entry variance var(i): re, im ~ N(0, var/2).
inline Eigen::VectorXcd complex_gaussian(Eigen::Index k, const Eigen::VectorXd& variance,
                                         std::mt19937_64& rng) {
    std::normal_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXcd v(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const double s = std::sqrt(variance(i) / 2.0);
        const double re = unit(rng) * s;
        const double im = unit(rng) * s;
        v(i) = {re, im};
    }
    return v;
}

inline Eigen::VectorXcd complex_gaussian(Eigen::Index k, double variance, std::mt19937_64& rng) {
    return complex_gaussian(k, Eigen::VectorXd::Constant(k, variance), rng);
}

/// Deterministic per-task seed derivation (splitmix64 step).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Runs f(i) for i in [0, n) on a small thread pool. Nested calls run
/// serially so fan-out stays bounded. Results must be written to
/// index-addressed storage by the caller; the iteration order is
/// unspecified but the set of indices is exactly [0, n).
template <typename F>
void parallel_for(std::size_t n, F&& f, unsigned max_threads = 0) {
    static thread_local bool inside = false;
    unsigned hw = max_threads ? max_threads : std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, n));
    if (inside || workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto body = [&]() {
        inside = true;
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) break;
            f(i);
        }
        inside = false;
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 0; t + 1 < workers; ++t) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
}

} // namespace twr::detail

#endif // TWRBEAM_DETAIL_SUPPORT_HPP
