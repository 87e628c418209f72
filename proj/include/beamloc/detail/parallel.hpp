// SPDX-License-Identifier: Apache-2.0
//
// beamloc: localization-aided mm-wave initial access and coverage analysis
// Copyright (C) 2026 The beamloc authors
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

#ifndef BEAMLOC_DETAIL_PARALLEL_HPP
#define BEAMLOC_DETAIL_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace beamloc
{
    template <class F>
    void parallel_for(std::size_t n, unsigned threads, F &&fn)
    {
        unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
        workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex m;
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back([&]() {
                    for (std::size_t i = next++; i < n; i = next++)
                    {
                        try
                        {
                            fn(i);
                        }
                        catch (...)
                        {
                            std::lock_guard lock(m);
                            if (!error)
                                error = std::current_exception();
                            next = n;
                        }
                    }
                });
        }
        if (error)
            std::rethrow_exception(error);
    }
}

#endif
