// Copyright 2026 The ctfaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CTFAUG_UTIL_H_
#define CTFAUG_UTIL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace ctfaug {

// Lowercase hex SHA-256 digest of `data`.
std::string Sha256Hex(std::string_view data);

// 64-bit FNV-1a. Stable across platforms, used to derive sub-seeds.
std::uint64_t Fnv1a64(std::string_view data);

// Mixes a global seed with a key (e.g. a document id) into an independent
// generator seed. Output does not depend on evaluation order.
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view key);

// Uniform integer in [0, n). The standard distributions are not portable
// across library implementations, so draws go through this helper.
std::size_t UniformIndex(std::mt19937_64& rng, std::size_t n);

// Picks `k` distinct values from [0, n) and returns them sorted.
std::vector<std::size_t> SampleIndices(std::size_t n, std::size_t k,
                                       std::uint64_t seed);

std::string ReadFile(const std::string& path);

// Writes to a sibling temp file and renames it over `path`.
void WriteFileAtomic(const std::string& path, std::string_view contents);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Exceptions from workers
// are rethrown on the calling thread (the first one wins).
void ParallelFor(std::size_t n, int jobs,
                 const std::function<void(std::size_t)>& fn);

}  // namespace ctfaug

#endif  // CTFAUG_UTIL_H_
