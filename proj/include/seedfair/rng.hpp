#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The seedfair Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------


#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace seedfair {

/// SplitMix64 finalizer. Used to derive independent stream seeds; never as a
/// generator on its own.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// 64-bit FNV-1a over a tag string.
constexpr std::uint64_t hash_tag(std::string_view tag) noexcept
{
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : tag)
  {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

/// Seed of the stream identified by (session seed, purpose tag, context).
/// The context word lets callers separate e.g. per-config or per-fold streams.
constexpr std::uint64_t stream_seed(std::uint64_t session_seed, std::string_view purpose,
                                    std::uint64_t context = 0) noexcept
{
  return mix64(mix64(mix64(session_seed) ^ hash_tag(purpose)) ^ context);
}

/// Portable deterministic random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are not (their algorithms vary between
/// library vendors), so integer and real draws are implemented here.
class Rng
{
public:
  explicit Rng(std::uint64_t seed)
    : engine_(seed)
  {}

  Rng(std::uint64_t session_seed, std::string_view purpose, std::uint64_t context = 0)
    : engine_(stream_seed(session_seed, purpose, context))
  {}

  std::uint64_t next_u64()
  {
    return engine_();
  }

  /// Uniform integer in [0, bound). Unbiased (rejection sampling).
  std::uint64_t uniform_index(std::uint64_t bound)
  {
    if (bound <= 1)
    {
      return 0;
    }
    std::uint64_t const limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do
    {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform01()
  {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Fisher-Yates shuffle (descending variant).
  template <typename T>
  void shuffle(std::span<T> items)
  {
    for (std::size_t i = items.size(); i > 1; --i)
    {
      auto const j = static_cast<std::size_t>(uniform_index(i));
      std::swap(items[i - 1], items[j]);
    }
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace seedfair
