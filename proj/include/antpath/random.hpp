#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace antpath {

using Rng = std::mt19937_64;

// Independent stream for (seed, tags...). Used to give every ant of every
// iteration its own generator so results never depend on execution order.
inline Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::vector<std::uint32_t> words;
  words.reserve(2 + 2 * tags.size());
  auto push = [&words](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (auto t : tags) push(t);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

// Derives a child seed; used where a seed value (not a generator) must be handed on.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  Rng rng = make_stream(seed, tags);
  return rng();
}

}  // namespace antpath
