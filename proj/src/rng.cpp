#include "softrgg/rng.hpp"

namespace srgg {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) noexcept : seed_(seed) {
  std::uint64_t s = seed;
  for (auto& word : state_) {
    s += kGolden;
    word = mix64(s);
  }
  // xoshiro must not start from the all-zero state.
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = kGolden;
}

RandomStream RandomStream::derive(std::uint64_t master_seed, std::uint64_t point_index,
                                  std::uint64_t trial_index) noexcept {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ mix64(point_index + 0x5851f42d4c957f2dULL));
  h = mix64(h ^ mix64(trial_index + 0x14057b7ef767814fULL));
  return RandomStream(h);
}

}  // namespace srgg
