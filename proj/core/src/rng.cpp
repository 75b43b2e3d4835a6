#include "mecsim/rng.hpp"

#include <array>
#include <vector>

namespace mecsim {

std::uint64_t derive_seed(std::uint64_t run_seed, std::string_view stream, std::uint64_t index) {
  std::vector<std::uint32_t> material = {
      static_cast<std::uint32_t>(run_seed), static_cast<std::uint32_t>(run_seed >> 32),
      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  for (char ch : stream) material.push_back(static_cast<unsigned char>(ch));
  std::seed_seq seq(material.begin(), material.end());
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace mecsim
