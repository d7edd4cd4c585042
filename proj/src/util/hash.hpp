#pragma once

#include <cstdint>
#include <string_view>

namespace lsakit::util {

// FNV-1a, 64 bit. Used for checksums and fingerprints, not for security.
class Fnv1a {
 public:
  void update(std::string_view bytes) {
    for (unsigned char c : bytes) {
      h_ ^= c;
      h_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t value() const noexcept { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

inline std::uint64_t fnv1a(std::string_view bytes) {
  Fnv1a f;
  f.update(bytes);
  return f.value();
}

}  // namespace lsakit::util
