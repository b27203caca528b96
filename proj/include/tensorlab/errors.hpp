#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tensorlab {

/// A computation refused to run because its search space or problem size
/// exceeds a documented cap. The CLI maps this to exit code 3.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::uint64_t requested, std::uint64_t cap)
      : std::runtime_error(what + " (requested " + std::to_string(requested) +
                           ", cap " + std::to_string(cap) + ")"),
        requested_(requested),
        cap_(cap) {}

  std::uint64_t requested() const { return requested_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t requested_;
  std::uint64_t cap_;
};

}  // namespace tensorlab
