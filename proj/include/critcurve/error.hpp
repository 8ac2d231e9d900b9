#pragma once

#include <stdexcept>
#include <string>

namespace critcurve {

/// Raised for contract violations and unusable inputs. The message names the
/// rule that was broken.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] void fail(const std::string& what);

inline void require(bool ok, const std::string& what) {
  if (!ok) fail(what);
}

}  // namespace critcurve
