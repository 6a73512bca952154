#pragma once

#include <stdexcept>
#include <string>

namespace rwre {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedLaw : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoCoalescenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotTransientRight : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CascadeCensored : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rwre
