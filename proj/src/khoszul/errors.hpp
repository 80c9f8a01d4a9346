#pragma once

#include <stdexcept>
#include <string>

namespace khoszul {

// Malformed or inconsistent input (diagram text, marking specs, options).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An algebraic invariant that must hold by construction was violated
// (d*d != 0, a lift that is not a cycle, an ill-defined induced map).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace khoszul
