#ifndef QWALK_ERROR_HPP
#define QWALK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qwalk {

// Caller supplied something outside an operation's domain.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computed result broke an invariant the library guarantees
// (trace loss, window clipping, non-positive output state, ...).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qwalk

#endif  // QWALK_ERROR_HPP
