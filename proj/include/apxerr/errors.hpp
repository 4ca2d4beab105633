#pragma once

#include <stdexcept>
#include <string>

namespace apxerr {

// Exit-code taxonomy used by the CLI:
//   InputError      -> 1 (parse errors, arity mismatches, bad specs)
//   ResourceError   -> 2 (enumeration/table/query caps)
//   InvariantError  -> 3 (internal consistency failure; always a bug)
//   MismatchError   -> 4 (verify: engine vs oracle disagreement)

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : InputError {
  using InputError::InputError;
};

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

struct MismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace apxerr
