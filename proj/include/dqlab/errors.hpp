#pragma once

#include <stdexcept>
#include <string>

namespace dqlab {

// Malformed input: out-of-range ids, bad orders, unparsable files.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A query would exceed the per-round budget of an oracle.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Round bookkeeping misuse, or an adversary interaction past its r x q budget.
struct ProtocolError : std::logic_error {
  using std::logic_error::logic_error;
};

// Invalid construction parameters (generators, adversary configs).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A certificate whose block sizes do not add up to 2n - k.
struct CertificateShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace dqlab
