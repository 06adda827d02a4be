#pragma once

#include <stdexcept>
#include <string>

namespace svq {

// Raised when a structural invariant that the suite promises to maintain is
// found broken at runtime (lattice changed under a row replacement, stored
// ground truth failing re-verification, bookkeeping mismatch). Distinct from
// invalid_argument so callers can map it to a dedicated exit code.
class VerificationError : public std::runtime_error {
public:
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace svq
