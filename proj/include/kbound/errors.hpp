#pragma once

#include <stdexcept>
#include <string>

namespace kbound {

// Raised when an element does not lie in the ring spanned by a fixed-field
// basis (either outside the field or with non-integral coordinates).
struct NotInFixedRing : std::domain_error {
    explicit NotInFixedRing(const std::string& what) : std::domain_error(what) {}
};

// Raised when the supplied Cartan matrix is not invariant under the declared
// subgroup action.
struct ActionCartanMismatch : std::domain_error {
    explicit ActionCartanMismatch(const std::string& what) : std::domain_error(what) {}
};

// Raised when an input exceeds a documented desk-scale cap.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace kbound
