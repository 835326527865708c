// Error types shared across the library. Every failure mode carries a
// distinct type so callers can react to the specific condition.
#pragma once

#include <stdexcept>
#include <string>

namespace spectree {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// tree construction / queries
struct NotATree : Error { using Error::Error; };
struct BadLabel : Error { using Error::Error; };
struct BadSpec : Error { using Error::Error; };
struct NotAPath : Error { using Error::Error; };
struct BadVertex : Error { using Error::Error; };

// linear algebra
struct NearSingularShift : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };

// resolvent / ratio machinery
struct ShiftOutOfRange : Error { using Error::Error; };
struct BadGeometry : Error { using Error::Error; };
struct NotInKernel : Error { using Error::Error; };

// eigenvalue-only bounds
struct OutOfRange : Error { using Error::Error; };
struct NoValidZeta : Error { using Error::Error; };
struct HorizonEmpty : Error { using Error::Error; };
struct ZeroPivot : Error { using Error::Error; };

// Fiedler analysis
struct NotSimple : Error { using Error::Error; };
struct NotCaterpillar : Error { using Error::Error; };
struct AssumptionAViolated : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct BadParams : Error { using Error::Error; };

// enumeration
struct TooLarge : Error { using Error::Error; };

} // namespace spectree
