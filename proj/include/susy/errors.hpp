#pragma once

#include <stdexcept>
#include <string>

namespace susy {

// Base of every error thrown by the library.  The CLI maps the subclasses
// onto process exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error { public: using Error::Error; };
class ArgumentError : public Error { public: using Error::Error; };
class DegenerateError : public Error { public: using Error::Error; };
class SingularityError : public Error { public: using Error::Error; };
class PoleError : public Error { public: using Error::Error; };
class ConvergenceError : public Error { public: using Error::Error; };
class ConfigurationError : public Error { public: using Error::Error; };

// admissibility failures of a transformation chain
class AdmissibilityError : public Error { public: using Error::Error; };
class NodelessViolation : public AdmissibilityError { public: using AdmissibilityError::AdmissibilityError; };
class ConditionViolation : public AdmissibilityError { public: using AdmissibilityError::AdmissibilityError; };

} // namespace susy
