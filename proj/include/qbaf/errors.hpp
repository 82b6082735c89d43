#pragma once

#include <stdexcept>
#include <string>

namespace qbaf {

// Base class for everything this library throws on purpose. The CLI maps
// any Error to exit code 2 (bad input) and anything else to 3 (internal).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Graph / framework construction and decision-condition checks.
class ValidationError : public Error { public: using Error::Error; };
class CycleError : public Error { public: using Error::Error; };

// Preference orderings and their DSL.
class SyntaxError : public Error { public: using Error::Error; };
class SingleTierError : public Error { public: using Error::Error; };
class DuplicateArgumentError : public Error { public: using Error::Error; };
class UnknownArgumentError : public Error { public: using Error::Error; };

// Score extraction and semantics.
class ParamError : public Error { public: using Error::Error; };
class CoverageError : public Error { public: using Error::Error; };
class DomainError : public Error { public: using Error::Error; };
class EmptyDecisionError : public Error { public: using Error::Error; };

// Experiment harness.
class ConfigError : public Error { public: using Error::Error; };
class LengthMismatchError : public Error { public: using Error::Error; };
class EmptyError : public Error { public: using Error::Error; };

// File formats.
class ParseError : public Error { public: using Error::Error; };
class SchemaError : public Error { public: using Error::Error; };
class IoError : public Error { public: using Error::Error; };

} // namespace qbaf
