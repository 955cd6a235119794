#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace rittkit {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input, field mismatch or violated precondition (CLI exit 2).
class InputError : public Error {
  public:
    using Error::Error;
};

/// The inputs do not satisfy a mathematical hypothesis the operation relies on.
class HypothesisViolation : public InputError {
  public:
    using InputError::InputError;
};

/// Degree / height / search cap exceeded (CLI exit 3).
class ResourceError : public Error {
  public:
    using Error::Error;
};

/// A witness or solution needs an element outside the working field (CLI exit 4).
class FieldExtensionRequired : public Error {
  public:
    FieldExtensionRequired(std::string what, std::string equation,
                           std::optional<unsigned> cyclotomic_hint = std::nullopt)
        : Error(std::move(what)), equation_(std::move(equation)), hint_(cyclotomic_hint) {}

    /// The irreducible (or unsolved) equation whose root is missing, printed as text.
    const std::string& equation() const noexcept { return equation_; }
    /// When adjoining roots of unity suffices, the smallest cyclotomic order that does.
    std::optional<unsigned> cyclotomic_hint() const noexcept { return hint_; }

  private:
    std::string equation_;
    std::optional<unsigned> hint_;
};

}  // namespace rittkit
