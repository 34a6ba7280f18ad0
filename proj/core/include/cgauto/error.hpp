#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cgauto {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different alphabets, or a word uses a foreign symbol.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// A word over a convolution alphabet is not the convolution of any tuple.
class InvalidConvolution : public Error {
 public:
  using Error::Error;
};

/// Wrong arity, track index, permutation or dimension.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// Non-canonical or empty integer encoding.
class EncodingError : public Error {
 public:
  using Error::Error;
};

/// Bad argument to a builder or combinator (orders, matrices, tables...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A relation that must be the graph of a function is not.
class FunctionalityError : public Error {
 public:
  using Error::Error;
};

/// The operation needs data the presentation does not carry.
class UnsupportedPresentation : public Error {
 public:
  using Error::Error;
};

/// Unknown relation, unbound variable, name collision in the FO layer.
class FormulaError : public Error {
 public:
  using Error::Error;
};

/// Text could not be parsed. `position` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An automaton construction exceeded the configured state budget.
class StateLimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace cgauto
