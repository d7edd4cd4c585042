#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lsakit {

// Base for every error the library raises on purpose. The CLI maps the
// three families below onto exit codes 2, 3 and 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable files, malformed records, bad parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

// Input parsed fine but the data cannot support the request
// (unknown words, empty projections, too few valid items).
class DataError : public Error {
 public:
  using Error::Error;
};

// An iterative solver stopped before reaching its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::size_t iterations)
      : Error(what + " (after " + std::to_string(iterations) + " iterations)"),
        iterations_(iterations) {}
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

class UnknownWordError : public DataError {
 public:
  explicit UnknownWordError(const std::string& word)
      : DataError("unknown word: '" + word + "'"), word_(word) {}
  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

class DegenerateVectorError : public DataError {
 public:
  DegenerateVectorError() : DataError("degenerate vector") {}
};

class EmptyProjectionError : public DataError {
 public:
  EmptyProjectionError() : DataError("empty projection: no token is in the vocabulary") {}
};

class InsufficientItemsError : public DataError {
 public:
  InsufficientItemsError(const std::string& what, std::size_t valid, std::size_t required)
      : DataError(what + ": " + std::to_string(valid) + " valid items, " +
                  std::to_string(required) + " required"),
        valid_(valid) {}
  std::size_t valid() const noexcept { return valid_; }

 private:
  std::size_t valid_;
};

}  // namespace lsakit
