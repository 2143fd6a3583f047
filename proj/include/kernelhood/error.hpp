#ifndef KERNELHOOD_ERROR_HPP
#define KERNELHOOD_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace kernelhood {

// Base for everything thrown by the library. `code()` is a short stable
// kebab-case tag suitable for machine grepping (the CLI prints it as
// "ERR:<code>: <message>").
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

private:
  std::string code_;
};

// Violated precondition or an input outside an operation's domain
// (unknown vertex, cyclic digraph where a DAG is required, seed not in
// the sentence universe, ...). CLI exit status 1.
class DomainError : public Error {
public:
  using Error::Error;
};

// Malformed textual input: formula syntax, edge-list files, structure
// files. Carries a position when one is known. CLI exit status 2.
class ParseError : public Error {
public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : Error("parse", message), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace kernelhood

#endif  // KERNELHOOD_ERROR_HPP
