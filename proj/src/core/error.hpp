#pragma once

#include <stdexcept>
#include <string>

namespace qprot {

enum class ErrorKind {
  Parse,
  Validation,
  UnknownLabel,
  Unsatisfiable,
  Config,
  MissingLiteral,
  DomainTooLarge,
  MissingRule,
  NonChannelAtom,
  InvalidArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct SourceSpan {
  int line = 1;
  int column = 1;
};

class ParseError : public Error {
 public:
  ParseError(SourceSpan span, const std::string& message)
      : Error(ErrorKind::Parse, std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message),
        span_(span),
        message_(message) {}
  SourceSpan span() const { return span_; }
  const std::string& message() const { return message_; }

 private:
  SourceSpan span_;
  std::string message_;
};

}  // namespace qprot
