/// @file error.hpp
/// @brief Error hierarchy shared by all verity modules.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace verity {

/// Root type for every error the library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// A model reply (grade, verdict, triple line, claim class) could not be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A judge reply contained both PASS and FAIL.
class AmbiguousReply : public ParseError {
public:
    using ParseError::ParseError;
};

/// A backend request failed after the retry budget was spent.
class BackendError : public Error {
public:
    BackendError(const std::string& what, int status = 0, int attempts = 1)
        : Error(what), status_(status), attempts_(attempts) {}

    int status() const { return status_; }
    int attempts() const { return attempts_; }

private:
    int status_;
    int attempts_;
};

class TimeoutError : public BackendError {
public:
    explicit TimeoutError(const std::string& what, int attempts = 1)
        : BackendError(what, 0, attempts) {}
};

class EmptyMatrix : public Error {
public:
    using Error::Error;
};

class MissingBaseline : public Error {
public:
    using Error::Error;
};

class NonPositiveBaseline : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class UnknownModel : public Error {
public:
    using Error::Error;
};

/// A normalized-dataset line failed validation; carries the 1-based line
/// number and the offending field.
class SchemaError : public Error {
public:
    SchemaError(std::size_t line, const std::string& field, const std::string& detail)
        : Error("line " + std::to_string(line) + ": field '" + field + "': " + detail),
          line_(line),
          field_(field) {}

    std::size_t line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

class DuplicateId : public Error {
public:
    using Error::Error;
};

class EmptyAnswers : public Error {
public:
    using Error::Error;
};

class MissingAnnotation : public Error {
public:
    using Error::Error;
};

class IncompleteReport : public Error {
public:
    using Error::Error;
};

}  // namespace verity
