// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#ifndef TORNADO_ERRORS_HPP
#define TORNADO_ERRORS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace tornado {

/// Base of every data/model error raised by the library. The CLI maps any
/// of these to exit status 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A grid cell that failed validation.
struct CellRef {
    std::string variable;
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0.0;

    bool operator==(const CellRef&) const = default;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

/// Value outside its allowed interval. Carries the offending cell for grid
/// values and the line number for catalog rows.
class RangeError : public Error {
public:
    explicit RangeError(const std::string& what) : Error(what) {}
    RangeError(const std::string& what, CellRef cell) : Error(what), cell(std::move(cell)) {}
    RangeError(const std::string& what, std::size_t line) : Error(what), line(line) {}

    std::optional<CellRef> cell;
    std::optional<std::size_t> line;
};

class NonFiniteError : public Error {
public:
    NonFiniteError(const std::string& what, CellRef cell) : Error(what), cell(std::move(cell)) {}
    CellRef cell;
};

class MissingVariableError : public Error {
public:
    MissingVariableError(const std::string& what, std::string variable)
        : Error(what), variable(std::move(variable)) {}
    std::string variable;
};

/// Malformed document. `location` is a byte offset, JSON path or "line N".
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::string location)
        : Error(what + " (at " + location + ")"), location(std::move(location)) {}
    std::string location;
};

class DuplicateIdError : public Error {
public:
    DuplicateIdError(const std::string& id, std::size_t first_line, std::size_t second_line);
    std::string id;
    std::size_t first_line;
    std::size_t second_line;
};

/// Broken EventWindow or Dataset invariant (non-consecutive dates, mixed regions...).
class WindowError : public Error {
public:
    using Error::Error;
};

class EmptyDatasetError : public Error {
public:
    EmptyDatasetError(const std::string& what, std::size_t skipped) : Error(what), skipped(skipped) {}
    std::size_t skipped;
};

class EmptyQuadrantError : public Error {
public:
    using Error::Error;
};

class EmptyInputError : public Error {
public:
    using Error::Error;
};

class LengthMismatchError : public Error {
public:
    LengthMismatchError(std::size_t expected, std::size_t actual);
    std::size_t expected;
    std::size_t actual;
};

class SingleClassError : public Error {
public:
    using Error::Error;
};

class DegenerateInputError : public Error {
public:
    using Error::Error;
};

class VersionError : public Error {
public:
    explicit VersionError(std::int64_t found);
    std::int64_t found;
};

class CorruptModelError : public Error {
public:
    using Error::Error;
};

class FutureEventError : public Error {
public:
    FutureEventError(const std::string& event_id, int year, int test_year);
    std::string event_id;
    int year;
};

/// Invalid ModelSpec / SynthSpec hyperparameters.
class SpecError : public Error {
public:
    using Error::Error;
};

} // namespace tornado

#endif // TORNADO_ERRORS_HPP
