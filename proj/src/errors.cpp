// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "tornado/errors.hpp"

namespace tornado {

DuplicateIdError::DuplicateIdError(const std::string& id, std::size_t first_line, std::size_t second_line)
    : Error("duplicate event_id '" + id + "' on lines " + std::to_string(first_line) + " and " +
            std::to_string(second_line)),
      id(id),
      first_line(first_line),
      second_line(second_line) {}

LengthMismatchError::LengthMismatchError(std::size_t expected, std::size_t actual)
    : Error("feature length mismatch: expected " + std::to_string(expected) + ", got " +
            std::to_string(actual)),
      expected(expected),
      actual(actual) {}

VersionError::VersionError(std::int64_t found)
    : Error("unsupported format_version " + std::to_string(found)), found(found) {}

FutureEventError::FutureEventError(const std::string& event_id, int year, int test_year)
    : Error("event '" + event_id + "' dated " + std::to_string(year) + " is later than test year " +
            std::to_string(test_year)),
      event_id(event_id),
      year(year) {}

} // namespace tornado
