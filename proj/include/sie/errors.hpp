#pragma once

#include <stdexcept>
#include <string>

namespace sie {

/// Root of the library's error hierarchy. Everything thrown on a data or
/// computation path derives from this; std::logic_error style misuse
/// (argument errors) is included so callers can catch one type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text: bad numeric field, short row, bad header.
/// Carries the 1-based line number where available.
class ParseError : public Error {
public:
    ParseError(const std::string& what, long line = -1)
        : Error(line >= 0 ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}
    [[nodiscard]] long line() const noexcept { return line_; }

private:
    long line_;
};

/// Two input rows claim the same calendar date.
class DuplicateDateError : public ParseError {
public:
    using ParseError::ParseError;
};

/// A row names a day that does not exist in the calendar.
class InvalidDateError : public ParseError {
public:
    using ParseError::ParseError;
};

/// A run of missing days is longer than the imputation policy allows.
class GapError : public Error {
public:
    using Error::Error;
};

/// A requested window or month is not fully inside the series range.
class CoverageError : public Error {
public:
    using Error::Error;
};

/// A caller-supplied value is outside its documented domain.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// The design matrix is rank deficient; the message names the dependent
/// column(s) identified by the pivoted factorization.
class CollinearityError : public Error {
public:
    using Error::Error;
};

/// Fewer observations than regressors.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// A density was requested from a distribution with zero spread; callers
/// should use the point forecast instead.
class DegenerateDensityError : public Error {
public:
    using Error::Error;
};

/// Skill is undefined because the benchmark has zero error.
class UndefinedSkillError : public Error {
public:
    using Error::Error;
};

}  // namespace sie
