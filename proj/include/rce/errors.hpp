#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rce {

/// File-system level failure (missing file, unwritable directory, short write).
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bytes were read but could not be decoded as a supported image.
class DecodeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Rect or index outside the object it is applied to, or mismatched shapes.
class BoundsError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// Malformed text input. Line and column are 1-based; column 0 means "whole line".
class ParseError : public std::runtime_error {
  public:
    ParseError(std::string message, std::size_t line, std::size_t column)
        : std::runtime_error(format(message, line, column)), message_(std::move(message)), line_(line), column_(column) {}

    /// The message without the position prefix.
    const std::string& message() const noexcept { return message_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    static std::string format(const std::string& message, std::size_t line, std::size_t column) {
        std::string where = "line " + std::to_string(line);
        if (column > 0) where += ", column " + std::to_string(column);
        return where + ": " + message;
    }

    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace rce
