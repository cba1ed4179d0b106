#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "glidepool/expression.hpp"

namespace glidepool {

/// Syntax error with the byte offset of the offending token and the set of
/// token descriptions that would have been accepted there.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t offset, std::vector<std::string> expected);

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Parses an expression. Whitespace-insensitive; throws ParseError on
/// malformed input, never crashes.
ExprPtr parse_expression(std::string_view text);

}  // namespace glidepool
