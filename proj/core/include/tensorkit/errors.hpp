#pragma once

#include <stdexcept>
#include <string>

namespace tk {

// Malformed expression text (lexer/parser rejects).
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

// Structurally invalid request: rank/dim mismatch, bad slot, unbound name, ...
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerically meaningless request: singular matrix, metric degenerate at point, ...
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace tk
