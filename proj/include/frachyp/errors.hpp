#pragma once

#include <stdexcept>
#include <string>

namespace frachyp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParams : Error {
    using Error::Error;
};

struct EdgeSizeMismatch : Error {
    using Error::Error;
};

struct VertexOutOfRange : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    ParseError(int line_no, const std::string& reason)
        : Error("parse error at line " + std::to_string(line_no) + ": " + reason), line(line_no) {}
};

struct SizeMismatch : Error {
    using Error::Error;
};

struct NotAMinusOne : Error {
    using Error::Error;
};

struct FullPalette : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct DivisibilityError : Error {
    using Error::Error;
};

struct AttemptsExhausted : Error {
    using Error::Error;
};

struct NotFound : Error {
    using Error::Error;
};

struct IOError : Error {
    using Error::Error;
};

}  // namespace frachyp
