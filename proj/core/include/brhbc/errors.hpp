// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#ifndef BRHBC_ERRORS_HPP
#define BRHBC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace brhbc {

/// Raised when a text input (CSV stream, scenario file) is malformed.
/// The message names the offending file/line/key so CLI diagnostics can
/// point at the exact input element.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an assembled network cannot be evaluated (singular
/// termination, non-convergent fit, ...).
class model_error : public std::runtime_error {
public:
    explicit model_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace brhbc

#endif
