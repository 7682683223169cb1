#pragma once

#include <stdexcept>
#include <string>

namespace qslab {

// Violated precondition or malformed input. CLI exit code 1.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A configurable search/retry budget ran out before the question was decided.
// Deliberately distinct from "no such object exists". CLI exit code 2.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qslab
