#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ncup {

// Single exception type with a machine-readable kind tag. Kinds are stable
// strings ("NotAssociative", "SideMismatch", ...) that the CLI maps onto
// exit codes and tests match on.
struct Error : std::runtime_error {
    std::string kind;
    Error(std::string k, const std::string& what)
        : std::runtime_error(k + ": " + what), kind(std::move(k)) {}
};

[[noreturn]] inline void fail(std::string kind, const std::string& msg) {
    throw Error(std::move(kind), msg);
}

}  // namespace ncup
