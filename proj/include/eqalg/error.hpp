#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace eqalg {

/// Domain error with a stable machine-readable name, used by the CLI to
/// emit typed JSON error objects. The name is one of the documented error
/// identifiers (GroupTooLarge, NotComparable, GroupMismatch, ...).
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& message)
        : std::runtime_error(message), name_(std::move(name)) {}

    const std::string& name() const { return name_; }

private:
    std::string name_;
};

[[noreturn]] inline void fail(const std::string& name, const std::string& message) {
    throw Error(name, message);
}

inline void require(bool cond, const std::string& name, const std::string& message) {
    if (!cond) fail(name, message);
}

} // namespace eqalg
