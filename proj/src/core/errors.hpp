#pragma once

#include <stdexcept>
#include <string>

namespace sobolhd {

// Mirrors the status codes exposed through the C API.
enum class Status {
    ok = 0,
    argument,
    parse,
    validation,
    capacity,
    degenerate,
    io,
    encoding,
    training,
    incompatible,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(Status status, std::string message)
        : std::runtime_error(std::move(message)), status_(status) {}

    Status status() const { return status_; }

private:
    Status status_;
};

[[noreturn]] inline void throw_error(Status status, const std::string& message) {
    throw Error(status, message);
}

}  // namespace sobolhd
