#pragma once

#include <stdexcept>
#include <string>

namespace wgeo {

// Every failure carries a stable machine-readable kind tag next to the
// human-readable message; the CLI maps kinds to exit codes.
class error : public std::runtime_error {
public:
    error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const char* kind, const std::string& msg) {
    throw error(kind, msg);
}

inline void require(bool ok, const char* kind, const std::string& msg) {
    if (!ok) fail(kind, msg);
}

} // namespace wgeo
