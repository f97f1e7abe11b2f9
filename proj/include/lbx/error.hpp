#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lbx {

// Errors carry a machine-readable kind ("ImproperColoring", "NotALoop", ...)
// alongside the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(std::string kind, const std::string& what) {
    throw Error(std::move(kind), what);
}

} // namespace lbx
