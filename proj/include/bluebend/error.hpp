#pragma once

#include <stdexcept>
#include <string>

namespace bluebend {

// Every library failure carries a stable code; the CLI maps codes to exit statuses.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace bluebend
