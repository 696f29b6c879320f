#pragma once

#include <stdexcept>
#include <string>

namespace drybulk {

// Exit-code taxonomy shared by the library and the CLI:
//   2 usage, 3 data, 4 compute.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
    static constexpr int exit_code = 2;
};

class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
    static constexpr int exit_code = 3;
};

class ComputeError : public std::runtime_error {
public:
    explicit ComputeError(const std::string& msg) : std::runtime_error(msg) {}
    static constexpr int exit_code = 4;
};

}  // namespace drybulk
