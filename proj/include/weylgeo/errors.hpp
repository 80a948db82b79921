#pragma once

#include <stdexcept>
#include <string>

namespace weylgeo {

enum class ErrorCode {
    argument = 1,
    domain = 2,
    singular_metric = 3,
    io = 4,
    integration = 5,
    unknown_suite = 6,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace weylgeo
