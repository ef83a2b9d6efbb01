#ifndef RADTRIM_ERROR_HPP
#define RADTRIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace radtrim {

// Error categories, mirrored one-to-one by the C API status codes and the
// CLI exit codes (parse -> 2, degenerate/invalid -> 3).
enum class ErrorCode {
    invalid_argument,  // bad dimensions, out-of-range parameters
    parse,             // malformed file or config
    degenerate,        // structurally valid input, no usable result (e.g. all weights zero)
    internal
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void throw_invalid(const std::string& msg) {
    throw Error(ErrorCode::invalid_argument, msg);
}
[[noreturn]] inline void throw_parse(const std::string& msg) {
    throw Error(ErrorCode::parse, msg);
}
[[noreturn]] inline void throw_degenerate(const std::string& msg) {
    throw Error(ErrorCode::degenerate, msg);
}

}  // namespace radtrim

#endif
