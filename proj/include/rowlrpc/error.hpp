#pragma once

#include <stdexcept>
#include <string>

namespace rowlrpc {

// Library error categories; mirrored one-to-one by the C API status codes.
enum class Errc {
  invalid_argument,
  context_mismatch,    // element/matrix used with a field it does not belong to
  shape_mismatch,
  division_by_zero,
  not_normalizable,
  enumeration_too_large,
  construction_failed, // resampling/search budget exhausted
  parse_error,
  io_error,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace rowlrpc
