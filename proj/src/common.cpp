#include "zerodist/common.hpp"

namespace zerodist {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::parse: return "parse_error";
    case Errc::validation: return "validation_error";
    case Errc::range: return "range_error";
    case Errc::data: return "data_error";
    case Errc::io: return "io_error";
    case Errc::budget: return "budget_exceeded";
    case Errc::numeric: return "numeric_error";
    case Errc::integrity: return "integrity_error";
  }
  return "unknown_error";
}

}  // namespace zerodist
