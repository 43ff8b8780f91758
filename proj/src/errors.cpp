#include "tubal/errors.hpp"

namespace tubal {

std::string_view to_string(FormatErrc code) noexcept {
  switch (code) {
    case FormatErrc::bad_magic: return "bad magic";
    case FormatErrc::bad_version: return "bad version";
    case FormatErrc::unsupported_scalar_kind: return "unsupported scalar kind";
    case FormatErrc::bad_dimensions: return "bad dimensions";
    case FormatErrc::truncated: return "truncated payload";
    case FormatErrc::malformed_header: return "malformed header";
    case FormatErrc::unsupported_maxval: return "unsupported maxval";
    case FormatErrc::frame_mismatch: return "frame size mismatch";
    case FormatErrc::trailing_data: return "trailing data";
  }
  return "unknown format error";
}

}  // namespace tubal
