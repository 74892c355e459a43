#include "crownlab/error.hpp"

namespace crownlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidRank: return "InvalidRank";
    case ErrorKind::DimensionError: return "DimensionError";
    case ErrorKind::InternalError: return "InternalError";
    case ErrorKind::InvalidElement: return "InvalidElement";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::EllipticObstruction: return "EllipticObstruction";
    case ErrorKind::NotAnAlgebra: return "NotAnAlgebra";
    case ErrorKind::NotInNA: return "NotInNA";
    case ErrorKind::InvalidCoordinates: return "InvalidCoordinates";
    case ErrorKind::NotInTube: return "NotInTube";
    case ErrorKind::DegeneratePivot: return "DegeneratePivot";
    case ErrorKind::NotOnSlice: return "NotOnSlice";
    case ErrorKind::DegenerateAction: return "DegenerateAction";
    case ErrorKind::UnknownSpace: return "UnknownSpace";
    case ErrorKind::OutOfRange: return "OutOfRange";
  }
  return "Unknown";
}

}  // namespace crownlab
