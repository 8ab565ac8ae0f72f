#include "nsbox/error.hpp"

namespace nsbox {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotAProbability: return "NotAProbability";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::Signaling: return "Signaling";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::WeightMismatch: return "WeightMismatch";
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::NoValidResidual: return "NoValidResidual";
    case ErrorKind::UnknownRegion: return "UnknownRegion";
    case ErrorKind::UnknownPreset: return "UnknownPreset";
    case ErrorKind::UnknownState: return "UnknownState";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::InvalidSettings: return "InvalidSettings";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace nsbox
