#include "swarmauth/error.hpp"

namespace swarmauth {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kZeroInverse: return "ZeroInverse";
    case Errc::kDecodeError: return "DecodeError";
    case Errc::kThresholdTooSmall: return "ThresholdTooSmall";
    case Errc::kInvalidIdentifier: return "InvalidIdentifier";
    case Errc::kDuplicateIdentifier: return "DuplicateIdentifier";
    case Errc::kWrongShareCount: return "WrongShareCount";
    case Errc::kNotEnoughGuards: return "NotEnoughGuards";
    case Errc::kMissingGroupKey: return "MissingGroupKey";
    case Errc::kCrossIssueDenied: return "CrossIssueDenied";
    case Errc::kUnknownRequester: return "UnknownRequester";
    case Errc::kUnknownSwarm: return "UnknownSwarm";
    case Errc::kDecryptError: return "DecryptError";
    case Errc::kConfigError: return "ConfigError";
    case Errc::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace swarmauth
