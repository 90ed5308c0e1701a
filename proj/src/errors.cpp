#include "kfp/errors.hpp"

namespace kfp {

const char* errc_name(Errc e) {
  switch (e) {
    case Errc::ParityError: return "ParityError";
    case Errc::IceRuleViolation: return "IceRuleViolation";
    case Errc::PeriodMismatch: return "PeriodMismatch";
    case Errc::NotASolution: return "NotASolution";
    case Errc::IrrationalRoots: return "IrrationalRoots";
    case Errc::RankTwoParameters: return "RankTwoParameters";
    case Errc::InconsistentParams: return "InconsistentParams";
    case Errc::NotHomogeneous: return "NotHomogeneous";
    case Errc::DegenerateAlpha: return "DegenerateAlpha";
    case Errc::WeightOutsideSupport: return "WeightOutsideSupport";
    case Errc::InfiniteComponent: return "InfiniteComponent";
    case Errc::ZeroFunction: return "ZeroFunction";
    case Errc::MultiBlock: return "MultiBlock";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::PoleAtWeight: return "PoleAtWeight";
    case Errc::GaugeInconsistency: return "GaugeInconsistency";
    case Errc::InternalError: return "InternalError";
  }
  return "Unknown";
}

bool errc_internal(Errc e) {
  return e == Errc::PoleAtWeight || e == Errc::GaugeInconsistency || e == Errc::InternalError;
}

}  // namespace kfp
