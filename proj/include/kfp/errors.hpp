#pragma once

#include <stdexcept>
#include <string>

namespace kfp {

// Domain errors map to CLI exit code 1, internal ones to 3.
enum class Errc {
  ParityError,
  IceRuleViolation,
  PeriodMismatch,
  NotASolution,
  IrrationalRoots,
  RankTwoParameters,
  InconsistentParams,
  NotHomogeneous,
  DegenerateAlpha,
  WeightOutsideSupport,
  InfiniteComponent,
  ZeroFunction,
  MultiBlock,
  InvalidInput,
  PoleAtWeight,
  GaugeInconsistency,
  InternalError,
};

const char* errc_name(Errc e);
bool errc_internal(Errc e);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }
  bool internal() const { return errc_internal(code_); }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

// Internal consistency check that survives release builds.
inline void ensure(bool cond, const std::string& what) {
  if (!cond) fail(Errc::InternalError, what);
}

}  // namespace kfp
