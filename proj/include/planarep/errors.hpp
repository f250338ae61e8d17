#pragma once

#include <stdexcept>
#include <string>

namespace planarep {

// Failure categories double as CLI exit codes.
enum class ErrorCategory : int {
  parse = 2,
  infeasible = 3,
  tolerance = 4,
  internal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what),
        category_(category),
        kind_(std::move(kind)) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& kind() const noexcept { return kind_; }

 private:
  ErrorCategory category_;
  std::string kind_;
};

#define PLANAREP_DEFINE_ERROR(Name, Category)                          \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what)                             \
        : Error(ErrorCategory::Category, #Name, what) {}               \
  }

// presentations
PLANAREP_DEFINE_ERROR(MalformedInput, parse);
PLANAREP_DEFINE_ERROR(TorsionOrderTooSmall, parse);
PLANAREP_DEFINE_ERROR(RelatorShapeMismatch, parse);
PLANAREP_DEFINE_ERROR(ArityMismatch, parse);

// foxcalc
PLANAREP_DEFINE_ERROR(FillVerificationFailed, internal);

// liegroup
PLANAREP_DEFINE_ERROR(LogBranchFailure, tolerance);
PLANAREP_DEFINE_ERROR(SingularDexp, tolerance);
PLANAREP_DEFINE_ERROR(UnknownGroup, parse);

// cohomology
PLANAREP_DEFINE_ERROR(RelatorConstraintViolated, tolerance);

// symplectic
PLANAREP_DEFINE_ERROR(NotACocycle, tolerance);
PLANAREP_DEFINE_ERROR(OutsideStarDomain, tolerance);
PLANAREP_DEFINE_ERROR(CalibrationFailed, internal);

// components
PLANAREP_DEFINE_ERROR(UnsupportedModel, infeasible);
PLANAREP_DEFINE_ERROR(ClassResolutionFailed, tolerance);

// solver
PLANAREP_DEFINE_ERROR(InfeasibleSpec, infeasible);

#undef PLANAREP_DEFINE_ERROR

}  // namespace planarep
