#pragma once

#include <stdexcept>
#include <string>

namespace arithdisc {

// Base class for every error the library raises deliberately.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define ARITHDISC_DEFINE_ERROR(Name)                                \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what = #Name) : Error(what) {} \
  }

ARITHDISC_DEFINE_ERROR(NotSquarefree);
ARITHDISC_DEFINE_ERROR(BasisSingular);
ARITHDISC_DEFINE_ERROR(AutomorphismInvalid);
ARITHDISC_DEFINE_ERROR(IsolationFailed);
ARITHDISC_DEFINE_ERROR(NoSolution);
ARITHDISC_DEFINE_ERROR(NotCoprime);
ARITHDISC_DEFINE_ERROR(SearchExhausted);
ARITHDISC_DEFINE_ERROR(NotDivisible);
ARITHDISC_DEFINE_ERROR(NotIntegral);
ARITHDISC_DEFINE_ERROR(NotUnit);
ARITHDISC_DEFINE_ERROR(ZeroDivisor);
ARITHDISC_DEFINE_ERROR(NotNearIdentity);
ARITHDISC_DEFINE_ERROR(SingularModTN);
ARITHDISC_DEFINE_ERROR(ValuationConditionFailed);
ARITHDISC_DEFINE_ERROR(ConstantTermNonzero);
ARITHDISC_DEFINE_ERROR(NoRootOfUnity);
ARITHDISC_DEFINE_ERROR(NotAutomorphismAction);
ARITHDISC_DEFINE_ERROR(EmptyJ);
ARITHDISC_DEFINE_ERROR(ListingNotBijective);
ARITHDISC_DEFINE_ERROR(GenerationFailed);
ARITHDISC_DEFINE_ERROR(A1NotRational);
ARITHDISC_DEFINE_ERROR(SchemaError);
ARITHDISC_DEFINE_ERROR(Cancelled);

#undef ARITHDISC_DEFINE_ERROR

}  // namespace arithdisc
