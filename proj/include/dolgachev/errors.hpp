#pragma once

#include <stdexcept>
#include <string>

namespace dolgachev {

// Every failure carries a stable kind string so reports and tests can match
// on it without parsing the human message.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define DOLGACHEV_ERROR(Name)                                              \
    struct Name : Error {                                                  \
        explicit Name(const std::string& what = "") : Error(#Name, what) {} \
    }

DOLGACHEV_ERROR(NonResidue);
DOLGACHEV_ERROR(DenominatorDivisibleByP);
DOLGACHEV_ERROR(NoReconstruction);
DOLGACHEV_ERROR(DomainMismatch);
DOLGACHEV_ERROR(ParseError);
DOLGACHEV_ERROR(Inhomogeneous);
DOLGACHEV_ERROR(NotHomogeneous);
DOLGACHEV_ERROR(Unstabilized);
DOLGACHEV_ERROR(NotZeroDim);
DOLGACHEV_ERROR(BudgetExceeded);
DOLGACHEV_ERROR(RewriteSingular);
DOLGACHEV_ERROR(UnknownPredicate);
DOLGACHEV_ERROR(VersionMismatch);
DOLGACHEV_ERROR(ShardTimeout);
DOLGACHEV_ERROR(SingularRoot);
DOLGACHEV_ERROR(RankDeficient);
DOLGACHEV_ERROR(DependentRows);
DOLGACHEV_ERROR(NoRelation);
DOLGACHEV_ERROR(IndeterminacyLocus);
DOLGACHEV_ERROR(NotOnScheme);
DOLGACHEV_ERROR(DimensionUndetermined);
DOLGACHEV_ERROR(DatasetError);
DOLGACHEV_ERROR(ConfigError);

#undef DOLGACHEV_ERROR

}  // namespace dolgachev
