#pragma once

#include <stdexcept>
#include <string>

namespace fgl
{

// Base class of every error raised by the library. The name() string is
// stable and is what the CLI reports in its JSON failure records.
class Error : public std::runtime_error
{
public:
    Error(std::string name, const std::string &what) : std::runtime_error(what), name_(std::move(name)) {}

    const std::string &name() const noexcept
    {
        return name_;
    }

private:
    std::string name_;
};

#define FGL_DECLARE_ERROR(Type)                                                                                        \
    class Type : public Error                                                                                          \
    {                                                                                                                  \
    public:                                                                                                            \
        explicit Type(const std::string &what) : Error(#Type, what) {}                                                 \
    }

FGL_DECLARE_ERROR(SpecMismatch);
FGL_DECLARE_ERROR(InvalidSpec);
FGL_DECLARE_ERROR(NotAUnit);
FGL_DECLARE_ERROR(NotDivisible);
FGL_DECLARE_ERROR(ModeError);
FGL_DECLARE_ERROR(TruncationTooSmall);
FGL_DECLARE_ERROR(IntegralityFailure);
FGL_DECLARE_ERROR(NonNilpotentArgument);
FGL_DECLARE_ERROR(NoUnitCoefficient);
FGL_DECLARE_ERROR(NonConvergence);
FGL_DECLARE_ERROR(UnsupportedGroupType);
FGL_DECLARE_ERROR(NonExactDivision);
FGL_DECLARE_ERROR(RelationNotKilled);
FGL_DECLARE_ERROR(NotAFrobeniusLift);
FGL_DECLARE_ERROR(ParseError);
FGL_DECLARE_ERROR(InvariantBreach);

#undef FGL_DECLARE_ERROR

} // namespace fgl
