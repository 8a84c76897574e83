#pragma once

#include <stdexcept>
#include <string>

namespace expsum {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidArgument : Error {
    using Error::Error;
};

// polyrat
struct NonConvergence : Error {
    using Error::Error;
};
struct PoleAtPoint : Error {
    using Error::Error;
};
struct DivergentAtInfinity : Error {
    using Error::Error;
};
struct MultiplePole : Error {
    using Error::Error;
};

// padecf
struct DegenerateSeries : Error {
    using Error::Error;
};
struct ZeroInterpolant : Error {
    using Error::Error;
};
struct VerificationFailed : Error {
    using Error::Error;
};

// laplace
struct NonConvergent : Error {
    using Error::Error;
};

// expsum pipeline
struct ImaginaryLeak : Error {
    using Error::Error;
};
struct UnstableTail : Error {
    using Error::Error;
};
struct AllFailed : Error {
    using Error::Error;
};

// gammaapp
struct DomainError : Error {
    using Error::Error;
};

/// Wraps a failure from one of the pipeline steps (i)-(vi) so callers can
/// see which step to blame when retrying with different parameters.
struct PipelineError : Error {
    std::string step;
    PipelineError(std::string step_, const std::string& msg)
        : Error("[" + step_ + "] " + msg), step(std::move(step_)) {}
};

}  // namespace expsum
