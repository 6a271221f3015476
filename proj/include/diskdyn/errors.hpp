#pragma once

#include <stdexcept>
#include <string>

namespace diskdyn {

/// Base class for every failure the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A direction vector had norm below the representable threshold (1e-14).
class ZeroVector : public Error {
public:
    using Error::Error;
};

/// A trajectory without stored velocities was handed to an operation that
/// needs them (Simpson quadrature, dense output).
class MissingVelocities : public Error {
public:
    using Error::Error;
};

/// An integrated point left the closed unit disk by more than 1e-9.  The
/// exact flow cannot do this, so this signals integrator misconfiguration.
class EscapedDisk : public Error {
public:
    using Error::Error;
};

/// Two tracked trajectories approached within 1e-12.  Distinct initial
/// points never collide under the flow, so the pair was degenerate.
class SeparationUnderflow : public Error {
public:
    using Error::Error;
};

/// Angle-lift refinement exceeded the maximum bisection depth.
class SubstepLimit : public Error {
public:
    using Error::Error;
};

/// Two independent computations of the same quantity disagreed beyond the
/// stated tolerance, which signals integrator drift.
class CrossCheckFailed : public Error {
public:
    using Error::Error;
};

/// A crossing of the reference surface was too close to tangential for the
/// sign to be trusted; the caller should retry with a perturbed anchor.
class TransversalityFailure : public Error {
public:
    using Error::Error;
};

/// A point claimed to be k-periodic failed the return-distance check.
class NotPeriodic : public Error {
public:
    using Error::Error;
};

/// Experiment configuration failed schema validation.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace diskdyn
