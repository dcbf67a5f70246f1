#pragma once

#include <stdexcept>
#include <string>

namespace rotator {

//! A precondition on physical inputs (ranges, causal character) failed.
struct DomainError : std::domain_error
{
    using std::domain_error::domain_error;
};

//! A formula hit a degenerate configuration (pk = 0, pp = 0, zero spin).
struct DegenerateError : DomainError
{
    using DomainError::DomainError;
};

//! The rotator family is of the wrong kind for the requested operation.
struct ClassificationError : std::logic_error
{
    using std::logic_error::logic_error;
};

struct NumericError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

//! Gauge multipliers cannot be made finite (or leave the subluminal range).
struct GaugeError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct IntegrationAborted : std::runtime_error
{
    IntegrationAborted(std::string const& what, double time, double residual)
        : std::runtime_error(what), time(time), residual(residual)
    {
    }
    double time;
    double residual;
};

//! Scenario configuration rejected; `field` names the offending key.
struct ConfigError : std::runtime_error
{
    ConfigError(std::string field, std::string const& what)
        : std::runtime_error(field + ": " + what), field(std::move(field))
    {
    }
    std::string field;
};

}  // namespace rotator
