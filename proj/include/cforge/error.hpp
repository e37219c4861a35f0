#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>

namespace cforge {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Bad configuration, missing credentials, invalid templates.
class ConfigError : public Error {
  public:
    using Error::Error;
};

// Malformed corpus or model files, invariant violations in loaded data.
class DataError : public Error {
  public:
    using Error::Error;
};

class EmptyCorpus : public DataError {
  public:
    using DataError::DataError;
};

// Validation/test material reaching a training path.
class LeakageError : public DataError {
  public:
    using DataError::DataError;
};

class InsufficientData : public Error {
  public:
    InsufficientData(const std::string &what, std::size_t available, std::size_t required)
        : Error(what), available_(available), required_(required) {}

    std::size_t available() const { return available_; }
    std::size_t required() const { return required_; }

  private:
    std::size_t available_;
    std::size_t required_;
};

// ---- llm gateway ----

class GatewayError : public Error {
  public:
    using Error::Error;
};

class TransportError : public GatewayError {
  public:
    using GatewayError::GatewayError;
};

class ProtocolError : public GatewayError {
  public:
    using GatewayError::GatewayError;
};

class AuthError : public GatewayError {
  public:
    using GatewayError::GatewayError;
};

class RateLimited : public GatewayError {
  public:
    RateLimited(const std::string &what, std::optional<std::chrono::milliseconds> retry_after)
        : GatewayError(what), retry_after_(retry_after) {}

    std::optional<std::chrono::milliseconds> retry_after() const { return retry_after_; }

  private:
    std::optional<std::chrono::milliseconds> retry_after_;
};

class UnclassifiableRequest : public GatewayError {
  public:
    using GatewayError::GatewayError;
};

// ---- generation pipeline ----

class GenerationError : public Error {
  public:
    using Error::Error;
};

class EmptyResponse : public GenerationError {
  public:
    using GenerationError::GenerationError;
};

class AllSeedsFailed : public GenerationError {
  public:
    using GenerationError::GenerationError;
};

class AllTranslationsFailed : public GenerationError {
  public:
    using GenerationError::GenerationError;
};

// ---- metrics ----

class LengthMismatch : public Error {
  public:
    using Error::Error;
};

class EmptyHypothesisCorpus : public Error {
  public:
    using Error::Error;
};

class EmptyInput : public Error {
  public:
    using Error::Error;
};

} // namespace cforge
