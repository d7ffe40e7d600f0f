#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

#include "factcheck/error.hpp"

namespace factcheck::model {

/// Remote dense text encoder.
///
/// Protocol: POST {"texts": [...]} as application/json to `endpoint`;
/// a 200 response carries {"vectors": [[...], ...], "dims": D}.
struct EncoderBackendRef {
  std::string endpoint;  // absolute http(s) URL
  std::size_t dims = 768;
  std::chrono::milliseconds timeout{30000};
  std::size_t batch_limit = 32;
  std::size_t max_in_flight = 1;

  void validate() const;
};

/// Connection failure, timeout or a 5xx status.
class EncoderUnavailable : public Error {
 public:
  using Error::Error;
};

/// The service answered, but not per protocol (status, shape, dims).
class EncoderProtocolError : public Error {
 public:
  using Error::Error;
};

/// One vector of backend.dims per text, in input order. Requests carry at
/// most batch_limit texts.
std::vector<std::vector<double>> embed_remote(const std::vector<std::string>& texts,
                                              const EncoderBackendRef& backend);

}  // namespace factcheck::model
