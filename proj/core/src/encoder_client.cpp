#include "factcheck/model/encoder_client.hpp"

#include <future>

#include <httplib.h>
#include <json.hpp>

#include "factcheck/ingest/url.hpp"

namespace factcheck::model {
namespace {

using nlohmann::json;
using Vectors = std::vector<std::vector<double>>;

Vectors request_batch(const ingest::Url& url, const std::vector<std::string>& texts, std::size_t begin,
                      std::size_t end, const EncoderBackendRef& backend) {
  httplib::Client client(url.scheme + "://" + url.host + ":" + std::to_string(url.effective_port()));
  client.set_connection_timeout(backend.timeout);
  client.set_read_timeout(backend.timeout);
  client.set_write_timeout(backend.timeout);

  json body;
  body["texts"] = json::array();
  for (std::size_t i = begin; i < end; ++i) body["texts"].push_back(texts[i]);

  auto res = client.Post(url.target(), body.dump(), "application/json");
  if (!res) {
    throw EncoderUnavailable("encoder " + backend.endpoint + ": " + httplib::to_string(res.error()));
  }
  if (res->status >= 500) {
    throw EncoderUnavailable("encoder " + backend.endpoint + ": HTTP " + std::to_string(res->status));
  }
  if (res->status != 200) {
    throw EncoderProtocolError("encoder " + backend.endpoint + ": HTTP " + std::to_string(res->status));
  }

  json reply;
  try {
    reply = json::parse(res->body);
  } catch (const json::exception& e) {
    throw EncoderProtocolError(std::string("encoder: response is not JSON: ") + e.what());
  }
  if (!reply.is_object() || !reply.contains("vectors") || !reply["vectors"].is_array()) {
    throw EncoderProtocolError("encoder: response lacks a \"vectors\" array");
  }
  if (!reply.contains("dims") || !reply["dims"].is_number_integer()) {
    throw EncoderProtocolError("encoder: response lacks integer \"dims\"");
  }
  const auto dims = reply["dims"].get<std::int64_t>();
  if (dims != static_cast<std::int64_t>(backend.dims)) {
    throw EncoderProtocolError("encoder: dims mismatch: expected " + std::to_string(backend.dims) + ", got " +
                               std::to_string(dims));
  }
  const auto& vectors = reply["vectors"];
  if (vectors.size() != end - begin) {
    throw EncoderProtocolError("encoder: expected " + std::to_string(end - begin) + " vectors, got " +
                               std::to_string(vectors.size()));
  }
  Vectors out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (!v.is_array() || v.size() != backend.dims) {
      throw EncoderProtocolError("encoder: dims mismatch: expected " + std::to_string(backend.dims) + ", got " +
                                 std::to_string(v.is_array() ? v.size() : 0));
    }
    std::vector<double> row;
    row.reserve(backend.dims);
    for (const auto& x : v) {
      if (!x.is_number()) throw EncoderProtocolError("encoder: non-numeric vector component");
      row.push_back(x.get<double>());
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

void EncoderBackendRef::validate() const {
  if (dims < 1) throw InvalidArgument("encoder backend: dims must be >= 1");
  if (batch_limit < 1) throw InvalidArgument("encoder backend: batch_limit must be >= 1");
  if (max_in_flight < 1) throw InvalidArgument("encoder backend: max_in_flight must be >= 1");
  try {
    ingest::Url::parse(endpoint);
  } catch (const ParseError& e) {
    throw InvalidArgument(std::string("encoder backend: bad endpoint: ") + e.what());
  }
}

std::vector<std::vector<double>> embed_remote(const std::vector<std::string>& texts,
                                              const EncoderBackendRef& backend) {
  if (texts.empty()) throw InvalidArgument("embed_remote: no texts");
  backend.validate();
  const auto url = ingest::Url::parse(backend.endpoint);

  std::vector<std::pair<std::size_t, std::size_t>> batches;
  for (std::size_t start = 0; start < texts.size(); start += backend.batch_limit) {
    batches.emplace_back(start, std::min(texts.size(), start + backend.batch_limit));
  }

  Vectors out;
  out.reserve(texts.size());
  for (std::size_t b = 0; b < batches.size(); b += backend.max_in_flight) {
    const std::size_t window_end = std::min(batches.size(), b + backend.max_in_flight);
    if (window_end - b == 1) {
      auto part = request_batch(url, texts, batches[b].first, batches[b].second, backend);
      std::move(part.begin(), part.end(), std::back_inserter(out));
      continue;
    }
    std::vector<std::future<Vectors>> inflight;
    for (std::size_t i = b; i < window_end; ++i) {
      inflight.push_back(std::async(std::launch::async, request_batch, std::cref(url), std::cref(texts),
                                    batches[i].first, batches[i].second, std::cref(backend)));
    }
    for (auto& f : inflight) {  // collected in submission order
      auto part = f.get();
      std::move(part.begin(), part.end(), std::back_inserter(out));
    }
  }
  return out;
}

}  // namespace factcheck::model
