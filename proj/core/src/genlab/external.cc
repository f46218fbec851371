#include <regex>
#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "modwave/genlab/source.h"

namespace modwave::genlab {
namespace {

struct Endpoint {
  std::string origin;  // scheme://host:port
  std::string path;
};

Endpoint split_endpoint(const std::string& url) {
  static const std::regex pattern(R"(^(http://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, pattern)) {
    throw GenerationError(SourceErrorKind::kNetwork, "endpoint must look like http://host[:port]/path: " + url);
  }
  return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

}  // namespace

std::string external_generate(const ExternalConfig& config, const std::string& prompt) {
  const Endpoint ep = split_endpoint(config.endpoint);
  httplib::Client client(ep.origin);
  const auto seconds = config.timeout_ms / 1000;
  const auto micros = (config.timeout_ms % 1000) * 1000;
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_write_timeout(seconds, micros);

  const nlohmann::json body = {
      {"prompt", prompt}, {"temperature", config.temperature}, {"max_tokens", config.max_tokens}};
  const std::string payload = body.dump();

  for (int attempt = 0;; ++attempt) {
    auto res = client.Post(ep.path, payload, "application/json");
    if (!res) {
      const auto err = res.error();
      if (attempt < config.retries) continue;
      const bool timeout = err == httplib::Error::Read || err == httplib::Error::Write ||
                           err == httplib::Error::ConnectionTimeout;
      throw GenerationError(timeout ? SourceErrorKind::kTimeout : SourceErrorKind::kNetwork,
                            config.endpoint + ": " + httplib::to_string(err));
    }
    if (res->status < 200 || res->status >= 300) {
      throw GenerationError(SourceErrorKind::kHttpStatus,
                            config.endpoint + ": HTTP status " + std::to_string(res->status));
    }
    nlohmann::json reply;
    try {
      reply = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception&) {
      throw GenerationError(SourceErrorKind::kMalformedResponse, config.endpoint + ": reply is not JSON");
    }
    if (!reply.is_object() || !reply.contains("text") || !reply["text"].is_string()) {
      throw GenerationError(SourceErrorKind::kMalformedResponse, config.endpoint + ": reply has no string 'text'");
    }
    return reply["text"].get<std::string>();
  }
}

}  // namespace modwave::genlab
