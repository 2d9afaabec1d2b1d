#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "gaitbench/llm/backend.hpp"

namespace gaitbench {

HttpBackend::HttpBackend(const BackendSpec& spec) : spec_(spec) {
    if (spec.endpoint_url.empty())
        throw std::invalid_argument("HttpBackend: endpoint_url required");
    // Split scheme://host[:port] from any path prefix.
    const std::size_t scheme = spec.endpoint_url.find("://");
    const std::size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
    const std::size_t slash = spec.endpoint_url.find('/', host_start);
    if (slash == std::string::npos) {
        base_url_ = spec.endpoint_url;
    } else {
        base_url_ = spec.endpoint_url.substr(0, slash);
        path_prefix_ = spec.endpoint_url.substr(slash);
        while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
    }
    const char* key = std::getenv("GAITBENCH_API_KEY");
    if (!key || !*key)
        throw std::invalid_argument("HttpBackend: GAITBENCH_API_KEY is not set");
    api_key_ = key;
}

std::string HttpBackend::complete(const std::string& prompt) {
    httplib::Client client(base_url_);
    client.set_connection_timeout(static_cast<time_t>(spec_.timeout_sec), 0);
    client.set_read_timeout(static_cast<time_t>(spec_.timeout_sec), 0);
    client.set_bearer_token_auth(api_key_);

    nlohmann::ordered_json body;
    body["model"] = spec_.model_id;
    body["messages"] = nlohmann::json::array(
        {nlohmann::ordered_json{{"role", "user"}, {"content", prompt}}});
    if (spec_.supports_temperature) body["temperature"] = 0;

    auto res = client.Post(path_prefix_ + "/chat/completions", body.dump(),
                           "application/json");
    if (!res) {
        throw TransportError("connection failure: " + httplib::to_string(res.error()), true);
    }
    if (res->status >= 500) {
        throw TransportError("HTTP " + std::to_string(res->status), true);
    }
    if (res->status >= 400) {
        throw TransportError("HTTP " + std::to_string(res->status) + ": " + res->body, false);
    }
    nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
    if (j.is_discarded()) {
        throw TransportError("response body is not JSON", true);
    }
    try {
        return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw TransportError(std::string("unexpected response shape: ") + e.what(), true);
    }
}

}  // namespace gaitbench
