#include <pchain/cli/client.hpp>

#include <httplib.h>

namespace pchain::cli {

std::string Response::error() const
{
    if (body.is_object() && body.contains("error") && body["error"].is_string()) return body["error"].get<std::string>();
    return "HTTP " + std::to_string(status);
}

struct NodeClient::Impl {
    httplib::Client client;
    explicit Impl(const std::string& url) : client(url)
    {
        client.set_connection_timeout(5);
        client.set_read_timeout(30);
    }
};

NodeClient::NodeClient(const std::string& base_url) : url_(base_url)
{
    if (!base_url.starts_with("http://")) throw TransportError("node URL must start with http://: " + base_url);
    impl_ = std::make_unique<Impl>(base_url);
    if (!impl_->client.is_valid()) throw TransportError("invalid node URL " + base_url);
}

NodeClient::~NodeClient() = default;

namespace {

Response to_response(const httplib::Result& result, const std::string& url, const std::string& path)
{
    if (!result) {
        throw TransportError("cannot reach node at " + url + path + ": " + httplib::to_string(result.error()));
    }
    Response r;
    r.status = result->status;
    r.body = json::parse(result->body, nullptr, false);
    if (r.body.is_discarded()) {
        throw TransportError("node returned a non-JSON body (HTTP " + std::to_string(result->status) + ") for " + path);
    }
    if (r.status >= 500) throw TransportError("node error on " + path + ": " + r.body.dump());
    return r;
}

}  // namespace

Response NodeClient::get(const std::string& path)
{
    return to_response(impl_->client.Get(path), url_, path);
}

Response NodeClient::post(const std::string& path, const json& body)
{
    return to_response(impl_->client.Post(path, body.dump(), "application/json"), url_, path);
}

}  // namespace pchain::cli
