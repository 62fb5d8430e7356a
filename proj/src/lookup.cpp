#include "phishml/lookup.hpp"

#include <fstream>
#include <map>

#include <netdb.h>
#include <sys/socket.h>
#include <sys/types.h>

#include <nlohmann/json.hpp>

#include "phishml/common.hpp"
#include "phishml/extractor.hpp"

namespace phishml {

namespace {

// One host's fixture record. optional-of-Lookup is collapsed into the
// tri-state directly: field missing -> Unavailable, null -> Absent.
struct HostRecord {
    Lookup<long> domain_age_days = Lookup<long>::unavailable();
    Lookup<bool> dns_record = Lookup<bool>::unavailable();
    Lookup<long> traffic_rank = Lookup<long>::unavailable();
    Lookup<double> page_rank = Lookup<double>::unavailable();
    Lookup<bool> search_indexed = Lookup<bool>::unavailable();
    Lookup<long> links_pointing = Lookup<long>::unavailable();
    Lookup<long> registration_length_days = Lookup<long>::unavailable();
    Lookup<std::string> whois_domain = Lookup<std::string>::unavailable();
};

template <typename T>
Lookup<T> parse_field(const nlohmann::json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) return Lookup<T>::unavailable();
    if (it->is_null()) return Lookup<T>::absent();
    try {
        return Lookup<T>::found(it->get<T>());
    } catch (const nlohmann::json::exception&) {
        throw DataError(std::string("lookup fixture: field '") + key + "' has the wrong type");
    }
}

}  // namespace

struct FixtureLookupClient::Impl {
    std::map<std::string, HostRecord> hosts;

    const HostRecord* find(const std::string& host) const {
        auto it = hosts.find(host);
        if (it != hosts.end()) return &it->second;
        // Fall back to the registered domain so fixtures can be written once
        // per site rather than once per sub-host.
        std::string reg = registered_domain(host);
        if (reg != host) {
            it = hosts.find(reg);
            if (it != hosts.end()) return &it->second;
        }
        return nullptr;
    }
};

FixtureLookupClient::FixtureLookupClient(const std::string& fixture_path)
    : impl_(std::make_unique<Impl>()) {
    std::ifstream in(fixture_path);
    if (!in) throw DataError("cannot open lookup fixture: " + fixture_path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("lookup fixture is not valid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw DataError("lookup fixture must be a JSON object keyed by host");
    for (const auto& [host, fields] : doc.items()) {
        if (!fields.is_object())
            throw DataError("lookup fixture: entry for '" + host + "' must be an object");
        HostRecord rec;
        rec.domain_age_days = parse_field<long>(fields, "domain_age_days");
        rec.dns_record = parse_field<bool>(fields, "dns_record");
        rec.traffic_rank = parse_field<long>(fields, "traffic_rank");
        rec.page_rank = parse_field<double>(fields, "page_rank");
        rec.search_indexed = parse_field<bool>(fields, "google_indexed");
        rec.links_pointing = parse_field<long>(fields, "links_pointing");
        rec.registration_length_days = parse_field<long>(fields, "registration_length_days");
        rec.whois_domain = parse_field<std::string>(fields, "whois_domain");
        impl_->hosts.emplace(host, std::move(rec));
    }
}

FixtureLookupClient::~FixtureLookupClient() = default;

Lookup<long> FixtureLookupClient::domain_age_days(const std::string& host) const {
    const HostRecord* r = impl_->find(host);
    return r ? r->domain_age_days : Lookup<long>::unavailable();
}

Lookup<bool> FixtureLookupClient::dns_record(const std::string& host) const {
    const HostRecord* r = impl_->find(host);
    return r ? r->dns_record : Lookup<bool>::unavailable();
}

Lookup<long> FixtureLookupClient::traffic_rank(const std::string& host) const {
    const HostRecord* r = impl_->find(host);
    return r ? r->traffic_rank : Lookup<long>::unavailable();
}

Lookup<double> FixtureLookupClient::page_rank(const std::string& host) const {
    const HostRecord* r = impl_->find(host);
    return r ? r->page_rank : Lookup<double>::unavailable();
}

Lookup<bool> FixtureLookupClient::search_indexed(const std::string& host) const {
    const HostRecord* r = impl_->find(host);
    return r ? r->search_indexed : Lookup<bool>::unavailable();
}

Lookup<long> FixtureLookupClient::links_pointing(const std::string& host) const {
    const HostRecord* r = impl_->find(host);
    return r ? r->links_pointing : Lookup<long>::unavailable();
}

Lookup<long> FixtureLookupClient::registration_length_days(const std::string& host) const {
    const HostRecord* r = impl_->find(host);
    return r ? r->registration_length_days : Lookup<long>::unavailable();
}

Lookup<std::string> FixtureLookupClient::whois_domain(const std::string& host) const {
    const HostRecord* r = impl_->find(host);
    return r ? r->whois_domain : Lookup<std::string>::unavailable();
}

Lookup<bool> LiveDnsLookupClient::dns_record(const std::string& host) const {
    if (host.empty()) return Lookup<bool>::unavailable();
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    int rc = getaddrinfo(host.c_str(), nullptr, &hints, &res);
    if (res) freeaddrinfo(res);
    if (rc == 0) return Lookup<bool>::found(true);
    if (rc == EAI_NONAME
#ifdef EAI_NODATA
        || rc == EAI_NODATA
#endif
    )
        return Lookup<bool>::found(false);
    return Lookup<bool>::unavailable();  // resolver itself failed
}

}  // namespace phishml
