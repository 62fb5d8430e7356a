#ifndef PHISHML_LOOKUP_HPP
#define PHISHML_LOOKUP_HPP

#include <memory>
#include <string>

namespace phishml {

/// Outcome of one external lookup. Absent means the source answered "no such
/// entry" (e.g. a site with no traffic rank); Unavailable means the source
/// could not be consulted at all and the feature falls back to 0.
enum class LookupStatus { Value, Absent, Unavailable };

template <typename T>
struct Lookup {
    LookupStatus status = LookupStatus::Unavailable;
    T value{};

    static Lookup found(T v) { return Lookup{LookupStatus::Value, std::move(v)}; }
    static Lookup absent() { return Lookup{LookupStatus::Absent, T{}}; }
    static Lookup unavailable() { return Lookup{LookupStatus::Unavailable, T{}}; }

    bool has_value() const { return status == LookupStatus::Value; }
};

/// External data a handful of features need. Implementations must be
/// deterministic given fixed backing data; every operation may report
/// Unavailable.
class LookupClient {
public:
    virtual ~LookupClient() = default;

    virtual Lookup<long> domain_age_days(const std::string& host) const = 0;
    virtual Lookup<bool> dns_record(const std::string& host) const = 0;
    virtual Lookup<long> traffic_rank(const std::string& host) const = 0;  // Absent = unranked
    virtual Lookup<double> page_rank(const std::string& host) const = 0;
    virtual Lookup<bool> search_indexed(const std::string& host) const = 0;
    virtual Lookup<long> links_pointing(const std::string& host) const = 0;
    virtual Lookup<long> registration_length_days(const std::string& host) const = 0;
    /// WHOIS-registered domain name, consumed by the abnormal-URL check.
    virtual Lookup<std::string> whois_domain(const std::string& host) const = 0;
};

/// Answers Unavailable everywhere: the fully offline fallback.
class StubLookupClient : public LookupClient {
public:
    Lookup<long> domain_age_days(const std::string&) const override { return Lookup<long>::unavailable(); }
    Lookup<bool> dns_record(const std::string&) const override { return Lookup<bool>::unavailable(); }
    Lookup<long> traffic_rank(const std::string&) const override { return Lookup<long>::unavailable(); }
    Lookup<double> page_rank(const std::string&) const override { return Lookup<double>::unavailable(); }
    Lookup<bool> search_indexed(const std::string&) const override { return Lookup<bool>::unavailable(); }
    Lookup<long> links_pointing(const std::string&) const override { return Lookup<long>::unavailable(); }
    Lookup<long> registration_length_days(const std::string&) const override { return Lookup<long>::unavailable(); }
    Lookup<std::string> whois_domain(const std::string&) const override { return Lookup<std::string>::unavailable(); }
};

/// Serves answers from a JSON file mapping host -> fields:
///   {"example.com": {"domain_age_days": 4000, "dns_record": true,
///                    "traffic_rank": 5123, "page_rank": 0.55,
///                    "google_indexed": true, "links_pointing": 45,
///                    "registration_length_days": 900,
///                    "whois_domain": "example.com"}}
/// A JSON null means Absent; a missing field or unknown host means
/// Unavailable. Hosts fall back to their registered domain entry.
class FixtureLookupClient : public LookupClient {
public:
    explicit FixtureLookupClient(const std::string& fixture_path);
    ~FixtureLookupClient() override;

    Lookup<long> domain_age_days(const std::string& host) const override;
    Lookup<bool> dns_record(const std::string& host) const override;
    Lookup<long> traffic_rank(const std::string& host) const override;
    Lookup<double> page_rank(const std::string& host) const override;
    Lookup<bool> search_indexed(const std::string& host) const override;
    Lookup<long> links_pointing(const std::string& host) const override;
    Lookup<long> registration_length_days(const std::string& host) const override;
    Lookup<std::string> whois_domain(const std::string& host) const override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Resolves DNS presence live via getaddrinfo; everything else is
/// Unavailable. Only used when explicitly enabled on the CLI.
class LiveDnsLookupClient : public StubLookupClient {
public:
    Lookup<bool> dns_record(const std::string& host) const override;
};

}  // namespace phishml

#endif
