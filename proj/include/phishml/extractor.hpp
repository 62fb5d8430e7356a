#ifndef PHISHML_EXTRACTOR_HPP
#define PHISHML_EXTRACTOR_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "phishml/dataset.hpp"
#include "phishml/lookup.hpp"

namespace phishml {

enum class FeatureCategory { AddressBar, Abnormal, HtmlJavaScript, Domain };

std::string category_name(FeatureCategory c);

/// The 30 indicator features in their conventional order (the published
/// corpus spells a few of them idiosyncratically; those spellings are kept
/// so CSV headers match existing data). Label column is "Result".
const FeatureSchema& canonical_schema();

/// Category assignment for every canonical feature name.
FeatureCategory category_of(const std::string& feature_name);

/// Decomposed URL. Parsing never touches the network.
struct ParsedUrl {
    std::string scheme;    // lowercase; "http" assumed when absent
    std::string userinfo;  // text before '@' in the authority, if any
    std::string host;      // lowercase, brackets stripped from IPv6
    int port = -1;         // -1 = none given
    std::string path;      // includes leading '/', may be empty
    std::string query;     // without '?'
    std::string fragment;  // without '#'
    bool scheme_was_given = false;

    bool has_explicit_port() const { return port >= 0; }
};

/// Parses an absolute URL; the scheme may be omitted. Throws DataError when
/// no usable host can be found (empty input, whitespace, empty authority).
ParsedUrl parse_url(const std::string& url);

/// Host reduced to its registrable domain ("a.b.example.co.uk" ->
/// "example.co.uk"). IP-address hosts are returned unchanged. Uses a
/// bundled list of common two-part public suffixes.
std::string registered_domain(const std::string& host);

/// True when the host is a dotted-decimal IPv4 address (optionally in
/// hexadecimal notation) or an IPv6 literal.
bool host_is_ip_address(const std::string& host);

/// All numeric cut-offs in one overridable bundle. Loading from JSON keeps
/// absent fields at their defaults.
struct ExtractionThresholds {
    int url_length_short = 54;        // strictly below -> 1
    int url_length_long = 75;         // strictly above -> -1
    int subdomain_low = 1;            // <= -> 1; == low+1 -> 0; above -> -1
    double anchor_low = 0.31;         // unsafe-anchor ratio
    double anchor_high = 0.67;
    double request_low = 0.22;        // foreign-resource ratio
    double request_high = 0.61;
    double links_in_tags_low = 0.17;  // foreign link/script ratio
    double links_in_tags_high = 0.81;
    long domain_age_min_days = 180;
    long registration_min_days = 365;
    long traffic_rank_good = 100000;  // strictly below -> 1
    double page_rank_min = 0.2;
    long links_pointing_some = 2;     // 0 -> -1; 1..some -> 0; above -> 1
    int redirect_low = 1;             // <= -> 1
    int redirect_high = 3;            // <= -> 0; above -> -1
    std::set<std::string> shortener_hosts = {"bit.ly", "tinyurl.com", "goo.gl",
                                             "t.co",   "ow.ly",       "is.gd"};
    std::set<std::string> reported_hosts;  // statistical-report blocklist

    static ExtractionThresholds load(const std::string& json_path);
    std::string to_json() const;
};

enum class Provenance { Computed, Lookup, UnavailableDefault };

struct ExtractionResult {
    FeatureVector vector;                 // label left unset
    std::vector<Provenance> provenance;   // one entry per feature
};

/// Per-feature extractors. Each returns a value in {-1, 0, 1}; -1 marks the
/// phishing-leaning outcome. HTML-dependent checks take the raw page text.
int url_length(const std::string& url, const ExtractionThresholds& t);
int shortening_service(const ParsedUrl& u, const ExtractionThresholds& t);
int at_symbol(const std::string& url);
int double_slash_redirecting(const std::string& url);
int prefix_suffix(const ParsedUrl& u);
int sub_domain_count(const ParsedUrl& u, const ExtractionThresholds& t);
int https_token_in_domain(const ParsedUrl& u);
int ip_address_host(const ParsedUrl& u);
int port_check(const ParsedUrl& u);
int ssl_state(const ParsedUrl& u);
int redirect_count(const std::string& html, const ExtractionThresholds& t);
int anchor_ratio(const ParsedUrl& u, const std::string& html, const ExtractionThresholds& t);
int request_url_ratio(const ParsedUrl& u, const std::string& html, const ExtractionThresholds& t);
int links_in_tags_ratio(const ParsedUrl& u, const std::string& html, const ExtractionThresholds& t);
int sfh_check(const ParsedUrl& u, const std::string& html);
int mailto_submit(const std::string& html);
int iframe_present(const std::string& html);
int right_click_disabled(const std::string& html);
int popup_window(const std::string& html);
int on_mouseover_rewrite(const std::string& html);
int favicon_external(const ParsedUrl& u, const std::string& html);
int abnormal_url(const ParsedUrl& u, const LookupClient& lookups);
int statistical_report(const ParsedUrl& u, const ExtractionThresholds& t);

/// Full pipeline: parse, run every per-feature extractor, consult lookups.
/// HTML checks yield 0 when no page text is supplied; lookup checks yield 0
/// when the client reports Unavailable.
ExtractionResult extract(const std::string& url, const std::optional<std::string>& html,
                         const LookupClient& lookups,
                         const ExtractionThresholds& thresholds = ExtractionThresholds{});

}  // namespace phishml

#endif
