#include <doctest.h>

#include <algorithm>
#include <map>
#include <string>

#include "phishml/common.hpp"
#include "phishml/extractor.hpp"
#include "phishml/lookup.hpp"

#include "test_util.hpp"

using namespace phishml;
using testutil::throws_containing;
using testutil::write_file;

namespace {

const ExtractionThresholds kDefaults{};

/// Lookup client with canned per-method answers for one host.
class MapLookupClient : public StubLookupClient {
public:
    Lookup<long> age = Lookup<long>::unavailable();
    Lookup<bool> dns = Lookup<bool>::unavailable();
    Lookup<long> traffic = Lookup<long>::unavailable();
    Lookup<double> pagerank = Lookup<double>::unavailable();
    Lookup<bool> indexed = Lookup<bool>::unavailable();
    Lookup<long> links = Lookup<long>::unavailable();
    Lookup<long> registration = Lookup<long>::unavailable();
    Lookup<std::string> whois = Lookup<std::string>::unavailable();

    Lookup<long> domain_age_days(const std::string&) const override { return age; }
    Lookup<bool> dns_record(const std::string&) const override { return dns; }
    Lookup<long> traffic_rank(const std::string&) const override { return traffic; }
    Lookup<double> page_rank(const std::string&) const override { return pagerank; }
    Lookup<bool> search_indexed(const std::string&) const override { return indexed; }
    Lookup<long> links_pointing(const std::string&) const override { return links; }
    Lookup<long> registration_length_days(const std::string&) const override { return registration; }
    Lookup<std::string> whois_domain(const std::string&) const override { return whois; }
};

int feature_of(const ExtractionResult& r, const std::string& name) {
    int idx = canonical_schema().feature_index(name);
    REQUIRE(idx >= 0);
    return r.vector.values[static_cast<std::size_t>(idx)];
}

Provenance provenance_of(const ExtractionResult& r, const std::string& name) {
    int idx = canonical_schema().feature_index(name);
    REQUIRE(idx >= 0);
    return r.provenance[static_cast<std::size_t>(idx)];
}

}  // namespace

TEST_SUITE_BEGIN("extractor");

TEST_CASE("canonical schema lists the 30 conventional features in order") {
    const FeatureSchema& s = canonical_schema();
    CHECK(s.arity() == 30);
    CHECK(s.label_name == "Result");
    // Spot-check positions, including the idiosyncratic spellings that the
    // public corpus headers use.
    CHECK(s.feature_names[0] == "having_IP_Address");
    CHECK(s.feature_names[1] == "URL_Length");
    CHECK(s.feature_names[2] == "Shortining_Service");
    CHECK(s.feature_names[7] == "SSLfinal_State");
    CHECK(s.feature_names[8] == "Domain_registeration_length");
    CHECK(s.feature_names[21] == "popUpWidnow");
    CHECK(s.feature_names[29] == "Statistical_report");
    // Every feature belongs to exactly one category and the counts match the
    // conventional taxonomy.
    std::map<FeatureCategory, int> counts;
    for (const auto& name : s.feature_names) ++counts[category_of(name)];
    CHECK(counts[FeatureCategory::AddressBar] == 12);
    CHECK(counts[FeatureCategory::Abnormal] == 6);
    CHECK(counts[FeatureCategory::HtmlJavaScript] == 5);
    CHECK(counts[FeatureCategory::Domain] == 7);
    CHECK(category_of("having_IP_Address") == FeatureCategory::AddressBar);
    CHECK(category_of("SFH") == FeatureCategory::Abnormal);
    CHECK(category_of("Iframe") == FeatureCategory::HtmlJavaScript);
    CHECK(category_of("DNSRecord") == FeatureCategory::Domain);
    CHECK(throws_containing<DataError>([] { category_of("no_such_feature"); }, "no_such_feature"));
    CHECK(category_name(FeatureCategory::AddressBar) == "address_bar");
}

TEST_CASE("parse_url decomposes absolute URLs") {
    ParsedUrl u = parse_url("https://user@Evil.Example.com:8443/login?next=/home#top");
    CHECK(u.scheme == "https");
    CHECK(u.scheme_was_given);
    CHECK(u.userinfo == "user");
    CHECK(u.host == "evil.example.com");  // lowercased
    CHECK(u.port == 8443);
    CHECK(u.has_explicit_port());
    CHECK(u.path == "/login");
    CHECK(u.query == "next=/home");
    CHECK(u.fragment == "top");

    SUBCASE("scheme defaults to http when omitted") {
        ParsedUrl v = parse_url("www.example.com/index.html");
        CHECK(v.scheme == "http");
        CHECK_FALSE(v.scheme_was_given);
        CHECK(v.host == "www.example.com");
        CHECK(v.path == "/index.html");
        CHECK_FALSE(v.has_explicit_port());
    }
    SUBCASE("IPv6 literal with port") {
        ParsedUrl v = parse_url("http://[2001:DB8::1]:8080/x");
        CHECK(v.host == "2001:db8::1");
        CHECK(v.port == 8080);
    }
    SUBCASE("bare host") {
        ParsedUrl v = parse_url("example.com");
        CHECK(v.host == "example.com");
        CHECK(v.path.empty());
    }
    SUBCASE("errors name the problem") {
        CHECK(throws_containing<DataError>([] { parse_url(""); }, "empty"));
        CHECK(throws_containing<DataError>([] { parse_url("http://"); }, "no host"));
        CHECK(throws_containing<DataError>([] { parse_url("http://host:80x/"); }, "port"));
        CHECK(throws_containing<DataError>([] { parse_url("ht tp://example.com"); }, "whitespace"));
        CHECK(throws_containing<DataError>([] { parse_url("1http://example.com/"); }, "scheme"));
    }
}

TEST_CASE("host_is_ip_address recognizes the notations that matter") {
    CHECK(host_is_ip_address("192.168.0.1"));
    CHECK(host_is_ip_address("0x7f.0x0.0x0.0x1"));  // hex dotted form
    CHECK(host_is_ip_address("2001:db8::1"));
    CHECK_FALSE(host_is_ip_address("example.com"));
    CHECK_FALSE(host_is_ip_address("256.1.1.1"));     // octet out of range
    CHECK_FALSE(host_is_ip_address("1.2.3"));         // too few labels
    CHECK_FALSE(host_is_ip_address("1.2.3.4.5"));     // too many labels
    CHECK_FALSE(host_is_ip_address("1.2.3.a"));
    CHECK_FALSE(host_is_ip_address(""));
}

TEST_CASE("registered_domain strips subdomains, honoring two-part suffixes") {
    CHECK(registered_domain("a.b.example.com") == "example.com");
    CHECK(registered_domain("www.example.co.uk") == "example.co.uk");
    CHECK(registered_domain("deep.sub.example.co.uk") == "example.co.uk");
    CHECK(registered_domain("example.com") == "example.com");
    CHECK(registered_domain("localhost") == "localhost");
    CHECK(registered_domain("192.168.0.1") == "192.168.0.1");  // IPs unchanged
    CHECK(registered_domain("example.co.uk") == "example.co.uk");
}

TEST_CASE("lexical feature extractors apply the documented cut-offs") {
    SUBCASE("url_length brackets at 54 and 75") {
        CHECK(url_length(std::string(53, 'a'), kDefaults) == 1);
        CHECK(url_length(std::string(54, 'a'), kDefaults) == 0);
        CHECK(url_length(std::string(75, 'a'), kDefaults) == 0);
        CHECK(url_length(std::string(76, 'a'), kDefaults) == -1);
        CHECK(url_length(std::string(80, 'a'), kDefaults) == -1);
        CHECK(url_length("http://www.example.com/", kDefaults) == 1);  // 23 chars
    }
    SUBCASE("shortening_service matches the bundled host list") {
        CHECK(shortening_service(parse_url("http://bit.ly/2kJ3x"), kDefaults) == -1);
        CHECK(shortening_service(parse_url("https://tinyurl.com/xyz"), kDefaults) == -1);
        CHECK(shortening_service(parse_url("http://example.com/bit.ly"), kDefaults) == 1);
    }
    SUBCASE("at_symbol") {
        CHECK(at_symbol("https://user@evil.example.com/login") == -1);
        CHECK(at_symbol("https://example.com/") == 1);
    }
    SUBCASE("double_slash_redirecting ignores the scheme separator") {
        CHECK(double_slash_redirecting("http://example.com/a//b") == -1);
        CHECK(double_slash_redirecting("http://example.com//evil.com") == -1);
        CHECK(double_slash_redirecting("http://example.com/a/b") == 1);
        CHECK(double_slash_redirecting("example.com//x") == -1);  // no scheme
    }
    SUBCASE("prefix_suffix flags a dash anywhere in the host") {
        CHECK(prefix_suffix(parse_url("http://pay-pal.example.com/")) == -1);
        CHECK(prefix_suffix(parse_url("http://pay-pal.com/")) == -1);
        CHECK(prefix_suffix(parse_url("http://paypal.com/a-b")) == 1);  // path dash ignored
    }
    SUBCASE("sub_domain_count counts labels before the registered domain") {
        CHECK(sub_domain_count(parse_url("http://example.com/"), kDefaults) == 1);
        CHECK(sub_domain_count(parse_url("http://www.example.com/"), kDefaults) == 1);  // www ignored
        CHECK(sub_domain_count(parse_url("http://a.example.com/"), kDefaults) == 1);
        CHECK(sub_domain_count(parse_url("http://a.b.example.com/"), kDefaults) == 0);
        CHECK(sub_domain_count(parse_url("http://a.b.c.example.com/"), kDefaults) == -1);
        CHECK(sub_domain_count(parse_url("http://192.168.0.1/"), kDefaults) == -1);
        // Two-part suffix: www.example.co.uk has zero real subdomains.
        CHECK(sub_domain_count(parse_url("http://www.example.co.uk/"), kDefaults) == 1);
    }
    SUBCASE("https_token_in_domain") {
        CHECK(https_token_in_domain(parse_url("http://https-secure.example.com/")) == -1);
        CHECK(https_token_in_domain(parse_url("https://example.com/")) == 1);
    }
    SUBCASE("ip_address_host") {
        CHECK(ip_address_host(parse_url("http://192.168.0.1/x")) == -1);
        CHECK(ip_address_host(parse_url("http://example.com/x")) == 1);
    }
    SUBCASE("port_check accepts only the scheme's conventional port") {
        CHECK(port_check(parse_url("http://example.com/")) == 1);
        CHECK(port_check(parse_url("http://example.com:80/")) == 1);
        CHECK(port_check(parse_url("https://example.com:443/")) == 1);
        CHECK(port_check(parse_url("http://example.com:8080/")) == -1);
        CHECK(port_check(parse_url("https://example.com:80/")) == -1);
    }
    SUBCASE("ssl_state follows the scheme") {
        CHECK(ssl_state(parse_url("https://example.com/")) == 1);
        CHECK(ssl_state(parse_url("http://example.com/")) == -1);
    }
    SUBCASE("statistical_report consults the configured blocklist") {
        ExtractionThresholds t;
        t.reported_hosts = {"evil.example.net", "bad.org"};
        // Matches on the exact host or on the host's registered domain.
        CHECK(statistical_report(parse_url("http://evil.example.net/"), t) == -1);
        CHECK(statistical_report(parse_url("http://www.bad.org/"), t) == -1);
        CHECK(statistical_report(parse_url("http://deep.sub.bad.org/"), t) == -1);
        // A listed subdomain does not taint its siblings or children.
        CHECK(statistical_report(parse_url("http://sub.evil.example.net/"), t) == 1);
        CHECK(statistical_report(parse_url("http://good.example.net/"), t) == 1);
        CHECK(statistical_report(parse_url("http://evil.example.net/"), kDefaults) == 1);
    }
}

TEST_CASE("HTML feature extractors") {
    const ParsedUrl page = parse_url("http://example.com/");

    SUBCASE("redirect_count counts meta refresh tags") {
        CHECK(redirect_count("<html><body>hi</body></html>", kDefaults) == 1);
        CHECK(redirect_count("<meta http-equiv='refresh' content='0;url=x'>", kDefaults) == 1);
        std::string two = "<meta http-equiv='refresh'><meta http-equiv=\"REFRESH\">";
        CHECK(redirect_count(two, kDefaults) == 0);  // 2 in (1,3]
        CHECK(redirect_count(two + two, kDefaults) == -1);  // 4 > 3
    }
    SUBCASE("anchor_ratio classifies unsafe anchors") {
        // 0 anchors -> benign by convention.
        CHECK(anchor_ratio(page, "<p>no links</p>", kDefaults) == 1);
        // 1 of 4 unsafe = 0.25 < 0.31 -> 1.
        std::string mostly_safe =
            "<a href='/a'>x</a><a href='/b'>x</a><a href='/c'>x</a><a href='#'>x</a>";
        CHECK(anchor_ratio(page, mostly_safe, kDefaults) == 1);
        // 2 of 4 unsafe = 0.5 in [0.31, 0.67] -> 0.
        std::string half =
            "<a href='/a'>x</a><a href='/b'>x</a><a href='javascript:void(0)'>x</a>"
            "<a href='http://other.org/p'>x</a>";
        CHECK(anchor_ratio(page, half, kDefaults) == 0);
        // 3 of 4 unsafe = 0.75 > 0.67 -> -1.
        std::string unsafe =
            "<a href='#'>x</a><a href='#top'>x</a><a href='javascript:x()'>x</a><a href='/ok'>x</a>";
        CHECK(anchor_ratio(page, unsafe, kDefaults) == -1);
        // Same-registrable-domain absolute links are internal.
        CHECK(anchor_ratio(page, "<a href='http://sub.example.com/x'>x</a>", kDefaults) == 1);
    }
    SUBCASE("request_url_ratio measures foreign media") {
        CHECK(request_url_ratio(page, "<p>none</p>", kDefaults) == 1);
        CHECK(request_url_ratio(page, "<img src='/local.png'><img src='http://cdn.example.com/a.png'>",
                                kDefaults) == 1);  // 0 external
        std::string half = "<img src='/l.png'><img src='http://other.org/r.png'>";
        CHECK(request_url_ratio(page, half, kDefaults) == 0);  // 0.5 in [0.22, 0.61]
        CHECK(request_url_ratio(page, "<img src='http://other.org/r.png'>", kDefaults) == -1);
    }
    SUBCASE("links_in_tags_ratio covers link and script tags") {
        CHECK(links_in_tags_ratio(page, "", kDefaults) == 1);
        std::string internal = "<link rel=stylesheet href='/s.css'><script src='/a.js'></script>";
        CHECK(links_in_tags_ratio(page, internal, kDefaults) == 1);
        std::string half = "<link href='/s.css'><script src='https://cdn.other.net/a.js'></script>";
        CHECK(links_in_tags_ratio(page, half, kDefaults) == 0);  // 0.5 in [0.17, 0.81]
        CHECK(links_in_tags_ratio(page, "<script src='https://cdn.other.net/a.js'></script>",
                                  kDefaults) == -1);
    }
    SUBCASE("sfh_check grades form handlers") {
        CHECK(sfh_check(page, "<form action='/submit'>") == 1);
        CHECK(sfh_check(page, "<form action='http://other.org/steal'>") == 0);
        CHECK(sfh_check(page, "<form action=''>") == -1);
        CHECK(sfh_check(page, "<form action='about:blank'>") == -1);
        CHECK(sfh_check(page, "<form>") == -1);  // missing handler
        // Worst form wins.
        CHECK(sfh_check(page, "<form action='/ok'><form action='about:blank'>") == -1);
    }
    SUBCASE("mailto_submit") {
        CHECK(mailto_submit("<form action='mailto:x@y.com'>") == -1);
        CHECK(mailto_submit("<script>mail(addr)</script>") == -1);
        CHECK(mailto_submit("<form action='/submit'>") == 1);
    }
    SUBCASE("iframe_present") {
        CHECK(iframe_present("<iframe src='x'></iframe>") == -1);
        CHECK(iframe_present("<frame src='x'>") == -1);
        CHECK(iframe_present("<div>iframe</div>") == 1);  // text, not a tag
    }
    SUBCASE("right_click_disabled") {
        CHECK(right_click_disabled("<script>if (event.button == 2) return false;</script>") == -1);
        CHECK(right_click_disabled("<body oncontextmenu=\"return false\">") == -1);
        CHECK(right_click_disabled("<body>plain</body>") == 1);
    }
    SUBCASE("popup_window") {
        CHECK(popup_window("<script>window.open('x')</script>") == -1);
        CHECK(popup_window("<script>prompt('pin?')</script>") == -1);
        CHECK(popup_window("<p>window open hours</p>") == 1);
    }
    SUBCASE("on_mouseover_rewrite needs both the handler and a status write") {
        CHECK(on_mouseover_rewrite("<a onmouseover=\"window.status='http://x'\">") == -1);
        CHECK(on_mouseover_rewrite("<a onmouseover='highlight()'>") == 1);
        CHECK(on_mouseover_rewrite("<script>window.status='x'</script>") == 1);
    }
    SUBCASE("favicon_external") {
        CHECK(favicon_external(page, "<link rel='icon' href='/favicon.ico'>") == 1);
        CHECK(favicon_external(page, "<link rel='shortcut icon' href='http://other.org/f.ico'>") == -1);
        CHECK(favicon_external(page, "<link rel='stylesheet' href='http://other.org/s.css'>") == 1);
    }
}

TEST_CASE("abnormal_url compares the host against WHOIS identity") {
    ParsedUrl u = parse_url("http://www.example.com/");
    MapLookupClient c;
    SUBCASE("unavailable -> suspicious") { CHECK(abnormal_url(u, c) == 0); }
    SUBCASE("host contains the registered identity -> consistent") {
        c.whois = Lookup<std::string>::found("example.com");
        CHECK(abnormal_url(u, c) == 1);
    }
    SUBCASE("mismatched identity -> abnormal") {
        c.whois = Lookup<std::string>::found("other.org");
        CHECK(abnormal_url(u, c) == -1);
    }
    SUBCASE("no WHOIS identity at all -> abnormal") {
        c.whois = Lookup<std::string>::absent();
        CHECK(abnormal_url(u, c) == -1);
    }
}

TEST_CASE("extract yields a complete vector, offline included") {
    StubLookupClient stub;
    ExtractionResult r = extract("http://bit.ly/2kJ3x", std::nullopt, stub);

    CHECK(r.vector.values.size() == 30);
    CHECK(r.provenance.size() == 30);
    CHECK_FALSE(r.vector.label.has_value());
    for (int v : r.vector.values) CHECK((v == -1 || v == 0 || v == 1));

    CHECK(feature_of(r, "Shortining_Service") == -1);
    CHECK(feature_of(r, "URL_Length") == 1);  // 19 chars
    CHECK(feature_of(r, "having_At_Symbol") == 1);
    CHECK(feature_of(r, "SSLfinal_State") == -1);  // plain http

    // Offline closure: every lookup-backed feature defaults to 0 with the
    // matching provenance, and HTML features do the same without page text.
    for (const char* name : {"age_of_domain", "DNSRecord", "web_traffic", "Page_Rank",
                             "Google_Index", "Links_pointing_to_page", "Abnormal_URL",
                             "Domain_registeration_length"}) {
        CHECK(feature_of(r, name) == 0);
        CHECK(provenance_of(r, name) == Provenance::UnavailableDefault);
    }
    for (const char* name : {"Favicon", "URL_of_Anchor", "SFH", "Iframe", "Redirect"}) {
        CHECK(feature_of(r, name) == 0);
        CHECK(provenance_of(r, name) == Provenance::UnavailableDefault);
    }
    CHECK(provenance_of(r, "URL_Length") == Provenance::Computed);

    SUBCASE("at-symbol example") {
        ExtractionResult a = extract("https://user@evil.example.com/login", std::nullopt, stub);
        CHECK(feature_of(a, "having_At_Symbol") == -1);
        CHECK(feature_of(a, "SSLfinal_State") == 1);
    }
    SUBCASE("HTML features engage when page text is given") {
        ExtractionResult h = extract("http://example.com/", std::string("<iframe src='x'>"), stub);
        CHECK(feature_of(h, "Iframe") == -1);
        CHECK(provenance_of(h, "Iframe") == Provenance::Computed);
        CHECK(feature_of(h, "URL_of_Anchor") == 1);  // no anchors at all
    }
    SUBCASE("determinism: identical inputs, identical result") {
        ExtractionResult again = extract("http://bit.ly/2kJ3x", std::nullopt, stub);
        CHECK(again.vector.values == r.vector.values);
        CHECK(again.provenance == r.provenance);
    }
    SUBCASE("unparseable URL raises") {
        CHECK_THROWS_AS(extract("http://", std::nullopt, stub), DataError);
    }
}

TEST_CASE("lookup-backed features map client answers through the thresholds") {
    MapLookupClient c;
    c.age = Lookup<long>::found(400);
    c.dns = Lookup<bool>::found(true);
    c.traffic = Lookup<long>::found(50);
    c.pagerank = Lookup<double>::found(0.8);
    c.indexed = Lookup<bool>::found(true);
    c.links = Lookup<long>::found(45);
    c.registration = Lookup<long>::found(900);
    c.whois = Lookup<std::string>::found("example.com");

    ExtractionResult r = extract("http://example.com/", std::nullopt, c);
    CHECK(feature_of(r, "age_of_domain") == 1);          // 400 >= 180
    CHECK(feature_of(r, "DNSRecord") == 1);
    CHECK(feature_of(r, "web_traffic") == 1);            // 50 < 100000
    CHECK(feature_of(r, "Page_Rank") == 1);              // 0.8 >= 0.2
    CHECK(feature_of(r, "Google_Index") == 1);
    CHECK(feature_of(r, "Links_pointing_to_page") == 1); // 45 > 2
    CHECK(feature_of(r, "Domain_registeration_length") == 1);  // 900 > 365
    CHECK(feature_of(r, "Abnormal_URL") == 1);
    CHECK(provenance_of(r, "DNSRecord") == Provenance::Lookup);

    SUBCASE("thresholds bite") {
        c.age = Lookup<long>::found(100);              // below 180
        c.traffic = Lookup<long>::found(500000);       // ranked but poor
        c.pagerank = Lookup<double>::found(0.1);
        c.links = Lookup<long>::found(1);              // 1..2 -> 0
        c.registration = Lookup<long>::found(365);     // not strictly greater
        ExtractionResult r2 = extract("http://example.com/", std::nullopt, c);
        CHECK(feature_of(r2, "age_of_domain") == -1);
        CHECK(feature_of(r2, "web_traffic") == 0);
        CHECK(feature_of(r2, "Page_Rank") == -1);
        CHECK(feature_of(r2, "Links_pointing_to_page") == 0);
        CHECK(feature_of(r2, "Domain_registeration_length") == -1);
    }
    SUBCASE("absent answers take the phishing-leaning value") {
        c.traffic = Lookup<long>::absent();  // unranked site
        c.dns = Lookup<bool>::absent();
        c.links = Lookup<long>::absent();    // zero links pointing
        ExtractionResult r3 = extract("http://example.com/", std::nullopt, c);
        CHECK(feature_of(r3, "web_traffic") == -1);
        CHECK(feature_of(r3, "DNSRecord") == -1);
        CHECK(feature_of(r3, "Links_pointing_to_page") == -1);
        CHECK(provenance_of(r3, "web_traffic") == Provenance::Lookup);
    }
}

TEST_CASE("fixture lookup client answers from JSON, falling back to the registered domain") {
    std::string path = write_file("fixture_lookup.json", R"({
      "example.com": {
        "domain_age_days": 4000, "dns_record": true, "traffic_rank": 5123,
        "page_rank": 0.55, "google_indexed": true, "links_pointing": 45,
        "registration_length_days": 900, "whois_domain": "example.com"
      },
      "unranked.net": {"traffic_rank": null, "dns_record": false}
    })");
    FixtureLookupClient c(path);

    CHECK(c.domain_age_days("example.com").value == 4000);
    CHECK(c.dns_record("example.com").value == true);
    CHECK(c.traffic_rank("example.com").value == 5123);
    CHECK(c.page_rank("example.com").value == doctest::Approx(0.55));
    CHECK(c.search_indexed("example.com").value == true);
    CHECK(c.links_pointing("example.com").value == 45);
    CHECK(c.registration_length_days("example.com").value == 900);
    CHECK(c.whois_domain("example.com").value == "example.com");

    // Subdomains inherit the registered-domain entry.
    CHECK(c.dns_record("www.example.com").status == LookupStatus::Value);
    CHECK(c.dns_record("deep.sub.example.com").value == true);

    // null -> Absent; missing field -> Unavailable; unknown host -> Unavailable.
    CHECK(c.traffic_rank("unranked.net").status == LookupStatus::Absent);
    CHECK(c.dns_record("unranked.net").value == false);
    CHECK(c.page_rank("unranked.net").status == LookupStatus::Unavailable);
    CHECK(c.dns_record("never-heard-of.it").status == LookupStatus::Unavailable);

    SUBCASE("malformed fixture files are rejected with context") {
        std::string bad = write_file("fixture_bad.json", "{\"x\": [1,2,3]}");
        CHECK_THROWS_AS(FixtureLookupClient{bad}, DataError);
        std::string worse = write_file("fixture_worse.json", "not json");
        CHECK_THROWS_AS(FixtureLookupClient{worse}, DataError);
        CHECK_THROWS_AS(FixtureLookupClient{"/no/such/fixture.json"}, DataError);
        // Field types are validated up front, naming the offending field.
        std::string badtype = write_file("fixture_badtype.json",
                                         R"({"h.com": {"traffic_rank": "fast"}})");
        CHECK(testutil::throws_containing<DataError>(
            [&] { FixtureLookupClient ct(badtype); }, "traffic_rank"));
    }
}

TEST_CASE("threshold config loads partial overrides and round-trips") {
    std::string path = write_file("thresholds.json", R"({
      "url_length_short": 40, "anchor_high": 0.9,
      "shortener_hosts": ["short.ly"], "reported_hosts": ["bad.example.org"]
    })");
    ExtractionThresholds t = ExtractionThresholds::load(path);
    CHECK(t.url_length_short == 40);
    CHECK(t.anchor_high == doctest::Approx(0.9));
    CHECK(t.url_length_long == 75);  // untouched default
    CHECK(t.shortener_hosts == std::set<std::string>{"short.ly"});
    CHECK(t.reported_hosts.count("bad.example.org") == 1);

    // to_json captures every field; reloading reproduces the same values.
    std::string dumped = write_file("thresholds_dump.json", t.to_json());
    ExtractionThresholds t2 = ExtractionThresholds::load(dumped);
    CHECK(t2.url_length_short == t.url_length_short);
    CHECK(t2.anchor_high == doctest::Approx(t.anchor_high));
    CHECK(t2.shortener_hosts == t.shortener_hosts);
    CHECK(t2.reported_hosts == t.reported_hosts);

    SUBCASE("bad config errors") {
        CHECK_THROWS_AS(ExtractionThresholds::load("/no/such/thresholds.json"), ConfigError);
        std::string bad = write_file("thresholds_bad.json", "[1,2]");
        CHECK_THROWS_AS(ExtractionThresholds::load(bad), ConfigError);
        std::string badfield = write_file("thresholds_badfield.json",
                                          R"({"url_length_short": "forty"})");
        CHECK(throws_containing<ConfigError>(
            [&] { ExtractionThresholds::load(badfield); }, "url_length_short"));
    }
}

TEST_SUITE_END();
