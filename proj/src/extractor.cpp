#include "phishml/extractor.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "phishml/common.hpp"

namespace phishml {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_labels(const std::string& host) {
    std::vector<std::string> labels;
    std::string cur;
    for (char c : host) {
        if (c == '.') {
            labels.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    labels.push_back(cur);
    return labels;
}

// Common two-part public suffixes; enough to keep registrable-domain
// detection honest for mainstream hosts without a full suffix database.
const std::set<std::string>& two_part_suffixes() {
    static const std::set<std::string> suffixes = {
        "co.uk",  "org.uk", "ac.uk",  "gov.uk", "me.uk",  "net.uk", "co.jp",  "ne.jp",
        "or.jp",  "ac.jp",  "go.jp",  "com.au", "net.au", "org.au", "edu.au", "gov.au",
        "co.nz",  "net.nz", "org.nz", "com.br", "net.br", "org.br", "com.cn", "net.cn",
        "org.cn", "com.mx", "co.in",  "net.in", "org.in", "co.za",  "com.tr", "com.ar",
        "com.sg", "com.hk", "co.kr",  "com.tw", "com.my", "co.id",  "com.eg", "com.sa"};
    return suffixes;
}

struct TagInfo {
    std::string name;   // lowercase tag name
    std::string attrs;  // raw text between the tag name and '>'
};

// Minimal tag scanner: finds every opening tag and captures its attribute
// region. Good enough for counting links and handlers; not a real parser.
std::vector<TagInfo> scan_tags(const std::string& html) {
    std::vector<TagInfo> tags;
    size_t i = 0;
    const size_t n = html.size();
    while (i < n) {
        size_t lt = html.find('<', i);
        if (lt == std::string::npos) break;
        size_t j = lt + 1;
        if (j < n && (html[j] == '/' || html[j] == '!' || html[j] == '?')) {
            i = j;
            continue;
        }
        std::string name;
        while (j < n && (std::isalnum(static_cast<unsigned char>(html[j])) || html[j] == '-'))
            name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(html[j++]))));
        if (name.empty()) {
            i = lt + 1;
            continue;
        }
        size_t gt = html.find('>', j);
        if (gt == std::string::npos) {
            tags.push_back({name, html.substr(j)});
            break;
        }
        tags.push_back({name, html.substr(j, gt - j)});
        i = gt + 1;
    }
    return tags;
}

// Value of a named attribute inside a tag's attribute region, or nullopt.
std::optional<std::string> attr_value(const std::string& attrs, const std::string& name) {
    std::string low = to_lower(attrs);
    size_t pos = 0;
    while ((pos = low.find(name, pos)) != std::string::npos) {
        bool word_start = pos == 0 || !(std::isalnum(static_cast<unsigned char>(low[pos - 1])) ||
                                        low[pos - 1] == '-');
        size_t after = pos + name.size();
        if (!word_start) {
            pos = after;
            continue;
        }
        size_t k = after;
        while (k < low.size() && std::isspace(static_cast<unsigned char>(low[k]))) ++k;
        if (k >= low.size() || low[k] != '=') {
            // Attribute present without a value (e.g. <a href>).
            if (k >= low.size() || std::isspace(static_cast<unsigned char>(low[k])) ||
                low[k] == '/' || low[k] == '>')
                return std::string{};
            pos = after;
            continue;
        }
        ++k;
        while (k < low.size() && std::isspace(static_cast<unsigned char>(low[k]))) ++k;
        if (k >= low.size()) return std::string{};
        if (low[k] == '"' || low[k] == '\'') {
            char quote = attrs[k];
            size_t end = attrs.find(quote, k + 1);
            if (end == std::string::npos) return attrs.substr(k + 1);
            return attrs.substr(k + 1, end - k - 1);
        }
        size_t end = k;
        while (end < attrs.size() && !std::isspace(static_cast<unsigned char>(attrs[end])) &&
               attrs[end] != '>')
            ++end;
        return attrs.substr(k, end - k);
    }
    return std::nullopt;
}

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// Does a reference inside the page lead off the page's site? Relative
// references and same-registrable-domain absolute ones count as internal.
bool is_external_ref(const std::string& raw_ref, const ParsedUrl& page) {
    std::string ref = trim(raw_ref);
    if (ref.empty()) return false;
    std::string low = to_lower(ref);
    if (low.rfind("javascript:", 0) == 0 || low.rfind("mailto:", 0) == 0 ||
        low.rfind("data:", 0) == 0 || low[0] == '#')
        return false;
    std::string absolute;
    if (low.rfind("//", 0) == 0) {
        absolute = "http:" + ref;
    } else if (low.find("://") != std::string::npos) {
        absolute = ref;
    } else {
        return false;  // relative path -> internal
    }
    try {
        ParsedUrl target = parse_url(absolute);
        return registered_domain(target.host) != registered_domain(page.host);
    } catch (const DataError&) {
        return false;
    }
}

int ratio_to_ternary(double ratio, double low, double high) {
    if (ratio < low) return 1;
    if (ratio <= high) return 0;
    return -1;
}

bool contains_ci(const std::string& haystack_lower, const std::string& needle_lower) {
    return haystack_lower.find(needle_lower) != std::string::npos;
}

template <typename T>
void maybe_get(const nlohmann::json& j, const char* key, T& out) {
    auto it = j.find(key);
    if (it == j.end()) return;
    try {
        out = it->get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("threshold config: field '") + key + "' has the wrong type");
    }
}

}  // namespace

std::string category_name(FeatureCategory c) {
    switch (c) {
        case FeatureCategory::AddressBar: return "address_bar";
        case FeatureCategory::Abnormal: return "abnormal";
        case FeatureCategory::HtmlJavaScript: return "html_javascript";
        case FeatureCategory::Domain: return "domain";
    }
    throw std::logic_error("unknown feature category");
}

namespace {

const std::array<std::pair<const char*, FeatureCategory>, 30> kCanonicalFeatures = {{
    {"having_IP_Address", FeatureCategory::AddressBar},
    {"URL_Length", FeatureCategory::AddressBar},
    {"Shortining_Service", FeatureCategory::AddressBar},
    {"having_At_Symbol", FeatureCategory::AddressBar},
    {"double_slash_redirecting", FeatureCategory::AddressBar},
    {"Prefix_Suffix", FeatureCategory::AddressBar},
    {"having_Sub_Domain", FeatureCategory::AddressBar},
    {"SSLfinal_State", FeatureCategory::AddressBar},
    {"Domain_registeration_length", FeatureCategory::AddressBar},
    {"Favicon", FeatureCategory::AddressBar},
    {"port", FeatureCategory::AddressBar},
    {"HTTPS_token", FeatureCategory::AddressBar},
    {"Request_URL", FeatureCategory::Abnormal},
    {"URL_of_Anchor", FeatureCategory::Abnormal},
    {"Links_in_tags", FeatureCategory::Abnormal},
    {"SFH", FeatureCategory::Abnormal},
    {"Submitting_to_email", FeatureCategory::Abnormal},
    {"Abnormal_URL", FeatureCategory::Abnormal},
    {"Redirect", FeatureCategory::HtmlJavaScript},
    {"on_mouseover", FeatureCategory::HtmlJavaScript},
    {"RightClick", FeatureCategory::HtmlJavaScript},
    {"popUpWidnow", FeatureCategory::HtmlJavaScript},
    {"Iframe", FeatureCategory::HtmlJavaScript},
    {"age_of_domain", FeatureCategory::Domain},
    {"DNSRecord", FeatureCategory::Domain},
    {"web_traffic", FeatureCategory::Domain},
    {"Page_Rank", FeatureCategory::Domain},
    {"Google_Index", FeatureCategory::Domain},
    {"Links_pointing_to_page", FeatureCategory::Domain},
    {"Statistical_report", FeatureCategory::Domain},
}};

}  // namespace

const FeatureSchema& canonical_schema() {
    static const FeatureSchema schema = [] {
        FeatureSchema s;
        ValueDomain full{true, true, true};
        for (const auto& [name, cat] : kCanonicalFeatures) {
            (void)cat;
            s.feature_names.emplace_back(name);
            s.domains.push_back(full);
        }
        s.label_name = "Result";
        s.validate();
        return s;
    }();
    return schema;
}

FeatureCategory category_of(const std::string& feature_name) {
    for (const auto& [name, cat] : kCanonicalFeatures)
        if (feature_name == name) return cat;
    throw DataError("unknown canonical feature: " + feature_name);
}

ParsedUrl parse_url(const std::string& url) {
    std::string s = trim(url);
    if (s.empty()) throw DataError("cannot parse empty URL");
    for (char c : s)
        if (std::isspace(static_cast<unsigned char>(c)))
            throw DataError("URL contains whitespace: " + url);

    ParsedUrl out;
    size_t pos = 0;
    size_t scheme_end = s.find("://");
    if (scheme_end != std::string::npos && scheme_end > 0) {
        std::string scheme = s.substr(0, scheme_end);
        bool valid = std::isalpha(static_cast<unsigned char>(scheme[0])) != 0;
        for (char c : scheme)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.')
                valid = false;
        if (!valid) throw DataError("URL has an invalid scheme: " + url);
        out.scheme = to_lower(scheme);
        out.scheme_was_given = true;
        pos = scheme_end + 3;
    } else {
        out.scheme = "http";
    }

    size_t authority_end = s.find_first_of("/?#", pos);
    std::string authority = s.substr(pos, authority_end == std::string::npos
                                              ? std::string::npos
                                              : authority_end - pos);
    if (authority.empty()) throw DataError("URL has no host: " + url);

    size_t at = authority.rfind('@');
    std::string hostport = authority;
    if (at != std::string::npos) {
        out.userinfo = authority.substr(0, at);
        hostport = authority.substr(at + 1);
    }
    if (hostport.empty()) throw DataError("URL has no host: " + url);

    if (hostport[0] == '[') {  // IPv6 literal
        size_t close = hostport.find(']');
        if (close == std::string::npos) throw DataError("unterminated IPv6 literal: " + url);
        out.host = to_lower(hostport.substr(1, close - 1));
        if (close + 1 < hostport.size()) {
            if (hostport[close + 1] != ':')
                throw DataError("malformed authority: " + url);
            std::string port_str = hostport.substr(close + 2);
            if (!port_str.empty()) {
                for (char c : port_str)
                    if (!std::isdigit(static_cast<unsigned char>(c)))
                        throw DataError("non-numeric port: " + url);
                out.port = std::stoi(port_str);
            }
        }
    } else {
        size_t colon = hostport.rfind(':');
        if (colon != std::string::npos) {
            std::string port_str = hostport.substr(colon + 1);
            bool numeric = !port_str.empty();
            for (char c : port_str)
                if (!std::isdigit(static_cast<unsigned char>(c))) numeric = false;
            if (numeric) {
                out.host = to_lower(hostport.substr(0, colon));
                out.port = std::stoi(port_str);
            } else {
                throw DataError("non-numeric port: " + url);
            }
        } else {
            out.host = to_lower(hostport);
        }
    }
    if (out.host.empty()) throw DataError("URL has no host: " + url);

    if (authority_end != std::string::npos) {
        std::string rest = s.substr(authority_end);
        size_t frag = rest.find('#');
        if (frag != std::string::npos) {
            out.fragment = rest.substr(frag + 1);
            rest = rest.substr(0, frag);
        }
        size_t q = rest.find('?');
        if (q != std::string::npos) {
            out.query = rest.substr(q + 1);
            rest = rest.substr(0, q);
        }
        out.path = rest;
    }
    return out;
}

bool host_is_ip_address(const std::string& host) {
    if (host.empty()) return false;
    if (host.find(':') != std::string::npos) return true;  // IPv6 literal
    auto labels = split_labels(host);
    if (labels.size() != 4) return false;
    for (const auto& label : labels) {
        if (label.empty()) return false;
        long value = -1;
        if (label.size() > 2 && (label[0] == '0') && (label[1] == 'x' || label[1] == 'X')) {
            value = 0;
            for (size_t i = 2; i < label.size(); ++i) {
                if (!std::isxdigit(static_cast<unsigned char>(label[i]))) return false;
                value = value * 16 + (std::isdigit(static_cast<unsigned char>(label[i]))
                                          ? label[i] - '0'
                                          : std::tolower(static_cast<unsigned char>(label[i])) - 'a' + 10);
                if (value > 255) return false;
            }
        } else {
            value = 0;
            for (char c : label) {
                if (!std::isdigit(static_cast<unsigned char>(c))) return false;
                value = value * 10 + (c - '0');
                if (value > 255) return false;
            }
        }
        if (value < 0 || value > 255) return false;
    }
    return true;
}

std::string registered_domain(const std::string& host) {
    if (host_is_ip_address(host)) return host;
    auto labels = split_labels(host);
    if (labels.size() <= 2) return host;
    const std::string last_two = labels[labels.size() - 2] + "." + labels.back();
    size_t take = two_part_suffixes().count(last_two) ? 3 : 2;
    if (labels.size() <= take) return host;
    std::string out;
    for (size_t i = labels.size() - take; i < labels.size(); ++i) {
        if (!out.empty()) out += '.';
        out += labels[i];
    }
    return out;
}

ExtractionThresholds ExtractionThresholds::load(const std::string& json_path) {
    std::ifstream in(json_path);
    if (!in) throw ConfigError("cannot open threshold config: " + json_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("threshold config is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) throw ConfigError("threshold config must be a JSON object");
    ExtractionThresholds t;
    maybe_get(j, "url_length_short", t.url_length_short);
    maybe_get(j, "url_length_long", t.url_length_long);
    maybe_get(j, "subdomain_low", t.subdomain_low);
    maybe_get(j, "anchor_low", t.anchor_low);
    maybe_get(j, "anchor_high", t.anchor_high);
    maybe_get(j, "request_low", t.request_low);
    maybe_get(j, "request_high", t.request_high);
    maybe_get(j, "links_in_tags_low", t.links_in_tags_low);
    maybe_get(j, "links_in_tags_high", t.links_in_tags_high);
    maybe_get(j, "domain_age_min_days", t.domain_age_min_days);
    maybe_get(j, "registration_min_days", t.registration_min_days);
    maybe_get(j, "traffic_rank_good", t.traffic_rank_good);
    maybe_get(j, "page_rank_min", t.page_rank_min);
    maybe_get(j, "links_pointing_some", t.links_pointing_some);
    maybe_get(j, "redirect_low", t.redirect_low);
    maybe_get(j, "redirect_high", t.redirect_high);
    if (auto it = j.find("shortener_hosts"); it != j.end())
        t.shortener_hosts = std::set<std::string>(it->begin(), it->end());
    if (auto it = j.find("reported_hosts"); it != j.end())
        t.reported_hosts = std::set<std::string>(it->begin(), it->end());
    return t;
}

std::string ExtractionThresholds::to_json() const {
    nlohmann::ordered_json j;
    j["url_length_short"] = url_length_short;
    j["url_length_long"] = url_length_long;
    j["subdomain_low"] = subdomain_low;
    j["anchor_low"] = anchor_low;
    j["anchor_high"] = anchor_high;
    j["request_low"] = request_low;
    j["request_high"] = request_high;
    j["links_in_tags_low"] = links_in_tags_low;
    j["links_in_tags_high"] = links_in_tags_high;
    j["domain_age_min_days"] = domain_age_min_days;
    j["registration_min_days"] = registration_min_days;
    j["traffic_rank_good"] = traffic_rank_good;
    j["page_rank_min"] = page_rank_min;
    j["links_pointing_some"] = links_pointing_some;
    j["redirect_low"] = redirect_low;
    j["redirect_high"] = redirect_high;
    j["shortener_hosts"] = shortener_hosts;
    j["reported_hosts"] = reported_hosts;
    return j.dump(2) + "\n";
}

int url_length(const std::string& url, const ExtractionThresholds& t) {
    const auto n = static_cast<long>(trim(url).size());
    if (n < t.url_length_short) return 1;
    if (n <= t.url_length_long) return 0;
    return -1;
}

int shortening_service(const ParsedUrl& u, const ExtractionThresholds& t) {
    return t.shortener_hosts.count(u.host) ? -1 : 1;
}

int at_symbol(const std::string& url) {
    return url.find('@') != std::string::npos ? -1 : 1;
}

int double_slash_redirecting(const std::string& url) {
    // A "//" after the scheme's own separator signals an embedded redirect.
    size_t start = 0;
    size_t scheme_end = url.find("://");
    if (scheme_end != std::string::npos) start = scheme_end + 3;
    return url.find("//", start) != std::string::npos ? -1 : 1;
}

int prefix_suffix(const ParsedUrl& u) {
    return u.host.find('-') != std::string::npos ? -1 : 1;
}

int sub_domain_count(const ParsedUrl& u, const ExtractionThresholds& t) {
    if (host_is_ip_address(u.host)) return -1;
    std::string reg = registered_domain(u.host);
    auto host_labels = split_labels(u.host);
    auto reg_labels = split_labels(reg);
    long extra = static_cast<long>(host_labels.size()) - static_cast<long>(reg_labels.size());
    if (extra > 0 && host_labels.front() == "www") --extra;  // conventional prefix, not a subdomain
    if (extra <= t.subdomain_low) return 1;
    if (extra == t.subdomain_low + 1) return 0;
    return -1;
}

int https_token_in_domain(const ParsedUrl& u) {
    return u.host.find("https") != std::string::npos ? -1 : 1;
}

int ip_address_host(const ParsedUrl& u) {
    return host_is_ip_address(u.host) ? -1 : 1;
}

int port_check(const ParsedUrl& u) {
    if (!u.has_explicit_port()) return 1;
    if ((u.scheme == "http" && u.port == 80) || (u.scheme == "https" && u.port == 443)) return 1;
    return -1;
}

int ssl_state(const ParsedUrl& u) {
    // Certificate issuer and age are not inspected offline, so the scheme
    // alone decides: TLS present counts as trustworthy, plain HTTP does not.
    return u.scheme == "https" ? 1 : -1;
}

int redirect_count(const std::string& html, const ExtractionThresholds& t) {
    int redirects = 0;
    for (const auto& tag : scan_tags(html)) {
        if (tag.name != "meta") continue;
        auto equiv = attr_value(tag.attrs, "http-equiv");
        if (equiv && to_lower(trim(*equiv)) == "refresh") ++redirects;
    }
    if (redirects <= t.redirect_low) return 1;
    if (redirects <= t.redirect_high) return 0;
    return -1;
}

int anchor_ratio(const ParsedUrl& u, const std::string& html, const ExtractionThresholds& t) {
    int total = 0, unsafe = 0;
    for (const auto& tag : scan_tags(html)) {
        if (tag.name != "a") continue;
        ++total;
        auto href = attr_value(tag.attrs, "href");
        if (!href) {
            ++unsafe;
            continue;
        }
        std::string low = to_lower(trim(*href));
        if (low.empty() || low == "#" || low.rfind("#", 0) == 0 ||
            low.rfind("javascript:", 0) == 0 || is_external_ref(*href, u))
            ++unsafe;
    }
    if (total == 0) return 1;
    return ratio_to_ternary(static_cast<double>(unsafe) / total, t.anchor_low, t.anchor_high);
}

int request_url_ratio(const ParsedUrl& u, const std::string& html, const ExtractionThresholds& t) {
    static const std::set<std::string> resource_tags = {"img", "video", "audio", "embed", "source"};
    int total = 0, external = 0;
    for (const auto& tag : scan_tags(html)) {
        if (!resource_tags.count(tag.name)) continue;
        auto src = attr_value(tag.attrs, "src");
        if (!src) continue;
        ++total;
        if (is_external_ref(*src, u)) ++external;
    }
    if (total == 0) return 1;
    return ratio_to_ternary(static_cast<double>(external) / total, t.request_low, t.request_high);
}

int links_in_tags_ratio(const ParsedUrl& u, const std::string& html,
                        const ExtractionThresholds& t) {
    int total = 0, external = 0;
    for (const auto& tag : scan_tags(html)) {
        std::optional<std::string> ref;
        if (tag.name == "link")
            ref = attr_value(tag.attrs, "href");
        else if (tag.name == "script")
            ref = attr_value(tag.attrs, "src");
        else
            continue;
        if (!ref) continue;
        ++total;
        if (is_external_ref(*ref, u)) ++external;
    }
    if (total == 0) return 1;
    return ratio_to_ternary(static_cast<double>(external) / total, t.links_in_tags_low,
                            t.links_in_tags_high);
}

int sfh_check(const ParsedUrl& u, const std::string& html) {
    int worst = 1;
    for (const auto& tag : scan_tags(html)) {
        if (tag.name != "form") continue;
        auto action = attr_value(tag.attrs, "action");
        std::string low = action ? to_lower(trim(*action)) : std::string{};
        if (low.empty() || low == "about:blank") {
            worst = -1;
        } else if (is_external_ref(*action, u)) {
            worst = std::min(worst, 0);
        }
    }
    return worst;
}

int mailto_submit(const std::string& html) {
    std::string low = to_lower(html);
    for (const auto& tag : scan_tags(html)) {
        if (tag.name != "form") continue;
        auto action = attr_value(tag.attrs, "action");
        if (action && to_lower(trim(*action)).rfind("mailto:", 0) == 0) return -1;
    }
    return contains_ci(low, "mail(") ? -1 : 1;
}

int iframe_present(const std::string& html) {
    for (const auto& tag : scan_tags(html))
        if (tag.name == "iframe" || tag.name == "frame") return -1;
    return 1;
}

int right_click_disabled(const std::string& html) {
    std::string low = to_lower(html);
    low.erase(std::remove_if(low.begin(), low.end(),
                             [](unsigned char c) { return std::isspace(c); }),
              low.end());
    if (contains_ci(low, "event.button==2")) return -1;
    if (contains_ci(low, "oncontextmenu=\"returnfalse") ||
        contains_ci(low, "oncontextmenu='returnfalse"))
        return -1;
    return 1;
}

int popup_window(const std::string& html) {
    std::string low = to_lower(html);
    return (contains_ci(low, "window.open(") || contains_ci(low, "prompt(")) ? -1 : 1;
}

int on_mouseover_rewrite(const std::string& html) {
    std::string low = to_lower(html);
    return (contains_ci(low, "onmouseover") && contains_ci(low, "window.status")) ? -1 : 1;
}

int favicon_external(const ParsedUrl& u, const std::string& html) {
    for (const auto& tag : scan_tags(html)) {
        if (tag.name != "link") continue;
        auto rel = attr_value(tag.attrs, "rel");
        if (!rel || to_lower(*rel).find("icon") == std::string::npos) continue;
        auto href = attr_value(tag.attrs, "href");
        if (href && is_external_ref(*href, u)) return -1;
    }
    return 1;
}

int abnormal_url(const ParsedUrl& u, const LookupClient& lookups) {
    Lookup<std::string> whois = lookups.whois_domain(u.host);
    if (whois.status == LookupStatus::Unavailable) return 0;
    if (whois.status == LookupStatus::Absent) return -1;  // no WHOIS identity at all
    std::string claimed = to_lower(trim(whois.value));
    if (claimed.empty()) return -1;
    return u.host.find(claimed) != std::string::npos ? 1 : -1;
}

int statistical_report(const ParsedUrl& u, const ExtractionThresholds& t) {
    if (t.reported_hosts.count(u.host)) return -1;
    if (t.reported_hosts.count(registered_domain(u.host))) return -1;
    return 1;
}

namespace {

// Lookup features share one shape: Unavailable -> (0, default provenance),
// otherwise map the answer through `f`.
template <typename T, typename F>
std::pair<int, Provenance> from_lookup(const Lookup<T>& lu, F&& f) {
    if (lu.status == LookupStatus::Unavailable) return {0, Provenance::UnavailableDefault};
    return {f(lu), Provenance::Lookup};
}

}  // namespace

ExtractionResult extract(const std::string& url, const std::optional<std::string>& html,
                         const LookupClient& lookups, const ExtractionThresholds& t) {
    ParsedUrl u = parse_url(url);
    const FeatureSchema& schema = canonical_schema();

    ExtractionResult out;
    out.vector.values.assign(schema.arity(), 0);
    out.provenance.assign(schema.arity(), Provenance::UnavailableDefault);

    auto set = [&](const char* name, int value, Provenance prov) {
        size_t idx = schema.feature_index(name);
        out.vector.values[idx] = value;
        out.provenance[idx] = prov;
    };
    auto set_html = [&](const char* name, int value) {
        // HTML-dependent checks only run when page text was supplied.
        if (html)
            set(name, value, Provenance::Computed);
        else
            set(name, 0, Provenance::UnavailableDefault);
    };
    static const std::string kNoPage;
    const std::string& page = html ? *html : kNoPage;

    set("having_IP_Address", ip_address_host(u), Provenance::Computed);
    set("URL_Length", url_length(url, t), Provenance::Computed);
    set("Shortining_Service", shortening_service(u, t), Provenance::Computed);
    set("having_At_Symbol", at_symbol(url), Provenance::Computed);
    set("double_slash_redirecting", double_slash_redirecting(url), Provenance::Computed);
    set("Prefix_Suffix", prefix_suffix(u), Provenance::Computed);
    set("having_Sub_Domain", sub_domain_count(u, t), Provenance::Computed);
    set("SSLfinal_State", ssl_state(u), Provenance::Computed);
    set("port", port_check(u), Provenance::Computed);
    set("HTTPS_token", https_token_in_domain(u), Provenance::Computed);
    set("Statistical_report", statistical_report(u, t), Provenance::Computed);

    set_html("Favicon", favicon_external(u, page));
    set_html("Request_URL", request_url_ratio(u, page, t));
    set_html("URL_of_Anchor", anchor_ratio(u, page, t));
    set_html("Links_in_tags", links_in_tags_ratio(u, page, t));
    set_html("SFH", sfh_check(u, page));
    set_html("Submitting_to_email", mailto_submit(page));
    set_html("Redirect", redirect_count(page, t));
    set_html("on_mouseover", on_mouseover_rewrite(page));
    set_html("RightClick", right_click_disabled(page));
    set_html("popUpWidnow", popup_window(page));
    set_html("Iframe", iframe_present(page));

    {
        auto [v, p] = from_lookup(lookups.domain_age_days(u.host), [&](const Lookup<long>& lu) {
            if (lu.status == LookupStatus::Absent) return -1;
            return lu.value >= t.domain_age_min_days ? 1 : -1;
        });
        set("age_of_domain", v, p);
    }
    {
        auto [v, p] = from_lookup(
            lookups.registration_length_days(u.host), [&](const Lookup<long>& lu) {
                if (lu.status == LookupStatus::Absent) return -1;
                return lu.value > t.registration_min_days ? 1 : -1;
            });
        set("Domain_registeration_length", v, p);
    }
    {
        auto [v, p] = from_lookup(lookups.dns_record(u.host), [](const Lookup<bool>& lu) {
            if (lu.status == LookupStatus::Absent) return -1;
            return lu.value ? 1 : -1;
        });
        set("DNSRecord", v, p);
    }
    {
        auto [v, p] = from_lookup(lookups.traffic_rank(u.host), [&](const Lookup<long>& lu) {
            if (lu.status == LookupStatus::Absent) return -1;  // unranked site
            return lu.value < t.traffic_rank_good ? 1 : 0;
        });
        set("web_traffic", v, p);
    }
    {
        auto [v, p] = from_lookup(lookups.page_rank(u.host), [&](const Lookup<double>& lu) {
            if (lu.status == LookupStatus::Absent) return -1;
            return lu.value >= t.page_rank_min ? 1 : -1;
        });
        set("Page_Rank", v, p);
    }
    {
        auto [v, p] = from_lookup(lookups.search_indexed(u.host), [](const Lookup<bool>& lu) {
            if (lu.status == LookupStatus::Absent) return -1;
            return lu.value ? 1 : -1;
        });
        set("Google_Index", v, p);
    }
    {
        auto [v, p] = from_lookup(lookups.links_pointing(u.host), [&](const Lookup<long>& lu) {
            long n = lu.status == LookupStatus::Absent ? 0 : lu.value;
            if (n <= 0) return -1;
            if (n <= t.links_pointing_some) return 0;
            return 1;
        });
        set("Links_pointing_to_page", v, p);
    }
    {
        int v = abnormal_url(u, lookups);
        set("Abnormal_URL", v,
            v == 0 ? Provenance::UnavailableDefault : Provenance::Lookup);
    }

    out.vector.label.reset();
    return out;
}

}  // namespace phishml
