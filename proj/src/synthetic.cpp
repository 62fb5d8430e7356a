#include "phishml/synthetic.hpp"

#include <array>
#include <random>

#include "phishml/common.hpp"
#include "phishml/extractor.hpp"

namespace phishml {

namespace {

// Class-conditional probabilities over (-1, 0, 1) for one feature.
struct FeatureProfile {
    std::array<double, 3> phishing;
    std::array<double, 3> legitimate;
};

// One profile per canonical feature, in schema order. Shapes follow the
// well-known corpus: SSL state and anchor ratios separate strongly, lexical
// oddities (at-symbol, shorteners) are rare but phishing-leaning, and a few
// page-behaviour flags carry almost no signal.
constexpr std::array<FeatureProfile, 30> kProfiles = {{
    /* having_IP_Address          */ {{0.30, 0.00, 0.70}, {0.03, 0.00, 0.97}},
    /* URL_Length                 */ {{0.60, 0.25, 0.15}, {0.18, 0.22, 0.60}},
    /* Shortining_Service         */ {{0.18, 0.00, 0.82}, {0.04, 0.00, 0.96}},
    /* having_At_Symbol           */ {{0.16, 0.00, 0.84}, {0.03, 0.00, 0.97}},
    /* double_slash_redirecting   */ {{0.22, 0.00, 0.78}, {0.07, 0.00, 0.93}},
    /* Prefix_Suffix              */ {{0.68, 0.00, 0.32}, {0.22, 0.00, 0.78}},
    /* having_Sub_Domain          */ {{0.45, 0.32, 0.23}, {0.12, 0.26, 0.62}},
    /* SSLfinal_State             */ {{0.70, 0.14, 0.16}, {0.10, 0.12, 0.78}},
    /* Domain_registeration_length*/ {{0.62, 0.05, 0.33}, {0.28, 0.05, 0.67}},
    /* Favicon                    */ {{0.30, 0.00, 0.70}, {0.26, 0.00, 0.74}},
    /* port                       */ {{0.12, 0.00, 0.88}, {0.10, 0.00, 0.90}},
    /* HTTPS_token                */ {{0.20, 0.00, 0.80}, {0.06, 0.00, 0.94}},
    /* Request_URL                */ {{0.48, 0.12, 0.40}, {0.20, 0.10, 0.70}},
    /* URL_of_Anchor              */ {{0.62, 0.26, 0.12}, {0.10, 0.26, 0.64}},
    /* Links_in_tags              */ {{0.42, 0.36, 0.22}, {0.12, 0.32, 0.56}},
    /* SFH                        */ {{0.55, 0.22, 0.23}, {0.18, 0.18, 0.64}},
    /* Submitting_to_email        */ {{0.24, 0.00, 0.76}, {0.06, 0.00, 0.94}},
    /* Abnormal_URL               */ {{0.32, 0.06, 0.62}, {0.10, 0.06, 0.84}},
    /* Redirect                   */ {{0.10, 0.32, 0.58}, {0.04, 0.18, 0.78}},
    /* on_mouseover               */ {{0.18, 0.00, 0.82}, {0.08, 0.00, 0.92}},
    /* RightClick                 */ {{0.10, 0.00, 0.90}, {0.07, 0.00, 0.93}},
    /* popUpWidnow                */ {{0.16, 0.00, 0.84}, {0.10, 0.00, 0.90}},
    /* Iframe                     */ {{0.14, 0.00, 0.86}, {0.07, 0.00, 0.93}},
    /* age_of_domain              */ {{0.60, 0.08, 0.32}, {0.24, 0.08, 0.68}},
    /* DNSRecord                  */ {{0.28, 0.02, 0.70}, {0.06, 0.02, 0.92}},
    /* web_traffic                */ {{0.46, 0.30, 0.24}, {0.10, 0.24, 0.66}},
    /* Page_Rank                  */ {{0.66, 0.08, 0.26}, {0.26, 0.10, 0.64}},
    /* Google_Index               */ {{0.26, 0.00, 0.74}, {0.05, 0.00, 0.95}},
    /* Links_pointing_to_page     */ {{0.32, 0.46, 0.22}, {0.12, 0.40, 0.48}},
    /* Statistical_report         */ {{0.24, 0.00, 0.76}, {0.05, 0.00, 0.95}},
}};

int sample_value(const std::array<double, 3>& probs, std::mt19937& rng) {
    double u = unit_uniform(rng);
    if (u < probs[0]) return -1;
    if (u < probs[0] + probs[1]) return 0;
    return 1;
}

}  // namespace

void SyntheticSpec::validate() const {
    if (n_rows == 0) throw ConfigError("synthetic corpus needs at least one row");
    if (phishing_fraction <= 0.0 || phishing_fraction >= 1.0)
        throw ConfigError("phishing_fraction must lie strictly between 0 and 1");
    if (label_noise < 0.0 || label_noise >= 0.5)
        throw ConfigError("label_noise must lie in [0, 0.5)");
}

Dataset synthetic_corpus(const SyntheticSpec& spec) {
    spec.validate();

    Dataset out;
    out.schema = canonical_schema();

    std::mt19937 rng(spec.seed);
    out.rows.reserve(spec.n_rows);
    for (std::size_t i = 0; i < spec.n_rows; ++i) {
        const bool is_phishing = unit_uniform(rng) < spec.phishing_fraction;
        FeatureVector row;
        row.values.reserve(kProfiles.size());
        for (const FeatureProfile& profile : kProfiles)
            row.values.push_back(
                sample_value(is_phishing ? profile.phishing : profile.legitimate, rng));
        bool flipped = unit_uniform(rng) < spec.label_noise;
        bool labeled_phishing = is_phishing != flipped;
        row.label = labeled_phishing ? Label::Phishing : Label::Legitimate;
        out.rows.push_back(std::move(row));
    }
    out.validate();
    return out;
}

}  // namespace phishml
