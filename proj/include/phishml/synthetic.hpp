#ifndef PHISHML_SYNTHETIC_HPP
#define PHISHML_SYNTHETIC_HPP

#include <cstdint>

#include "phishml/dataset.hpp"

namespace phishml {

/// Parameters of the bundled benchmark corpus generator. The generator
/// samples the 30 canonical indicator features from class-conditional
/// distributions shaped like the published phishing corpus (a few strong
/// markers, many medium ones, some near-noise), then flips a small fraction
/// of labels so no classifier can be perfect. Identical specs always produce
/// identical datasets.
struct SyntheticSpec {
    std::size_t n_rows = 11055;
    std::uint32_t seed = 7;
    double phishing_fraction = 0.557;  // class prior, matching the public corpus
    double label_noise = 0.02;         // probability a recorded label is flipped

    void validate() const;
};

Dataset synthetic_corpus(const SyntheticSpec& spec = {});

}  // namespace phishml

#endif
