// Writes the bundled benchmark corpus (30 ternary features + Result label)
// as CSV, for experiments that want a dataset file on disk.
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "phishml/dataset.hpp"
#include "phishml/synthetic.hpp"

int main(int argc, char** argv) {
    CLI::App app{"phishml-gencorpus: generate the bundled benchmark corpus as CSV"};
    std::string out = "corpus.csv";
    phishml::SyntheticSpec spec;
    app.add_option("-o,--out", out, "Output CSV path")->capture_default_str();
    app.add_option("-n,--rows", spec.n_rows, "Number of rows")->capture_default_str();
    app.add_option("--seed", spec.seed, "Generator seed")->capture_default_str();
    app.add_option("--phishing-fraction", spec.phishing_fraction, "Class prior")
        ->capture_default_str();
    app.add_option("--label-noise", spec.label_noise, "Label flip probability")
        ->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    try {
        phishml::Dataset corpus = phishml::synthetic_corpus(spec);
        phishml::save_csv(corpus, out);
        std::printf("wrote %zu rows to %s\n", corpus.size(), out.c_str());
    } catch (const phishml::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
